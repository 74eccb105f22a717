"""Ground-field scalars: exact rationals and prime fields.

Scalar values must support +, -, *, unary -, /, ==, and be falsy exactly
when zero; everything above this layer (extension towers, polynomials,
matrices) is written against that contract only.  Rationals use
fractions.Fraction, prime fields use a dynamically created int subclass
that reduces mod p on every operation.
"""

from fractions import Fraction

from .errors import ConfigError, NonPrimeModulus, NotInvertible
from .rng import Stream


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_fp_classes = {}


def _make_fp_class(p: int):
    def _new(cls, v=0):
        return int.__new__(cls, int(v) % p)

    def _coerce(o):
        if isinstance(o, int):
            return int(o)
        return None

    def _add(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        return cls((int(self) + v) % p)

    def _sub(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        return cls((int(self) - v) % p)

    def _rsub(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        return cls((v - int(self)) % p)

    def _mul(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        return cls((int(self) * v) % p)

    def _neg(self):
        return cls(-int(self) % p)

    def _truediv(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        if v % p == 0:
            raise NotInvertible("division by zero in F_%d" % p)
        return cls(int(self) * pow(v, p - 2, p) % p)

    def _rtruediv(self, o):
        v = _coerce(o)
        if v is None:
            return NotImplemented
        if int(self) == 0:
            raise NotInvertible("division by zero in F_%d" % p)
        return cls(v * pow(int(self), p - 2, p) % p)

    def _pow(self, e):
        return cls(pow(int(self), e, p))

    cls = type("Fp%d" % p, (int,), {
        "__new__": _new,
        "__add__": _add, "__radd__": _add,
        "__sub__": _sub, "__rsub__": _rsub,
        "__mul__": _mul, "__rmul__": _mul,
        "__neg__": _neg,
        "__truediv__": _truediv, "__rtruediv__": _rtruediv,
        "__pow__": _pow,
        "modulus": p,
    })
    return cls


class RationalField:
    """The field Q with Fraction scalars."""

    char = 0
    is_finite = False
    order = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def parse(self, s):
        if isinstance(s, bool):
            raise ConfigError("boolean is not a scalar")
        if isinstance(s, (int, Fraction)):
            return Fraction(s)
        if isinstance(s, str):
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigError("bad rational %r: %s" % (s, e))
        raise ConfigError("bad rational literal %r" % (s,))

    def to_str(self, x):
        return str(x)

    def inv(self, x):
        if x == 0:
            raise NotInvertible("division by zero in Q")
        return 1 / Fraction(x)

    def random(self, stream: Stream):
        # small integers keep downstream Fraction growth in check
        return Fraction(stream.next_below(21) - 10)

    def random_nonzero(self, stream: Stream):
        while True:
            v = self.random(stream)
            if v:
                return v

    def iter_all(self):
        raise ConfigError("cannot enumerate an infinite field")

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    """F_p with int-subclass scalars reducing mod p."""

    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeModulus("modulus %r is not prime" % (p,))
        self.p = p
        self.char = p
        self.order = p
        if p not in _fp_classes:
            _fp_classes[p] = _make_fp_class(p)
        self.elem = _fp_classes[p]
        self.zero = self.elem(0)
        self.one = self.elem(1)

    def from_int(self, n):
        return self.elem(n)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise NotInvertible(
                "denominator of %s vanishes mod %d" % (q, self.p))
        return self.elem(q.numerator * pow(q.denominator, self.p - 2, self.p))

    def parse(self, s):
        if isinstance(s, bool):
            raise ConfigError("boolean is not a scalar")
        if isinstance(s, int):
            return self.elem(s)
        if isinstance(s, (str, Fraction)):
            try:
                return self.from_fraction(Fraction(s))
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigError("bad scalar %r: %s" % (s, e))
        raise ConfigError("bad scalar literal %r" % (s,))

    def to_str(self, x):
        return str(int(x))

    def inv(self, x):
        if int(x) % self.p == 0:
            raise NotInvertible("division by zero in F_%d" % self.p)
        return self.elem(pow(int(x), self.p - 2, self.p))

    def random(self, stream: Stream):
        return self.elem(stream.next_below(self.p))

    def random_nonzero(self, stream: Stream):
        return self.elem(1 + stream.next_below(self.p - 1))

    def iter_all(self):
        for v in range(self.p):
            yield self.elem(v)

    def __repr__(self):
        return "F_%d" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))
