"""First and second Tits constructions of cubic norm structures.

First construction J(D, lambda): carrier D + D + D over k with

    N((x,y,z)) = N_D(x) + lam N_D(y) + lam^-1 N_D(z) - T_D(xyz)
    (x,y,z)#   = (x# - yz, lam^-1 z# - xy, lam y# - zx),  1 = (1,0,0)

Second construction J(B, sigma, u, mu): carrier (B,sigma)+ + B with

    N((b,x)) = N_B(b) + T_K(mu N_B(x)) - T_B(b x u sigma(x))
    (b,x)#   = (b# - x u sigma(x), bar(mu) sigma(x)# u^-1 - b x),  1 = (1,0)

for an admissible pair: sigma(u) = u invertible and N_B(u) = mu bar(mu).
Coordinates of the hermitian summand are taken in the deterministic
basis from UnitaryInvolution.hermitian_basis(), so carriers, expansions
and golden files are reproducible.
"""

from . import linalg
from .associative import (CommutativeCubic, CyclicAlgebra, GroundCenter,
                          MatrixAlgebra, QuadraticCenter, UnitaryInvolution)
from .cubic import CubicNormStructure
from .errors import (ConfigError, NotAdmissible, NotInvertible,
                     VerificationFailure)
from .fields import (Composite, CyclicCubic, FieldTower, PrimeFieldDesc,
                     QuadraticEtale, Rationals, tower_build)
from .scalars import PrimeField, RationalField


class ZeroLambda(ConfigError):
    pass


class IncompatibleTower(ConfigError):
    pass


def first_tits(d_alg, lam, label=None):
    """J(D, lambda) for a degree-3 algebra D over the ground field."""
    if not isinstance(d_alg.center, GroundCenter):
        raise ConfigError("first construction needs a k-central algebra")
    g = d_alg.center.ground
    if not lam:
        raise ZeroLambda("lambda must be nonzero")
    lam_inv = g.inv(lam)
    d = d_alg.k_dim
    dim = 3 * d

    def dec(coords):
        return (d_alg.from_k_coords(coords[0:d]),
                d_alg.from_k_coords(coords[d:2 * d]),
                d_alg.from_k_coords(coords[2 * d:3 * d]))

    def eval_norm(coords):
        x, y, z = dec(coords)
        xyz = d_alg.mul(d_alg.mul(x, y), z)
        return (d_alg.norm(x) + lam * d_alg.norm(y)
                + lam_inv * d_alg.norm(z) - d_alg.trace(xyz))

    def eval_sharp(coords):
        x, y, z = dec(coords)
        c1 = d_alg.sub(d_alg.sharp(x), d_alg.mul(y, z))
        c2 = d_alg.sub(d_alg.smul(lam_inv, d_alg.sharp(z)), d_alg.mul(x, y))
        c3 = d_alg.sub(d_alg.smul(lam, d_alg.sharp(y)), d_alg.mul(z, x))
        return (d_alg.to_k_coords(c1) + d_alg.to_k_coords(c2)
                + d_alg.to_k_coords(c3))

    unit = d_alg.to_k_coords(d_alg.unit()) + [g.zero] * (2 * d)
    j = CubicNormStructure(g, dim, eval_norm, eval_sharp, unit,
                           label=label or "J(D,%s)" % (lam,))
    j.meta = {"type": "first_tits", "algebra": d_alg, "lam": lam}
    return j


def embed_first_summand(j, d_elem):
    """D -> J(D, lambda), first summand."""
    d_alg = j.meta["algebra"]
    g = j.ground
    return tuple(d_alg.to_k_coords(d_elem)
                 + [g.zero] * (j.dim - d_alg.k_dim))


def second_tits(b_alg, sigma, u, mu, label=None):
    """J(B, sigma, u, mu) for B of degree 3 over a quadratic etale K."""
    center = b_alg.center
    if not isinstance(center, QuadraticCenter):
        raise ConfigError("second construction needs a K-central algebra")
    if getattr(center.K, "split", False) or center.tower.d is None:
        raise ConfigError("split K = k x k second constructions are not "
                          "supported")
    if sigma.algebra is not b_alg:
        raise ConfigError("involution does not act on the given algebra")
    g = center.ground
    if not sigma.is_hermitian(u):
        raise NotAdmissible("u is not sigma-hermitian")
    u_inv = b_alg.inv(u)                      # raises NotInvertible
    try:
        mu_inv = mu.inv()
    except NotInvertible:
        raise NotAdmissible("mu must be invertible in K")
    del mu_inv
    mu_bar = center.bar(mu)
    if b_alg.norm(u) != mu * mu_bar:
        raise NotAdmissible("N_B(u) != mu * bar(mu): pair is not admissible")

    her = sigma.hermitian_basis()
    hd = len(her)
    bd = b_alg.k_dim
    h_cols = [b_alg.to_k_coords(h) for h in her]
    h_mat = [[h_cols[j][i] for j in range(hd)] for i in range(bd)]
    p_mat = linalg.left_inverse(h_mat, g.one, g.zero)
    dim = hd + bd

    def dec(coords):
        b = b_alg.from_k_coords(linalg.matvec(h_mat, list(coords[:hd])))
        x = b_alg.from_k_coords(list(coords[hd:]))
        return b, x

    def eval_norm(coords):
        b, x = dec(coords)
        nb = center.descend(b_alg.norm(b))
        tmu = _trace_k(center, mu * b_alg.norm(x))
        cross = center.descend(
            b_alg.trace(b_alg.mul(b_alg.mul(b_alg.mul(b, x), u),
                                  sigma.apply(x))))
        return nb + tmu - cross

    def eval_sharp(coords):
        b, x = dec(coords)
        sx = sigma.apply(x)
        first = b_alg.sub(b_alg.sharp(b),
                          b_alg.mul(b_alg.mul(x, u), sx))
        if not sigma.is_hermitian(first):
            raise VerificationFailure(
                "first adjoint component left the hermitian space "
                "(construction bug)")
        first_coords = linalg.matvec(p_mat, b_alg.to_k_coords(first))
        second = b_alg.sub(
            b_alg.mul(b_alg.smul(mu_bar, b_alg.sharp(sx)), u_inv),
            b_alg.mul(b, x))
        return list(first_coords) + b_alg.to_k_coords(second)

    unit = list(linalg.matvec(p_mat, b_alg.to_k_coords(b_alg.unit()))) \
        + [g.zero] * bd
    j = CubicNormStructure(g, dim, eval_norm, eval_sharp, unit,
                           label=label or "J(B,sigma,u,mu)")
    j.meta = {"type": "second_tits", "algebra": b_alg, "sigma": sigma,
              "u": u, "mu": mu, "her_basis": her, "h_mat": h_mat,
              "p_mat": p_mat}
    return j


def _trace_k(center, y):
    """T_K(y) = y + bar(y), descended to k."""
    return center.descend(y + center.bar(y))


def embed_hermitian_summand(j, b_elem):
    """(B,sigma)+ -> J(B,sigma,u,mu), first summand."""
    b_alg = j.meta["algebra"]
    g = j.ground
    coords = linalg.matvec(j.meta["p_mat"], b_alg.to_k_coords(b_elem))
    return tuple(list(coords) + [g.zero] * b_alg.k_dim)


# ---------------------------------------------------------------------------
# base change

class ExtendedGround:
    """A tower extension reused as a ground field (scalars are Elems)."""

    is_finite = False

    def __init__(self, ext):
        self.ext = ext
        self.base = ext.ground
        self.char = ext.ground.char
        self.is_finite = ext.ground.is_finite
        self.order = (ext.ground.order ** ext.dim
                      if ext.ground.is_finite else None)
        self.zero = ext.zero
        self.one = ext.one

    def from_int(self, n):
        return self.ext.from_scalar(self.base.from_int(n))

    def from_fraction(self, q):
        return self.ext.from_scalar(self.base.from_fraction(q))

    def parse(self, s):
        if isinstance(s, list):
            return self.ext.elem([self.base.parse(c) for c in s])
        return self.ext.from_scalar(self.base.parse(s))

    def to_str(self, x):
        return "[" + ",".join(self.base.to_str(c) for c in x.coords) + "]"

    def inv(self, x):
        return x.inv()

    def random(self, stream):
        return self.ext.random(stream)

    def random_nonzero(self, stream):
        while True:
            x = self.ext.random(stream)
            if x:
                return x

    def iter_all(self):
        return self.ext.iter_all()

    def __repr__(self):
        return "ExtendedGround(%s)" % self.ext.name


def _scalar_embedding(old_ground, new_desc):
    """Return (new_ground, embed_fn) or raise IncompatibleTower."""
    from fractions import Fraction
    if isinstance(new_desc, Rationals):
        if isinstance(old_ground, RationalField):
            return RationalField(), lambda c: c
        raise IncompatibleTower("cannot map %r into Q" % (old_ground,))
    if isinstance(new_desc, PrimeFieldDesc):
        new_g = PrimeField(new_desc.p)
        if isinstance(old_ground, RationalField):
            return new_g, lambda c: new_g.from_fraction(c)
        if isinstance(old_ground, PrimeField) and old_ground.p == new_desc.p:
            return new_g, lambda c: c
        raise IncompatibleTower("cannot map %r into F_%d"
                                % (old_ground, new_desc.p))
    if isinstance(new_desc, (QuadraticEtale, CyclicCubic)):
        tower = tower_build(new_desc)
        if tower.ground != old_ground:
            raise IncompatibleTower("extension must sit over the current "
                                    "ground field")
        ext = tower.K if isinstance(new_desc, QuadraticEtale) else tower.L
        new_g = ExtendedGround(ext)
        return new_g, lambda c: ext.from_scalar(c)
    raise IncompatibleTower("unsupported base-change target %r"
                            % (new_desc,))


def base_change(j, new_desc):
    """Extend or reduce the scalars of a first construction J(D, lambda).

    Supports: identity, reduction Q -> F_p (denominators must stay
    invertible), and genuine ground extension by a quadratic or cyclic
    cubic field for D = M3(k).  Tower-based D (cyclic algebras, LK) can
    only be base-changed trivially or to F_p along with their towers.
    """
    meta = getattr(j, "meta", None)
    if not meta or meta["type"] != "first_tits":
        raise IncompatibleTower("base change is implemented for first "
                                "constructions")
    d_alg = meta["algebra"]
    old_g = j.ground
    new_g, embed = _scalar_embedding(old_g, new_desc)
    if new_g == old_g:
        return j

    if isinstance(d_alg, MatrixAlgebra) and isinstance(d_alg.center,
                                                       GroundCenter):
        new_d = MatrixAlgebra(GroundCenter(new_g))
    elif isinstance(d_alg, CyclicAlgebra) and isinstance(new_g, PrimeField):
        old_desc = d_alg.tower.desc
        new_tower = tower_build(CyclicCubic(
            base=PrimeFieldDesc(new_g.p),
            f=tuple(_as_literal(c) for c in old_desc.f),
            rho=tuple(_as_literal(c) for c in old_desc.rho)))
        new_d = CyclicAlgebra(new_tower, embed(d_alg.a))
    elif isinstance(d_alg, CommutativeCubic) and isinstance(new_g,
                                                            PrimeField):
        raise IncompatibleTower("base change of cubic etale first "
                                "constructions is not supported")
    else:
        raise IncompatibleTower("unsupported base change for %r" % (d_alg,))
    return first_tits(new_d, embed(meta["lam"]),
                      label=j.label + "@%r" % (new_g,))


def _as_literal(c):
    return c


def embed_point(j_old, j_new, coords):
    """Carry a point of J along a base change (coordinate-wise embedding)."""
    old_g = j_old.ground
    new_g, embed = _scalar_embedding(
        old_g, _ground_desc(j_new.ground))
    return tuple(embed(c) for c in coords)


def _ground_desc(g):
    if isinstance(g, RationalField):
        return Rationals()
    if isinstance(g, PrimeField):
        return PrimeFieldDesc(g.p)
    if isinstance(g, ExtendedGround):
        raise IncompatibleTower("re-deriving an extension descriptor from "
                                "a ground object is not supported; pass "
                                "coordinates explicitly")
    raise IncompatibleTower("unknown ground %r" % (g,))
