"""Deterministic witness searches: norm-zero points, nilpotents, and
division falsification.

Candidate i of a random search is a pure function of (seed, i), so the
index space can be partitioned into residue-class shards scanned by a
worker pool; the earliest-index witness is returned no matter how many
workers ran, which keeps reports byte-identical across --jobs settings.
Every witness is re-verified with a fresh evaluation before it is
returned.
"""

import threading
from concurrent.futures import ThreadPoolExecutor

from .associative import MatrixAlgebra
from .cubic import CubicNormStructure
from .errors import VerificationFailure
from .rng import Stream


class SearchResult:
    """status is "witness" or "exhausted"; witness holds coordinates."""

    def __init__(self, status, witness=None, index=None, detail=None):
        self.status = status
        self.witness = witness
        self.index = index
        self.detail = detail

    @property
    def found(self):
        return self.status == "witness"

    def __repr__(self):
        return "SearchResult(%s, index=%r)" % (self.status, self.index)


def point_at(j, seed, index):
    """Candidate number `index` of the random search stream."""
    s = Stream(seed, offset=index * (j.dim + 2))
    return tuple(j.ground.random(s) for _ in range(j.dim))


def _exhaustive_point(j, index):
    """Candidate number `index` of the exhaustive scan (base-q digits)."""
    q = j.ground.order
    out = []
    for _ in range(j.dim):
        out.append(j.ground.from_int(index % q))
        index //= q
    return tuple(out)


class _Best:
    """Shared minimal-index witness; doubles as the cancellation signal.

    A shard stops once its next candidate index can no longer beat the
    best hit so far, which preserves earliest-index semantics (and hence
    byte-identical reports) for any worker count.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.index = None
        self.witness = None

    def offer(self, i, x):
        with self._lock:
            if self.index is None or i < self.index:
                self.index = i
                self.witness = x


def _scan(indices, candidate, predicate, best):
    for i in indices:
        cut = best.index
        if cut is not None and i >= cut:
            break
        x = candidate(i)
        if predicate(x):
            best.offer(i, x)
            break


def _sharded_search(total, candidate, predicate, jobs):
    """Earliest-index i in range(total) with predicate(candidate(i))."""
    jobs = max(1, jobs)
    best = _Best()
    if jobs == 1:
        _scan(range(total), candidate, predicate, best)
    else:
        shards = [range(s, total, jobs) for s in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(
                lambda shard: _scan(shard, candidate, predicate, best),
                shards))
    if best.index is None:
        return None
    return best.index, best.witness


def find_norm_zero(j, budget=10000, mode="random", seed=0, jobs=1):
    """Nonzero x with N(x) = 0, or exhaustion."""
    j.expand_symbolic()

    def predicate(x):
        return any(x) and not j.norm(x)

    if mode == "exhaustive":
        if not j.ground.is_finite:
            raise VerificationFailure(
                "exhaustive search needs a finite ground field")
        total = j.ground.order ** j.dim
        hit = _sharded_search(total, lambda i: _exhaustive_point(j, i),
                              predicate, jobs)
    else:
        hit = _sharded_search(budget, lambda i: point_at(j, seed, i),
                              predicate, jobs)
    if hit is None:
        return SearchResult("exhausted")
    i, x = hit
    if j.norm(x) or not any(x):
        raise VerificationFailure("norm-zero witness failed re-verification")
    return SearchResult("witness", witness=x, index=i)


def _structured_nilpotents(j):
    """Known nilpotent classes, cheap to try before random draws."""
    meta = getattr(j, "meta", None)
    out = []
    if meta and meta["type"] == "first_tits" and \
            isinstance(meta["algebra"], MatrixAlgebra):
        d_alg = meta["algebra"]
        c = d_alg.center
        e12 = tuple(c.one if i == 1 else c.zero for i in range(9))
        coords = d_alg.to_k_coords(e12)
        g = j.ground
        out.append(tuple(coords + [g.zero] * (j.dim - len(coords))))
    return out


def find_nilpotent(j, budget=100000, seed=0, jobs=1):
    """Nonzero x with T(x) = S(x) = N(x) = 0, re-verified via U_x(x) = 0."""
    j.expand_symbolic()

    def predicate(x):
        return any(x) and j.is_nilpotent(x)

    for x in _structured_nilpotents(j):
        if predicate(x):
            return SearchResult("witness", witness=x, index=-1,
                                detail="structured candidate")
    hit = _sharded_search(budget, lambda i: point_at(j, seed, i),
                          predicate, jobs)
    if hit is None:
        return SearchResult("exhausted")
    i, x = hit
    if any(j.u_op(x, x)) or not any(x):
        raise VerificationFailure("nilpotent witness failed re-verification")
    return SearchResult("witness", witness=x, index=i)


def division_falsify(j, budget=10000, mode="random", seed=0, jobs=1):
    """Evidence that j is not a division structure.

    Two witness kinds: a preimage of the construction scalar under the
    coefficient-algebra norm (lambda = N_D(w), respectively mu = N_B(w),
    makes the construction split), or a nonzero norm-zero element of j
    itself.  Preimages found for first constructions are converted into
    explicit norm-zero elements (-w, 1, 0).
    """
    meta = getattr(j, "meta", None)
    pre_budget = budget // 2
    if meta and meta["type"] == "first_tits":
        d_alg = meta["algebra"]
        lam = meta["lam"]
        hit = _preimage_search(
            d_alg, lam, lambda x: d_alg.norm(x), pre_budget, seed, jobs)
        if hit is not None:
            i, w = hit
            jw = _first_split_witness(j, d_alg, w)
            if j.norm(jw):
                raise VerificationFailure(
                    "derived norm-zero element failed re-verification")
            return SearchResult(
                "witness", witness=jw, index=i,
                detail="norm preimage of lambda in D; converted to the "
                       "norm-zero element (-w, 1, 0)")
    elif meta and meta["type"] == "second_tits":
        b_alg = meta["algebra"]
        mu = meta["mu"]
        hit = _preimage_search(
            b_alg, mu, lambda x: b_alg.norm(x), pre_budget, seed, jobs)
        if hit is not None:
            i, w = hit
            return SearchResult(
                "witness", witness=tuple(b_alg.to_k_coords(w)), index=i,
                detail="norm preimage of mu in B (coordinates over k)")
    res = find_norm_zero(j, budget=budget, mode=mode, seed=seed, jobs=jobs)
    if res.found and res.detail is None:
        res.detail = "nonzero element with N = 0"
    return res


def _preimage_search(alg, value, norm_fn, budget, seed, jobs):
    base = Stream(seed).derive("preimage").seed

    def candidate(i):
        s = Stream(base, offset=i * (alg.k_dim + 2))
        return alg.random(s)

    return _sharded_search(
        budget, candidate, lambda x: norm_fn(x) == value, jobs)


def _first_split_witness(j, d_alg, w):
    """(-w, 1, 0) has J-norm -N(w) + lambda = 0 when N_D(w) = lambda."""
    g = j.ground
    neg = d_alg.smul(-g.one, w)
    coords = d_alg.to_k_coords(neg) + d_alg.to_k_coords(d_alg.unit())
    return tuple(coords + [g.zero] * (j.dim - len(coords)))
