"""Shared fixtures: field towers and the standard structure zoo.

Everything expensive is session-scoped; symbolic expansions are cached
on the structures themselves, so the acceptance suite reuses the work.
"""

from fractions import Fraction

import pytest

from albertlab.scalars import PrimeField, RationalField
from albertlab.fields import (Composite, CyclicCubic, Elem, PrimeFieldDesc,
                              QuadraticEtale, Rationals, tower_build)
from albertlab.associative import (CommutativeCubic, CyclicAlgebra,
                                   GroundCenter, MatrixAlgebra,
                                   QuadraticCenter, UnitaryInvolution)
from albertlab import tits, isotopy

F_COEFFS = ("1", "-3", "0", "1")      # x^3 - 3x + 1, cyclic over Q, F5, F7
RHO_COEFFS = ("-2", "0", "1")         # alpha -> alpha^2 - 2


@pytest.fixture(scope="session")
def QQ():
    return RationalField()


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def F7():
    return PrimeField(7)


def _composite_desc(base, d):
    return Composite(L=CyclicCubic(base=base, f=F_COEFFS, rho=RHO_COEFFS),
                     K=QuadraticEtale(base=base, d=d))


@pytest.fixture(scope="session")
def tower_q():
    return tower_build(_composite_desc(Rationals(), "-1"))


@pytest.fixture(scope="session")
def tower_f5():
    return tower_build(_composite_desc(PrimeFieldDesc(5), "2"))


@pytest.fixture(scope="session")
def tower_f7():
    return tower_build(_composite_desc(PrimeFieldDesc(7), "3"))


@pytest.fixture(scope="session")
def tower_l_q():
    return tower_build(CyclicCubic(base=Rationals(), f=F_COEFFS,
                                   rho=RHO_COEFFS))


# -- the six acceptance fixtures plus friends --------------------------------

@pytest.fixture(scope="session")
def j_m3_f5(F5):
    return tits.first_tits(MatrixAlgebra(GroundCenter(F5)), F5.from_int(2))


@pytest.fixture(scope="session")
def j_m3_q(QQ):
    return tits.first_tits(MatrixAlgebra(GroundCenter(QQ)), QQ.one)


@pytest.fixture(scope="session")
def j_cyc_q(QQ, tower_l_q):
    d = CyclicAlgebra(tower_l_q, QQ.from_int(2))
    return tits.first_tits(d, QQ.from_int(3))


def _lk_second(tower, mu_coords):
    b = CommutativeCubic.over_LK(tower)
    sigma = UnitaryInvolution(b)
    mu = Elem(tower.K, list(mu_coords))
    return tits.second_tits(b, sigma, b.unit(), mu)


@pytest.fixture(scope="session")
def j_lk_q(tower_q):
    # nu = (3 + 4i)/5, N_K(nu) = 1
    return _lk_second(tower_q, [Fraction(3, 5), Fraction(4, 5)])


@pytest.fixture(scope="session")
def j_lk_f5(F5, tower_f5):
    # nu = 2 + 2*sqrt(2): N = 4 - 2*4 = 1 mod 5
    return _lk_second(tower_f5, [F5.from_int(2), F5.from_int(2)])


@pytest.fixture(scope="session")
def j_lk_f7(F7, tower_f7):
    # nu = 2 + sqrt(3): N = 4 - 3 = 1 mod 7
    return _lk_second(tower_f7, [F7.from_int(2), F7.from_int(1)])


@pytest.fixture(scope="session")
def j_m3_f7(F7):
    return tits.first_tits(MatrixAlgebra(GroundCenter(F7)), F7.from_int(3))


@pytest.fixture(scope="session")
def iso_m3_f5(F5, j_m3_f5):
    v = list(j_m3_f5.unit)
    v[1] = F5.one                      # unit + e_{12} in the first summand
    return isotopy.isotope(j_m3_f5, tuple(v))


@pytest.fixture(scope="session")
def iso_lk_q(j_lk_q):
    b = j_lk_q.meta["algebra"]
    her = j_lk_q.meta["her_basis"]
    v = b.add(her[0], her[1])          # 1 + alpha, invertible in L
    return isotopy.isotope(j_lk_q, tits.embed_hermitian_summand(j_lk_q, v))


@pytest.fixture(scope="session")
def six_fixtures(j_m3_f5, j_m3_q, j_cyc_q, j_lk_q, j_lk_f5, iso_m3_f5,
                 iso_lk_q):
    return [j_m3_f5, j_m3_q, j_cyc_q, j_lk_q, j_lk_f5, iso_m3_f5, iso_lk_q]


@pytest.fixture(scope="session")
def finite_fixtures(j_m3_f5, j_lk_f5, j_m3_f7, j_lk_f7, iso_m3_f5):
    return [j_m3_f5, j_lk_f5, j_m3_f7, j_lk_f7, iso_m3_f5]
