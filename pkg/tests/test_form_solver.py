import math
import time

import pytest

import oracles
from triplesym.eisenstein import EisensteinInt, EisensteinPrime
from triplesym.errors import PreconditionFailed, SearchExhausted
from triplesym.form_solver import (
    CubicData,
    RedeiData,
    enumerate_cubic,
    enumerate_redei,
    solve_cubic,
    solve_redei,
)

P17 = EisensteinPrime.from_element(-17)
P53 = EisensteinPrime.from_element(-53)


def _redei_solutions_exhaustive(p1, p2, bound):
    """Independent enumeration of normalized solutions, smallest first."""
    out = []
    for z in range(1, bound + 1):
        for y in range(0, bound + 1, 2):
            n = p1 * y * y + p2 * z * z
            x = math.isqrt(n)
            if x * x != n or x > bound:
                continue
            if math.gcd(math.gcd(x, y), z) != 1:
                continue
            if (x - y) % 4 != 1:
                x = -x
            assert (x - y) % 4 == 1
            out.append((x, y, z))
    return out


def test_redei_5_29_frozen():
    oracle = _redei_solutions_exhaustive(5, 29, 50)
    assert oracle[0] == (7, 2, 1)
    sol = solve_redei(5, 29, 50)
    assert (sol.x, sol.y, sol.z) == (7, 2, 1)


def test_redei_side_conditions_hold():
    sol = solve_redei(13, 17, 100)
    assert sol.x**2 - 13 * sol.y**2 - 17 * sol.z**2 == 0
    assert math.gcd(math.gcd(sol.x, sol.y), sol.z) == 1
    assert sol.y % 2 == 0
    assert (sol.x - sol.y) % 4 == 1


def test_redei_precondition_failures():
    # (5/13) is nontrivial by the exhaustive-squares oracle
    assert oracles.legendre_exponent_exhaustive(5, 13) == 1
    with pytest.raises(PreconditionFailed):
        solve_redei(5, 13, 50)
    with pytest.raises(PreconditionFailed):
        solve_redei(7, 29, 50)  # 7 = 3 mod 4
    with pytest.raises(PreconditionFailed):
        solve_redei(5, 5, 50)
    with pytest.raises(PreconditionFailed):
        solve_redei(5, 15, 50)  # composite


def test_redei_determinism_and_enumeration():
    a = solve_redei(5, 29, 200)
    b = solve_redei(5, 29, 200)
    assert a == b
    sols = enumerate_redei(5, 29, 200, count=5)
    assert len(sols) == 5
    assert len({(s.x, s.y, s.z) for s in sols}) == 5
    assert [(s.x, s.y, s.z) for s in sols] == \
        _redei_solutions_exhaustive(5, 29, 200)[:5]


def test_redei_search_exhausted():
    with pytest.raises(SearchExhausted):
        solve_redei(5, 29, 5)


def test_redei_data_validation():
    with pytest.raises(PreconditionFailed):
        RedeiData(5, 29, 7, 2, 3)  # identity fails
    with pytest.raises(PreconditionFailed):
        RedeiData(5, 29, 14, 4, 2)  # not primitive
    with pytest.raises(PreconditionFailed):
        RedeiData(5, 29, -7, 2, 1)  # x - y = 3 mod 4


def test_cubic_17_53_frozen():
    start = time.monotonic()
    sol = solve_cubic(P17, P53, 10)
    elapsed = time.monotonic() - start
    assert (sol.x, sol.y, sol.z) == (
        EisensteinInt(8), EisensteinInt(3), EisensteinInt(-1))
    assert 8**3 + (-17) * 3**3 == (-53) * (-1) ** 3 == 53
    assert elapsed < 1.0


def test_cubic_exact_recheck():
    sol = solve_cubic(-17, -53, 10)
    assert sol.x**3 + sol.pi1.pi * sol.y**3 == sol.pi2.pi * sol.z**3
    assert sol.ideal_check == "content-coprimality"


def test_cubic_admits_reference_solution():
    CubicData(P17, P53, EisensteinInt(8), EisensteinInt(3), EisensteinInt(-1))


def test_cubic_data_validation():
    with pytest.raises(PreconditionFailed):
        CubicData(P17, P53, EisensteinInt(8), EisensteinInt(3), EisensteinInt(1))
    with pytest.raises(PreconditionFailed):
        CubicData(P17, P53, EisensteinInt(0), EisensteinInt(0), EisensteinInt(0))
    # unit-scaling by 1 + 2w makes norm(z) divisible by 3
    lam = EisensteinInt(1, 2)
    with pytest.raises(PreconditionFailed):
        CubicData(P17, P53, lam * EisensteinInt(8), lam * EisensteinInt(3),
                  lam * EisensteinInt(-1))
    # common rational factor
    with pytest.raises(PreconditionFailed):
        CubicData(P17, P53, EisensteinInt(16), EisensteinInt(6),
                  EisensteinInt(-2))


def test_cubic_precondition_symbol_failure():
    # norm-19 prime whose symbol against -17 is nontrivial
    bad = EisensteinPrime.from_element(EisensteinInt(-2, 3))
    from triplesym.eisenstein import cubic_residue_symbol

    assert cubic_residue_symbol(bad.pi, P17).exponent != 0
    with pytest.raises(PreconditionFailed):
        solve_cubic(bad, P17, 10)


def test_cubic_precondition_norm_mod_9():
    five = EisensteinPrime.from_element(EisensteinInt(2), require_primary=False)
    with pytest.raises(PreconditionFailed):
        solve_cubic(five, P17, 5)


def test_cubic_enumeration_unit_orbit():
    sols = enumerate_cubic(P17, P53, 10, count=4)
    assert len(sols) == 4
    assert len({(s.x, s.y, s.z) for s in sols}) == 4
    # rational solutions come first
    assert sols[0].x == EisensteinInt(8)
    assert all(s.x**3 + s.pi1.pi * s.y**3 == s.pi2.pi * s.z**3 for s in sols)
    # determinism
    again = enumerate_cubic(P17, P53, 10, count=4)
    assert [(s.x, s.y, s.z) for s in again] == [(s.x, s.y, s.z) for s in sols]


def test_cubic_search_exhausted():
    with pytest.raises(SearchExhausted):
        solve_cubic(P17, P53, 1)
