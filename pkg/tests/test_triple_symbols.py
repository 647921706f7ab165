import warnings

import pytest

import oracles
from triplesym.eisenstein import EisensteinInt, EisensteinPrime
from triplesym.errors import ExcludedPrime, PreconditionFailed
from triplesym.form_solver import RedeiData, enumerate_cubic, enumerate_redei
from triplesym.intarith import is_prime
from triplesym.residue_symbols import legendre
from triplesym.triple_symbols import (
    cubic_triple_symbol,
    milnor_from_symbol,
    redei_symbol,
)

#: the worked (-17, -53) family: pi3 -> (mu3(sigma;123), mu3(123))
CUBIC_FAMILY = {-71: (1, 2), -89: (2, 1), -107: (1, 2), -179: (2, 1), -197: (2, 1)}


def _admissible_p3(p1, p2, start, count):
    """Primes p3 = 1 mod 4 with all pairwise Legendre symbols trivial."""
    out = []
    p3 = start
    while len(out) < count:
        p3 += 1
        if p3 % 4 != 1 or not is_prime(p3) or p3 in (p1, p2):
            continue
        if all(legendre(a, b).exponent == 0
               for a, b in ((p1, p3), (p3, p1), (p2, p3), (p3, p2))):
            out.append(p3)
    return out


def test_redei_first_three_vs_exhaustive_squares():
    p1, p2 = 5, 29
    sol = enumerate_redei(p1, p2, 50, count=1)[0]
    for p3 in _admissible_p3(p1, p2, 2, 3):
        rep = redei_symbol(p1, p2, p3)
        # oracle: pick a root by scanning, decide squareness by enumeration
        roots = oracles.sqrt_mod_exhaustive(p1, p3)
        assert roots
        v = (sol.x + roots[0] * sol.y) % p3
        expected = 0 if v in oracles.squares_mod(p3) else 1
        assert rep.value.exponent == expected
        assert rep.milnor == rep.frobenius_milnor == expected


def test_redei_square_alpha_gives_plus_one():
    # alpha = x + s*y a square mod p3 must render +1
    p1, p2 = 5, 29
    for p3 in _admissible_p3(p1, p2, 2, 6):
        rep = redei_symbol(p1, p2, p3)
        s = oracles.sqrt_mod_exhaustive(p1, p3)[0]
        is_square = (rep.solution.x + s * rep.solution.y) % p3 in oracles.squares_mod(p3)
        assert (rep.value.render() == "+1") == is_square


def test_redei_witnesses_and_solutions_agree():
    p1, p2 = 13, 17
    sols = enumerate_redei(p1, p2, 300, count=3)
    for p3 in _admissible_p3(p1, p2, 2, 5):
        values = set()
        for sol in sols:
            rep = redei_symbol(p1, p2, p3, solution=sol)
            assert len(rep.witnesses) == 2
            assert len({e for _, e in rep.witnesses}) == 1
            values.add(rep.value.exponent)
        assert len(values) == 1


def test_redei_preconditions():
    with pytest.raises(PreconditionFailed):
        redei_symbol(5, 29, 7)  # 7 = 3 mod 4
    with pytest.raises(PreconditionFailed):
        redei_symbol(5, 29, 41)  # (29/41) nontrivial
    assert oracles.legendre_exponent_exhaustive(29, 41) == 1
    with pytest.raises(PreconditionFailed):
        redei_symbol(5, 29, 5)
    with pytest.raises(PreconditionFailed):
        redei_symbol(5, 29, 109, solution=RedeiData(13, 17, -15, 4, 1))


def test_redei_excluded_prime():
    # 181 is admissible for (5, 29) but divides x of this normalized solution
    sol = RedeiData(5, 29, 1267, 566, 11)
    assert sol.x % 181 == 0
    rep_ok = redei_symbol(5, 29, 181)  # default solution is fine
    assert rep_ok.value.l == 2
    with pytest.raises(ExcludedPrime):
        redei_symbol(5, 29, 181, solution=sol)


def test_cubic_reference_family():
    for pi3, (sigma, mu) in CUBIC_FAMILY.items():
        rep = cubic_triple_symbol(-17, -53, pi3)
        assert rep.frobenius_milnor == sigma, pi3
        assert rep.milnor == mu, pi3
        assert rep.value.exponent == mu
        assert len(rep.witnesses) == 3
        assert len({e for _, e in rep.witnesses}) == 1
        assert rep.rational_generators


def test_cubic_split_third_prime():
    # norm-163 split prime, admissible for (-17, -53); witnesses agree
    pi3 = EisensteinInt.parse("-14-3*w")
    assert EisensteinPrime.from_element(pi3).norm == 163
    rep = cubic_triple_symbol(-17, -53, pi3)
    assert len(rep.witnesses) == 3
    assert len({e for _, e in rep.witnesses}) == 1
    assert rep.milnor == (-rep.frobenius_milnor) % 3


def test_cubic_solution_independence():
    sols = enumerate_cubic(-17, -53, 10, count=4)
    assert len(sols) == 4
    for pi3 in (-71, -89):
        exps = set()
        for sol in sols:
            rep = cubic_triple_symbol(-17, -53, pi3, solution=sol)
            exps.add(rep.value.exponent)
        assert len(exps) == 1


def test_cubic_preconditions():
    with pytest.raises(PreconditionFailed):
        cubic_triple_symbol(-17, -53, -17)
    with pytest.raises(PreconditionFailed):
        cubic_triple_symbol(-17, -53, -5)  # 25 != 1 mod 9
    with pytest.raises(PreconditionFailed):
        cubic_triple_symbol(-17, -53, 13)  # 13 splits, element not prime


def test_cubic_nonrational_generator_warns():
    pi_split = EisensteinInt(-2, 3)  # norm 19
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        with pytest.raises(PreconditionFailed):
            # pairwise symbols against -17 are nontrivial, but the warning
            # about non-rational generators fires first
            cubic_triple_symbol(pi_split, -107, -17, bound=1)
    assert any("rational" in str(w.message) for w in caught)


def test_second_reference_pair_solves():
    sol = enumerate_cubic(-17, -467, 10, count=1)[0]
    assert (sol.x, sol.y, sol.z) == (
        EisensteinInt(2), EisensteinInt(-3), EisensteinInt(-1))
    assert 2**3 + (-17) * (-3) ** 3 == (-467) * (-1) ** 3


def test_cubic_shuffle_relation():
    # swapping the first two primes negates the invariant mod 3 (the
    # length-3 shuffle relation); a strong cross-check since the two runs
    # use entirely different form solutions
    for pi3 in (-71, -89, -107):
        a = cubic_triple_symbol(-17, -53, pi3)
        b = cubic_triple_symbol(-53, -17, pi3)
        assert (a.frobenius_milnor + b.frobenius_milnor) % 3 == 0
        assert (a.solution.x, a.solution.y) != (b.solution.x, b.solution.y)


def test_redei_permutation_symmetry():
    # the quadratic triple symbol is classically symmetric in all three
    # primes; permutations that trip the exclusion check are skipped
    import itertools

    for trip, expected in (((5, 29, 109), 0), ((5, 29, 181), 1),
                           ((13, 17, 53), 1)):
        seen = []
        for perm in itertools.permutations(trip):
            try:
                seen.append(redei_symbol(*perm).value.exponent)
            except ExcludedPrime:
                continue
        assert len(seen) >= 3
        assert set(seen) == {expected}, (trip, seen)


def test_milnor_from_symbol_conventions():
    rep2 = redei_symbol(5, 29, 109)
    assert rep2.value.render() == "+1"
    assert milnor_from_symbol(rep2) == (0, 0)
    rep71 = cubic_triple_symbol(-17, -53, -71)
    assert rep71.value.exponent == 2
    assert milnor_from_symbol(rep71) == (2, 1)
    rep89 = cubic_triple_symbol(-17, -53, -89)
    assert rep89.value.exponent == 1
    assert milnor_from_symbol(rep89) == (1, 2)
