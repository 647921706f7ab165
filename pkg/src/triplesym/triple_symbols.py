"""Triple power residue symbols via Euler criteria in residue fields.

The quadratic triple symbol [p1,p2,p3] of admissible rational primes is
the Frobenius action of p3 on sqrt(alpha), alpha = x + y*sqrt(p1) from a
normalized solution of x^2 - p1*y^2 - p2*z^2 = 0.  Because p3 splits
completely in the relevant extensions, the action is exactly the Euler
exponent of x + s*y mod p3, for s a square root of p1 mod p3.  Both root
choices are evaluated and must agree.

The cubic triple symbol of primary Eisenstein primes is read the same way
from theta = (x + w*y*c)(x + w^2*y*c)^2 in the residue field of pi3, with
c running over all three cube roots of pi1.  The raw Euler exponent e of
theta^((q-1)/3) is the Frobenius-side invariant mu_3(sigma;123); the
invariant mu_3(123) is -e mod 3 and the symbol value is zeta_3^(-e).  For
l = 2 negation is invisible and all three numbers coincide.

Witness disagreement is never averaged: it signals invalid inputs or a
bug and raises Inconsistent.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

from . import intarith
from .eisenstein import (
    EisensteinInt,
    EisensteinPrime,
    cube_roots,
    cubic_residue_symbol,
    _omega_log,
)
from .errors import (
    DegeneratePrime,
    ExcludedPrime,
    Inconsistent,
    NoCubeRoot,
    PreconditionFailed,
)
from .form_solver import (
    CubicData,
    RedeiData,
    check_cubic_preconditions,
    check_redei_preconditions,
    solve_cubic,
    solve_redei,
)
from .residue_symbols import SymbolValue, legendre, pair_milnor

DEFAULT_BOUND = 10_000


@dataclass(frozen=True)
class TripleSymbolReport:
    """Result of one triple-symbol evaluation.

    witnesses lists (root choice, raw Euler exponent) pairs; they are all
    equal by construction (the operation errors otherwise).  milnor and
    frobenius_milnor are mu_l(123) and mu_l(sigma;123); value renders the
    symbol itself, zeta_l^milnor.
    """

    value: SymbolValue
    witnesses: tuple
    solution: Union[RedeiData, CubicData]
    milnor: int
    frobenius_milnor: int
    rational_generators: bool = True

    @property
    def l(self) -> int:
        return self.value.l


def milnor_from_symbol(report: TripleSymbolReport):
    """(mu_l(123), mu_l(sigma;123)) with the per-l sign conventions."""
    return report.milnor, report.frobenius_milnor


def _euler_exponent_mod2(v: int, p: int) -> int:
    r = pow(v, (p - 1) // 2, p)
    if r == 1:
        return 0
    if r == p - 1:
        return 1
    raise Inconsistent(f"Euler criterion failed for {v} mod {p}")


def redei_symbol(
    p1: int,
    p2: int,
    p3: int,
    solution: Optional[RedeiData] = None,
    bound: int = DEFAULT_BOUND,
) -> TripleSymbolReport:
    """Quadratic triple symbol of (p1, p2, p3) with explicit witnesses.

    Preconditions: all three primes are 1 mod 4, the six pairwise Legendre
    symbols are +1, and p3 is coprime to 2*p1*p2*x*y*z for the solution
    used.
    """
    check_redei_preconditions(p1, p2)
    if not intarith.is_prime(p3) or p3 % 4 != 1:
        raise PreconditionFailed(f"p3={p3} must be a prime 1 mod 4")
    if len({p1, p2, p3}) != 3:
        raise PreconditionFailed("p1, p2, p3 must be distinct")
    for a, b in ((p1, p3), (p3, p1), (p2, p3), (p3, p2)):
        if not legendre(a, b).is_trivial:
            raise PreconditionFailed(f"({a}/{b}) must be +1")

    if solution is None:
        solution = solve_redei(p1, p2, bound)
    elif (solution.p1, solution.p2) != (p1, p2):
        raise PreconditionFailed("solution belongs to a different prime pair")
    x, y, z = solution.x, solution.y, solution.z

    if math.gcd(p3, 2 * p1 * p2 * x * y * z) != 1:
        raise ExcludedPrime(f"p3={p3} divides 2*p1*p2*x*y*z")

    # the pair invariants of all base-point differences must vanish
    for d in (x * x, p1 * y * y, p2 * z * z):
        for signed in (d, -d):
            if pair_milnor(0, signed, p3, 2).exponent != 0:
                raise Inconsistent(f"pair invariant of {signed} at {p3} is nonzero")

    s = intarith.sqrt_mod(p1, p3)
    if s is None:
        raise Inconsistent(f"{p1} is not a square mod {p3} despite (p1/p3)=+1")
    witnesses = []
    for root in (s, p3 - s):
        v = (x + root * y) % p3
        if v == 0:
            continue
        witnesses.append((root, _euler_exponent_mod2(v, p3)))
    if not witnesses:
        raise DegeneratePrime(f"both embeddings of alpha vanish mod {p3}")
    exponents = {e for _, e in witnesses}
    if len(exponents) != 1:
        raise Inconsistent(f"square-root witnesses disagree: {witnesses}")
    e = exponents.pop()
    return TripleSymbolReport(
        value=SymbolValue(2, e),
        witnesses=tuple(witnesses),
        solution=solution,
        milnor=e,
        frobenius_milnor=e,
    )


def _coerce_prime(p) -> EisensteinPrime:
    if isinstance(p, EisensteinPrime):
        return p
    return EisensteinPrime.from_element(EisensteinInt.coerce(p))


def cubic_triple_symbol(
    pi1,
    pi2,
    pi3,
    solution: Optional[CubicData] = None,
    bound: int = DEFAULT_BOUND,
) -> TripleSymbolReport:
    """Cubic triple symbol of primary Eisenstein primes (pi1, pi2, pi3).

    Preconditions: all norms are 1 mod 9, the six pairwise cubic residue
    symbols are 1, and pi3 is coprime to 3*pi1*pi2*x*y*z for the solution
    used.  A warning is issued when pi1 or pi2 is not generated by a
    rational prime (the invariance theory restricts to that case).
    """
    pi1, pi2, pi3 = _coerce_prime(pi1), _coerce_prime(pi2), _coerce_prime(pi3)
    check_cubic_preconditions(pi1, pi2)

    rational = pi1.kind == "inert" and pi2.kind == "inert"
    if not rational:
        warnings.warn(
            "pi1 and pi2 are not both generated by rational primes; the "
            "triple symbol is computed but its invariance is not guaranteed",
            stacklevel=2,
        )

    if pi3.norm % 9 != 1 or not pi3.primary:
        raise PreconditionFailed(f"pi3={pi3} is not primary of norm 1 mod 9")
    if pi3.pi in (pi1.pi, pi2.pi):
        raise PreconditionFailed("pi1, pi2, pi3 must be distinct")
    for a, b in ((pi1, pi3), (pi3, pi1), (pi2, pi3), (pi3, pi2)):
        if not cubic_residue_symbol(a.pi, b).is_trivial:
            raise PreconditionFailed(f"({a}/{b})_3 must be 1")

    if solution is None:
        solution = solve_cubic(pi1, pi2, bound)
    elif (solution.pi1.pi, solution.pi2.pi) != (pi1.pi, pi2.pi):
        raise PreconditionFailed("solution belongs to a different prime pair")
    x, y, z = solution.x, solution.y, solution.z

    fld = pi3.residue_field()
    for factor in (pi1.pi, pi2.pi, x, y, z):
        if fld.reduce(factor).is_zero:
            raise ExcludedPrime(f"pi3={pi3} divides {factor}")

    # pair invariants of the base-point differences x^3, -pi1*y^3, pi2*z^3
    zero = EisensteinInt(0)
    for d in (x**3, -(pi1.pi * y**3), pi2.pi * z**3):
        for signed in (d, -d):
            if pair_milnor(zero, signed, pi3, 3).exponent != 0:
                raise Inconsistent(f"pair invariant of {signed} at {pi3} is nonzero")

    roots = cube_roots(fld.reduce(pi1.pi))
    if not roots:
        raise NoCubeRoot(f"{pi1} has no cube root mod {pi3} despite (pi1/pi3)_3=1")

    xbar, ybar = fld.reduce(x), fld.reduce(y)
    w = fld.omega
    w2 = w * w
    a_bar, b_bar, c_bar = (fld.reduce(t) for t in solution.theta_coordinates())
    exp = (pi3.norm - 1) // 3
    witnesses = []
    for c in roots:
        t1 = xbar + w * ybar * c
        t2 = xbar + w2 * ybar * c
        theta = t1 * t2 * t2
        if theta != a_bar + b_bar * c + c_bar * c * c:
            raise Inconsistent("theta product and coordinate forms disagree")
        if theta.is_zero:
            raise DegeneratePrime(f"theta vanishes mod {pi3}")
        witnesses.append((c.as_pair(), _omega_log(theta**exp, fld)))
    exponents = {e for _, e in witnesses}
    if len(exponents) != 1:
        raise Inconsistent(f"cube-root witnesses disagree: {witnesses}")
    e = exponents.pop()
    return TripleSymbolReport(
        value=SymbolValue(3, -e),
        witnesses=tuple(witnesses),
        solution=solution,
        milnor=(-e) % 3,
        frobenius_milnor=e,
        rational_generators=rational,
    )
