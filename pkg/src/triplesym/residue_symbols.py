"""Quadratic residue symbols over Q and pair-level Milnor invariants.

A power residue symbol value is kept as an exponent in Z/l together with l,
so that mod-2 and mod-3 values can never be mixed by accident.  The pair
invariant of a Frobenius element is the *negated* symbol exponent of the
difference a_j - a_i at the prime, the sign being invisible for l = 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intarith
from .errors import BadModulus, ExcludedPrime, NotCoprime


@dataclass(frozen=True)
class SymbolValue:
    """An l-th root of unity stored as an exponent mod l (l in {2, 3})."""

    l: int
    exponent: int

    def __post_init__(self):
        if self.l not in (2, 3):
            raise ValueError(f"unsupported symbol order l={self.l}")
        object.__setattr__(self, "exponent", self.exponent % self.l)

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        if self.l != other.l:
            raise ValueError("cannot multiply symbol values of different order")
        return SymbolValue(self.l, self.exponent + other.exponent)

    def inverse(self) -> "SymbolValue":
        return SymbolValue(self.l, -self.exponent)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def render(self) -> str:
        if self.l == 2:
            return "+1" if self.exponent == 0 else "-1"
        return {0: "1", 1: "zeta3", 2: "zeta3^2"}[self.exponent]

    def __str__(self):
        return self.render()


def legendre(a: int, p: int) -> SymbolValue:
    """Legendre symbol (a/p) as a SymbolValue(l=2), via the Euler criterion.

    Raises BadModulus unless p is an odd prime, NotCoprime when p | a.
    """
    if p == 2 or p < 3 or not intarith.is_prime(p):
        raise BadModulus(f"modulus {p} is not an odd prime")
    if a % p == 0:
        raise NotCoprime(f"{a} is divisible by {p}")
    r = pow(a, (p - 1) // 2, p)
    if r == 1:
        return SymbolValue(2, 0)
    if r == p - 1:
        return SymbolValue(2, 1)
    raise BadModulus(f"Euler criterion failed mod {p}; modulus not prime")


def pair_milnor(ai, aj, p, l: int) -> SymbolValue:
    """Pair invariant of the Frobenius at p for base points ai, aj.

    The value is the inverse of the l-th power residue symbol of aj - ai
    at p, as an exponent mod l.  The diagonal ai == aj gives 0.  For l = 2
    the inputs are integers and p an odd prime; for l = 3 they are
    Eisenstein integers and p an Eisenstein prime.
    """
    if l == 2:
        if ai == aj:
            return SymbolValue(2, 0)
        d = aj - ai
        if p == 2 or d % p == 0:
            raise ExcludedPrime(f"prime {p} divides l*(a_j - a_i)")
        return legendre(d, p).inverse()
    if l == 3:
        # local import: eisenstein depends on SymbolValue from this module
        from . import eisenstein

        ai = eisenstein.EisensteinInt.coerce(ai)
        aj = eisenstein.EisensteinInt.coerce(aj)
        if ai == aj:
            return SymbolValue(3, 0)
        d = aj - ai
        if eisenstein.reduce(d, p).is_zero:
            raise ExcludedPrime(f"prime {p} divides a_j - a_i")
        return eisenstein.cubic_residue_symbol(d, p).inverse()
    raise ValueError(f"unsupported l={l}")
