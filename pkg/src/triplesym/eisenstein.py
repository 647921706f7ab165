"""Exact arithmetic in the Eisenstein integers Z[w], w = zeta_3.

Conventions used throughout:

 * elements are a + b*w with w^2 = -1 - w; norm(a + b*w) = a^2 - a*b + b^2
 * the six units are +-1, +-w, +-w^2
 * sqrt(-3) means 1 + 2w (a square root of -3); a prime element is
   *primary* when it is congruent to 1 mod 3*sqrt(-3) = 3 + 6w.  Exactly
   one associate is primary when the norm is 1 mod 9; primes above 3 and
   primes of norm != 1 mod 9 have none.
 * the residue field of a prime pi is F_p for split pi (norm p = 1 mod 3)
   and F_{q^2} = Z[w]/(q) for inert pi (pi an associate of a rational
   prime q = 2 mod 3).  The image of w is the basis element w-bar in the
   inert case and, in the split case, the root r of z^2 + z + 1 mod p
   singled out by pi | (w - r); this pins the embedding of the cube roots
   of unity once and for all.

Everything is immutable and pure.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass

from . import intarith
from .errors import (
    BadModulus,
    DivisibleByModulus,
    Inconsistent,
    NoCubeRoot,
    NoPrimaryAssociate,
    NotPrime,
)
from .residue_symbols import SymbolValue

_EISENSTEIN_RE = re.compile(
    r"""^\s*(?P<a>[+-]?\d+)\s*
        (?:(?P<sign>[+-])\s*(?P<b>\d+)\s*\*\s*w\s*)?$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class EisensteinInt:
    """a + b*w with exact integer components."""

    a: int
    b: int = 0

    @classmethod
    def coerce(cls, value) -> "EisensteinInt":
        if isinstance(value, EisensteinInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot interpret {value!r} as an Eisenstein integer")

    @classmethod
    def parse(cls, text: str) -> "EisensteinInt":
        """Parse `a`, `a+b*w` or `a-b*w` (optional spaces and parens)."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        m = _EISENSTEIN_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse Eisenstein integer {text!r}")
        a = int(m.group("a"))
        if m.group("b") is None:
            return cls(a, 0)
        b = int(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return cls(a, b)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def __add__(self, other):
        other = EisensteinInt.coerce(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = EisensteinInt.coerce(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        other = EisensteinInt.coerce(other)
        # (a1 + b1 w)(a2 + b2 w), w^2 = -1 - w
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return EisensteinInt(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return EisensteinInt.coerce(other) - self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers leave Z[w]")
        result = EisensteinInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "EisensteinInt":
        # conj(w) = w^2 = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def exact_div(self, other: "EisensteinInt"):
        """self / other when the quotient lies in Z[w], else None."""
        other = EisensteinInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        num = self * other.conjugate()
        if num.a % n or num.b % n:
            return None
        return EisensteinInt(num.a // n, num.b // n)

    def divides(self, other) -> bool:
        return EisensteinInt.coerce(other).exact_div(self) is not None


OMEGA = EisensteinInt(0, 1)
ONE = EisensteinInt(1, 0)
SQRT_MINUS_3 = EisensteinInt(1, 2)
THREE_SQRT_MINUS_3 = EisensteinInt(3, 6)
UNITS = (
    EisensteinInt(1, 0),
    EisensteinInt(-1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(0, -1),
    EisensteinInt(-1, -1),
    EisensteinInt(1, 1),
)


def norm(x) -> int:
    return EisensteinInt.coerce(x).norm()


def is_prime(x) -> bool:
    """Primality in Z[w]: prime norm, or unit times a rational prime = 2 mod 3."""
    x = EisensteinInt.coerce(x)
    n = x.norm()
    if n <= 1:
        return False
    if intarith.is_prime(n):
        return True
    # inert case: x must be an associate of a rational prime q = 2 mod 3,
    # so n = q^2
    if not intarith.is_square(n):
        return False
    q = math.isqrt(n)
    if q % 3 != 2 or not intarith.is_prime(q):
        return False
    return any((u * q) == x for u in UNITS)


def primary_associate(x) -> EisensteinInt:
    """The unique associate congruent to 1 mod 3*sqrt(-3), when it exists.

    Raises NotPrime when x is not prime in Z[w], NoPrimaryAssociate when no
    associate satisfies the congruence (equivalently, norm != 1 mod 9 or x
    lies above 3).
    """
    x = EisensteinInt.coerce(x)
    if not is_prime(x):
        raise NotPrime(f"{x} is not prime in Z[w]")
    if x.norm() % 3 == 0:
        raise NoPrimaryAssociate(f"{x} lies above 3")
    hits = [u * x for u in UNITS if THREE_SQRT_MINUS_3.divides(u * x - ONE)]
    if not hits:
        raise NoPrimaryAssociate(
            f"no associate of {x} is 1 mod 3+6*w (norm {x.norm()} is "
            f"{x.norm() % 9} mod 9)"
        )
    if len(hits) > 1:
        raise Inconsistent(f"multiple primary associates of {x}: {hits}")
    return hits[0]


def _semi_primary_associate(x: EisensteinInt) -> EisensteinInt:
    """The unique associate congruent to 2 mod 3 (a = 2, b = 0 mod 3)."""
    if x.norm() % 3 == 0:
        raise NoPrimaryAssociate(f"{x} lies above 3")
    hits = [u * x for u in UNITS if (u * x).a % 3 == 2 and (u * x).b % 3 == 0]
    if len(hits) != 1:
        raise Inconsistent(f"expected one associate of {x} that is 2 mod 3: {hits}")
    return hits[0]


@dataclass(frozen=True)
class EisensteinPrime:
    """A normalized prime of Z[w] away from 3.

    kind is "inert" (pi an associate of a rational prime q = 2 mod 3,
    residue field F_{q^2}) or "split" (norm a rational prime p = 1 mod 3,
    residue field F_p).  Ramified primes above 3 are rejected.

    The generator is the primary one (1 mod 3+6w, primary=True) whenever
    it exists; that is what every symbol pipeline requires.  Primes of
    norm != 1 mod 9 can still be constructed with require_primary=False
    for residue-field work, normalized to the associate congruent to
    2 mod 3 and flagged primary=False.
    """

    pi: EisensteinInt
    norm: int
    kind: str
    primary: bool = True

    def __post_init__(self):
        if not is_prime(self.pi):
            raise NotPrime(f"{self.pi} is not prime in Z[w]")
        if self.norm != self.pi.norm():
            raise ValueError(f"norm field {self.norm} does not match {self.pi}")
        expected = "split" if intarith.is_prime(self.norm) else "inert"
        if self.kind != expected:
            raise ValueError(f"kind {self.kind!r} should be {expected!r}")
        if self.primary and not THREE_SQRT_MINUS_3.divides(self.pi - ONE):
            raise ValueError(f"{self.pi} is marked primary but is not 1 mod 3+6w")

    @classmethod
    def from_element(cls, x, require_primary: bool = True) -> "EisensteinPrime":
        x = EisensteinInt.coerce(x)
        try:
            pi = primary_associate(x)
            primary = True
        except NoPrimaryAssociate:
            if require_primary:
                raise
            pi = _semi_primary_associate(x)
            primary = False
        n = pi.norm()
        kind = "split" if intarith.is_prime(n) else "inert"
        return cls(pi=pi, norm=n, kind=kind, primary=primary)

    @classmethod
    def parse(cls, text: str) -> "EisensteinPrime":
        return cls.from_element(EisensteinInt.parse(text))

    @property
    def char(self) -> int:
        """Residue characteristic p (so the field is F_p or F_{p^2})."""
        if self.kind == "split":
            return self.norm
        return math.isqrt(self.norm)

    def residue_field(self) -> "ResidueField":
        return _residue_field_cached(self)

    def __str__(self):
        return str(self.pi)


@functools.lru_cache(maxsize=None)
def _residue_field_cached(prime: "EisensteinPrime") -> "ResidueField":
    return ResidueField(prime)


class ResidueField:
    """The residue field Z[w]/(pi), with the image of w pinned.

    Elements are pairs (u, v) for u + v*w-bar mod p; split fields keep
    v = 0 and w-bar is the scalar root r with pi | (w - r).
    """

    def __init__(self, prime: EisensteinPrime):
        self.prime = prime
        self.p = prime.char
        self.q = prime.norm
        if prime.kind == "split":
            self.omega_image = self._select_root()
            self.omega = ResidueFieldElement(self.omega_image, 0, self)
        else:
            self.omega_image = None
            self.omega = ResidueFieldElement(0, 1, self)
        self.one = ResidueFieldElement(1, 0, self)
        self.zero = ResidueFieldElement(0, 0, self)

    def _select_root(self) -> int:
        p = self.p
        s = intarith.sqrt_mod(-3, p)
        if s is None:
            raise Inconsistent(f"-3 is not a square mod split prime {p}")
        inv2 = pow(2, -1, p)
        for r in ((-1 + s) * inv2 % p, (-1 - s) * inv2 % p):
            if self.prime.pi.divides(OMEGA - int(r)):
                return r
        raise Inconsistent(f"no root of z^2+z+1 mod {p} matches {self.prime.pi}")

    def element(self, u: int, v: int = 0) -> "ResidueFieldElement":
        return ResidueFieldElement(u, v, self)

    def reduce(self, x) -> "ResidueFieldElement":
        x = EisensteinInt.coerce(x)
        if self.prime.kind == "split":
            return self.element((x.a + x.b * self.omega_image) % self.p)
        return self.element(x.a % self.p, x.b % self.p)

    def elements(self):
        """Iterate the whole field (small fields only; used for fallbacks)."""
        if self.prime.kind == "split":
            for u in range(self.p):
                yield self.element(u)
        else:
            for u in range(self.p):
                for v in range(self.p):
                    yield self.element(u, v)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.prime == other.prime

    def __repr__(self):
        return f"ResidueField({self.prime.pi}, q={self.q})"


@dataclass(frozen=True)
class ResidueFieldElement:
    u: int
    v: int
    field: ResidueField

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "u", self.u % p)
        object.__setattr__(self, "v", self.v % p)
        if self.field.prime.kind == "split" and self.v:
            # fold w-bar into the scalar root
            r = self.field.omega_image
            object.__setattr__(self, "u", (self.u + self.v * r) % p)
            object.__setattr__(self, "v", 0)

    def __add__(self, other):
        self._check(other)
        return ResidueFieldElement(self.u + other.u, self.v + other.v, self.field)

    def __sub__(self, other):
        self._check(other)
        return ResidueFieldElement(self.u - other.u, self.v - other.v, self.field)

    def __mul__(self, other):
        self._check(other)
        p = self.field.p
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        return ResidueFieldElement(
            (u1 * u2 - v1 * v2) % p, (u1 * v2 + v1 * u2 - v1 * v2) % p, self.field
        )

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero residue")
        return self ** (self.field.q - 2)

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("mixed residue fields")

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def as_pair(self):
        return (self.u, self.v)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueFieldElement)
            and self.field == other.field
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.u, self.v, self.field.q))


def reduce(x, p: EisensteinPrime) -> ResidueFieldElement:
    """Canonical image of x in the residue field of p."""
    return p.residue_field().reduce(x)


def cubic_residue_symbol(x, p: EisensteinPrime) -> SymbolValue:
    """Cubic residue symbol (x/pi) as an exponent m with x^((N-1)/3) = w^m.

    Raises BadModulus when the norm is divisible by 3, DivisibleByModulus
    when p | x.
    """
    if p.norm % 3 == 0:
        raise BadModulus(f"norm of {p} is divisible by 3")
    field = p.residue_field()
    xbar = field.reduce(x)
    if xbar.is_zero:
        raise DivisibleByModulus(f"{x} is divisible by {p}")
    value = xbar ** ((p.norm - 1) // 3)
    return SymbolValue(3, _omega_log(value, field))


def _omega_log(value: ResidueFieldElement, field: ResidueField) -> int:
    """Exponent m in {0,1,2} with value = w-bar^m, else Inconsistent."""
    acc = field.one
    for m in range(3):
        if value == acc:
            return m
        acc = acc * field.omega
    raise Inconsistent(f"{value.as_pair()} is not a cube root of unity")


def cube_roots(a: ResidueFieldElement) -> list:
    """All cube roots of a in its residue field, [] when a is a non-residue.

    One root comes from Adleman-Manders-Miller extraction (digit-wise
    discrete log in the 3-Sylow subgroup); the other two are w-bar
    multiples.  A verified-exhaustive fallback covers small fields should
    the extraction ever disagree with its own check.
    """
    field = a.field
    if a.is_zero:
        return [field.zero]
    q = field.q
    if (q - 1) % 3 != 0:
        raise BadModulus(f"field of size {q} has no cube roots of unity")
    if a ** ((q - 1) // 3) != field.one:
        return []
    root = _cube_root_amm(a)
    if root is None or root * root * root != a:
        if q <= 1_000_000:
            root = next((c for c in field.elements() if c * c * c == a), None)
        if root is None:
            raise NoCubeRoot(f"cube root extraction failed in field of size {q}")
    w = field.omega
    return [root, root * w, root * w * w]


def _cube_root_amm(a: ResidueFieldElement):
    field = a.field
    q = field.q
    t, s = q - 1, 0
    while t % 3 == 0:
        t //= 3
        s += 1
    # deterministic scan for a cubic non-residue
    rho = None
    for g in field.elements():
        if g.is_zero:
            continue
        if g ** ((q - 1) // 3) != field.one:
            rho = g
            break
    if rho is None:
        return None
    b = rho**t  # generates the 3-Sylow subgroup, order 3^s
    h = a**t
    # digit-wise discrete log: find m with b^m = h (3 | m since a is a cube)
    m = 0
    b_top = b ** (3 ** (s - 1))  # order 3
    for k in range(s):
        probe = (h * (b ** (3**s - m))) ** (3 ** (s - 1 - k))
        digit = 0
        acc = field.one
        while acc != probe:
            acc = acc * b_top
            digit += 1
            if digit > 2:
                return None
        m += digit * 3**k
    if m % 3 != 0:
        return None
    y = b ** (m // 3)  # y^3 = a^t
    u = pow(3, -1, t) if t > 1 else 1
    j = (3 * u - 1) // t
    # (a^u * y^-j)^3 = a^(3u) * a^(-jt) = a^(1 + jt - jt) = a
    return (a**u) * (y.inverse() ** j)
