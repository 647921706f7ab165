"""Exact model of the degree-l^3 Heisenberg covering of the t-line.

The field is k(t)(T, U, E) with T^l = t, U^l = c^l - t and E^l = eps(t),
where eps(t) = prod_{i=1..l-1} (c - zeta^i T)^i and k is Q (l = 2) or
Q(w) with w^2 + w + 1 = 0 (l = 3); c is a fixed nonzero constant chosen
per instance.  Elements are written on the basis T^a U^b E^e with
0 <= a, b, e < l and coefficients in k(t), kept in lowest terms with
monic denominator so equality is decidable.

The Galois group is generated by

    alpha: T -> zeta*T, U -> U,      E -> ((c - T)/U) * E
    beta:  T -> T,      U -> zeta*U, E -> E

with [alpha, beta] = delta, the central order-l automorphism multiplying
E by zeta.  Words in the free generators x1, x2 act through x1 -> alpha,
x2 -> beta (all other letters act trivially), and the scalar by which a
word multiplies E is its monodromy exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadConstant, Inconsistent, NotScalar
from .magnus import FreeWord
from .residue_symbols import SymbolValue

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Qw:
    """Element a + b*w of Q(w), w^2 = -1 - w; b stays 0 over Q."""

    a: Fraction
    b: Fraction = _ZERO

    @classmethod
    def coerce(cls, value) -> "Qw":
        if isinstance(value, Qw):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot interpret {value!r} as a base-field scalar")

    @classmethod
    def parse(cls, text: str) -> "Qw":
        try:
            return cls(Fraction(text.strip()))
        except ValueError:
            pass
        m = re.match(
            r"^\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*w\s*$", text
        )
        if not m:
            raise ValueError(f"cannot parse scalar {text!r}")
        b = Fraction(m.group(3))
        return cls(Fraction(m.group(1)), b if m.group(2) == "+" else -b)

    def __add__(self, other):
        return Qw(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Qw(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Qw(-self.a, -self.b)

    def __mul__(self, other):
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return Qw(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    def inverse(self) -> "Qw":
        n = self.a * self.a - self.a * self.b + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        conj = Qw(self.a - self.b, -self.b)
        return Qw(conj.a / n, conj.b / n)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        result = Qw(_ONE)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"


QW_ZERO = Qw(_ZERO)
QW_ONE = Qw(_ONE)


# -- polynomials in t over Qw, as tuples with no trailing zeros -------------


def _pnorm(p):
    p = list(p)
    while p and p[-1].is_zero:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _pnorm(
        [
            (p[i] if i < len(p) else QW_ZERO) + (q[i] if i < len(q) else QW_ZERO)
            for i in range(n)
        ]
    )


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [QW_ZERO] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci.is_zero:
            continue
        for j, cj in enumerate(q):
            out[i + j] = out[i + j] + ci * cj
    return _pnorm(out)


def _pscale(p, s: Qw):
    return _pnorm([c * s for c in p])


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [QW_ZERO] * max(len(p) - len(q) + 1, 0)
    inv_lead = q[-1].inverse()
    while len(rem) >= len(q) and _pnorm(rem):
        rem = list(_pnorm(rem))
        if len(rem) < len(q):
            break
        shift = len(rem) - len(q)
        factor = rem[-1] * inv_lead
        quo[shift] = quo[shift] + factor
        for i, cq in enumerate(q):
            rem[shift + i] = rem[shift + i] - factor * cq
        rem = rem[:-1]
    return _pnorm(quo), _pnorm(rem)


def _pgcd(p, q):
    a, b = _pnorm(p), _pnorm(q)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        a = _pscale(a, a[-1].inverse())
    return a


def _peval(p, x: Qw) -> Qw:
    acc = QW_ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class BaseFunction:
    """A rational function of t in canonical form (reduced, monic denominator)."""

    num: tuple
    den: tuple

    @classmethod
    def make(cls, num, den=(QW_ONE,)) -> "BaseFunction":
        num, den = _pnorm(num), _pnorm(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls((), (QW_ONE,))
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
        lead = den[-1]
        if lead != QW_ONE:
            inv = lead.inverse()
            num, den = _pscale(num, inv), _pscale(den, inv)
        return cls(num, den)

    @classmethod
    def const(cls, s) -> "BaseFunction":
        return cls.make((Qw.coerce(s),))

    @classmethod
    def t(cls) -> "BaseFunction":
        return cls.make((QW_ZERO, QW_ONE))

    def __add__(self, other):
        return BaseFunction.make(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BaseFunction(_pneg(self.num), self.den)

    def __mul__(self, other):
        return BaseFunction.make(
            _pmul(self.num, other.num), _pmul(self.den, other.den)
        )

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return BaseFunction.make(
            _pmul(self.num, other.den), _pmul(self.den, other.num)
        )

    @property
    def is_zero(self) -> bool:
        return not self.num

    def constant_value(self):
        """The scalar when the function is constant, else None."""
        if self.is_zero:
            return QW_ZERO
        if len(self.num) == 1 and len(self.den) == 1:
            return self.num[0] / self.den[0]
        return None

    def eval(self, x) -> Qw:
        x = Qw.coerce(x)
        d = _peval(self.den, x)
        if d.is_zero:
            raise ZeroDivisionError(f"pole at t = {x}")
        return _peval(self.num, x) / d

    def __str__(self):
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for k, cf in enumerate(p):
                if cf.is_zero:
                    continue
                if k == 0:
                    parts.append(str(cf))
                else:
                    mono = "t" if k == 1 else f"t^{k}"
                    parts.append(mono if cf == QW_ONE else f"({cf})*{mono}")
            return " + ".join(parts)

        if self.den == (QW_ONE,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


BF_ZERO = BaseFunction((), (QW_ONE,))
BF_ONE = BaseFunction.const(1)


class CoverField:
    """The covering field for a given l in {2, 3} and nonzero constant c."""

    def __init__(self, l: int, c):
        if l not in (2, 3):
            raise ValueError("only l = 2 and l = 3 are modeled")
        c = Qw.coerce(c)
        if c.is_zero:
            raise BadConstant("the branch constant c must be nonzero")
        if l == 2 and c.b != 0:
            raise BadConstant("c must be rational for l = 2")
        self.l = l
        self.c = c
        self.zeta = Qw(Fraction(-1)) if l == 2 else Qw(_ZERO, _ONE)
        self.t_fn = BaseFunction.t()
        self.u_reduction = BaseFunction.make((c**l, -QW_ONE))  # c^l - t
        self.eps = self._eps_components()
        self._generators = None
        self._identity = None

    def _eps_components(self):
        """eps as a T-polynomial: tuple of l base functions (coeff of T^k).

        prod_{i=1..l-1} (c - zeta^i T)^i is expanded in Qw[T] and T^l is
        folded to t.
        """
        poly = [BF_ONE]
        for i in range(1, self.l):
            factor = [BaseFunction.const(self.c), BaseFunction.const(-(self.zeta**i))]
            for _ in range(i):
                poly = self._tpoly_mul(poly, factor)
        out = [BF_ZERO] * self.l
        for k, coeff in enumerate(poly):
            q, rem = divmod(k, self.l)
            fold = coeff
            for _ in range(q):
                fold = fold * self.t_fn
            out[rem] = out[rem] + fold
        return tuple(out)

    @staticmethod
    def _tpoly_mul(p, q):
        out = [BF_ZERO] * (len(p) + len(q) - 1)
        for i, ci in enumerate(p):
            if ci.is_zero:
                continue
            for j, cj in enumerate(q):
                if cj.is_zero:
                    continue
                out[i + j] = out[i + j] + ci * cj
        while out and out[-1].is_zero:
            out.pop()
        return out

    def params(self):
        return (self.l, self.c)

    def __eq__(self, other):
        return isinstance(other, CoverField) and self.params() == other.params()

    def generators(self):
        """(alpha, beta), constructed once and order-checked."""
        if self._generators is None:
            l = self.l
            t_img = RadicalElement.t_root(self) * RadicalElement.scalar(
                self, BaseFunction.const(self.zeta)
            )
            alpha = CoverAutomorphism(
                self,
                im_t=t_img,
                im_u=RadicalElement.u_root(self),
                im_e=self._alpha_e_image(),
            )
            beta = CoverAutomorphism(
                self,
                im_t=RadicalElement.t_root(self),
                im_u=RadicalElement.u_root(self)
                * RadicalElement.scalar(self, BaseFunction.const(self.zeta)),
                im_e=RadicalElement.e_root(self),
            )
            ident = self.identity_automorphism()
            for name, g in (("alpha", alpha), ("beta", beta)):
                acc = g
                for _ in range(l - 1):
                    acc = acc.after(g)
                if acc != ident:
                    raise Inconsistent(f"{name} does not have order {l}")
            self._generators = (alpha, beta)
        return self._generators

    def _alpha_e_image(self):
        # (c - T)/U * E = (c - T) * U^(l-1) / (c^l - t) * E
        inv = BF_ONE / self.u_reduction
        terms = {
            (0, self.l - 1, 1): BaseFunction.const(self.c) * inv,
            (1, self.l - 1, 1): -BF_ONE * inv,
        }
        return RadicalElement(self, terms)

    def identity_automorphism(self):
        if self._identity is None:
            self._identity = CoverAutomorphism(
                self,
                im_t=RadicalElement.t_root(self),
                im_u=RadicalElement.u_root(self),
                im_e=RadicalElement.e_root(self),
                check=False,
            )
        return self._identity

    def delta(self):
        """The central automorphism multiplying E by zeta."""
        return CoverAutomorphism(
            self,
            im_t=RadicalElement.t_root(self),
            im_u=RadicalElement.u_root(self),
            im_e=RadicalElement.e_root(self)
            * RadicalElement.scalar(self, BaseFunction.const(self.zeta)),
        )


class RadicalElement:
    """Element of the covering field on the T^a U^b E^e basis."""

    __slots__ = ("field", "terms")

    def __init__(self, field: CoverField, terms: dict):
        self.field = field
        self.terms = {k: v for k, v in terms.items() if not v.is_zero}

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one(cls, field):
        return cls(field, {(0, 0, 0): BF_ONE})

    @classmethod
    def scalar(cls, field, f: BaseFunction):
        return cls(field, {(0, 0, 0): f})

    @classmethod
    def t_root(cls, field):
        return cls(field, {(1, 0, 0): BF_ONE})

    @classmethod
    def u_root(cls, field):
        return cls(field, {(0, 1, 0): BF_ONE})

    @classmethod
    def e_root(cls, field):
        return cls(field, {(0, 0, 1): BF_ONE})

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, f in other.terms.items():
            s = out.get(key, BF_ZERO) + f
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return RadicalElement(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RadicalElement(self.field, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out: dict = {}
        for (a1, b1, e1), f1 in self.terms.items():
            for (a2, b2, e2), f2 in other.terms.items():
                _reduce_term(
                    self.field, a1 + a2, b1 + b2, e1 + e2, f1 * f2, out
                )
        return RadicalElement(self.field, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not needed here")
        result = RadicalElement.one(self.field)
        for _ in range(n):
            result = result * self
        return result

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different covering fields")

    @property
    def is_zero(self):
        return not self.terms

    def scalar_multiple_of(self, key):
        """The coefficient when the element is f * basis[key] alone, else None."""
        if set(self.terms) == {key}:
            return self.terms[key]
        return None

    def __eq__(self, other):
        return (
            isinstance(other, RadicalElement)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        names = []
        for (a, b, e), f in sorted(self.terms.items()):
            mono = "".join(
                s * k for s, k in (("T", a), ("U", b), ("E", e))
            )
            names.append(f"({f})*{mono or '1'}")
        return " + ".join(names)


def _reduce_term(field, a, b, e, f, out):
    l = field.l
    while b >= l:
        b -= l
        f = f * field.u_reduction
    while a >= l:
        a -= l
        f = f * field.t_fn
    if e >= l:
        e -= l
        for k, g in enumerate(field.eps):
            if g.is_zero:
                continue
            _reduce_term(field, a + k, b, e, f * g, out)
        return
    if f.is_zero:
        return
    key = (a, b, e)
    s = out.get(key, BF_ZERO) + f
    if s.is_zero:
        out.pop(key, None)
    else:
        out[key] = s


class CoverAutomorphism:
    """A base-field-fixing automorphism given by its images of T, U, E."""

    __slots__ = ("field", "im_t", "im_u", "im_e", "_pows")

    def __init__(self, field, im_t, im_u, im_e, check=True):
        self.field = field
        self.im_t = im_t
        self.im_u = im_u
        self.im_e = im_e
        self._pows = None
        if check:
            self._verify()

    def _verify(self):
        field = self.field
        l = field.l
        if self.im_t**l != RadicalElement.scalar(field, field.t_fn):
            raise Inconsistent("image of T does not satisfy T^l = t")
        if self.im_u**l != RadicalElement.scalar(field, field.u_reduction):
            raise Inconsistent("image of U does not satisfy U^l = c^l - t")
        if self.im_e**l != epsilon_product(field, self.im_t):
            raise Inconsistent("image of E does not satisfy E^l = eps(image of T)")

    def _power_table(self):
        if self._pows is None:
            l = self.field.l
            tables = []
            for img in (self.im_t, self.im_u, self.im_e):
                row = [RadicalElement.one(self.field)]
                for _ in range(l - 1):
                    row.append(row[-1] * img)
                tables.append(row)
            self._pows = tables
        return self._pows

    def apply(self, x: RadicalElement) -> RadicalElement:
        pt, pu, pe = self._power_table()
        out = RadicalElement.zero(self.field)
        for (a, b, e), f in x.terms.items():
            term = RadicalElement.scalar(self.field, f) * pt[a] * pu[b] * pe[e]
            out = out + term
        return out

    def after(self, other: "CoverAutomorphism") -> "CoverAutomorphism":
        """Composition self o other."""
        return CoverAutomorphism(
            self.field,
            im_t=self.apply(other.im_t),
            im_u=self.apply(other.im_u),
            im_e=self.apply(other.im_e),
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, CoverAutomorphism)
            and self.field == other.field
            and self.im_t == other.im_t
            and self.im_u == other.im_u
            and self.im_e == other.im_e
        )

    def __ne__(self, other):
        return not self == other


def epsilon_product(field: CoverField, t_image: RadicalElement) -> RadicalElement:
    """prod_{i=1..l-1} (c - zeta^i * t_image)^i, the defining product of eps."""
    out = RadicalElement.one(field)
    for i in range(1, field.l):
        factor = RadicalElement.scalar(
            field, BaseFunction.const(field.c)
        ) - t_image * RadicalElement.scalar(field, BaseFunction.const(field.zeta**i))
        for _ in range(i):
            out = out * factor
    return out


def make_generators(l: int, c):
    """The order-l generators (alpha, beta) of the covering group."""
    field = CoverField(l, c)
    return field.generators()


def apply(phi: CoverAutomorphism, x: RadicalElement) -> RadicalElement:
    return phi.apply(x)


def compose(phi: CoverAutomorphism, psi: CoverAutomorphism) -> CoverAutomorphism:
    """phi o psi (phi after psi)."""
    return phi.after(psi)


def automorphism_of_word(word: FreeWord, field: CoverField) -> CoverAutomorphism:
    """Image of a free word under x1 -> alpha, x2 -> beta, rest -> identity."""
    alpha, beta = field.generators()
    gens = {1: alpha, 2: beta}
    acc = field.identity_automorphism()
    for idx, exp in word.letters:
        g = gens.get(idx)
        if g is None:
            continue
        for _ in range(exp % field.l):
            acc = acc.after(g)
    return acc


def monodromy_check(word: FreeWord, l: int, c, field: CoverField = None) -> SymbolValue:
    """The zeta-exponent by which the word's automorphism multiplies E.

    Raises NotScalar when the image of E is not a constant multiple of E
    (the word lies outside the subgroup acting diagonally on E).
    """
    if field is None:
        field = CoverField(l, c)
    phi = automorphism_of_word(word, field)
    coeff = phi.im_e.scalar_multiple_of((0, 0, 1))
    if coeff is None:
        raise NotScalar(f"word {word} does not act diagonally on E")
    s = coeff.constant_value()
    if s is None:
        raise NotScalar(f"word {word} scales E by a non-constant function")
    acc = QW_ONE
    for m in range(field.l):
        if s == acc:
            return SymbolValue(field.l, m)
        acc = acc * field.zeta
    raise Inconsistent(f"E is scaled by {s}, not a root of unity")


@dataclass(frozen=True)
class HeisenbergMatrix:
    """Upper unitriangular 3x3 matrix over Z/l, stored by its three entries."""

    l: int
    x12: int
    x23: int
    x13: int

    def __post_init__(self):
        object.__setattr__(self, "x12", self.x12 % self.l)
        object.__setattr__(self, "x23", self.x23 % self.l)
        object.__setattr__(self, "x13", self.x13 % self.l)

    @classmethod
    def identity(cls, l: int):
        return cls(l, 0, 0, 0)

    def __mul__(self, other):
        if self.l != other.l:
            raise ValueError("matrices over different moduli")
        return HeisenbergMatrix(
            self.l,
            self.x12 + other.x12,
            self.x23 + other.x23,
            self.x13 + other.x13 + self.x12 * other.x23,
        )

    def inverse(self):
        return HeisenbergMatrix(
            self.l, -self.x12, -self.x23, self.x12 * self.x23 - self.x13
        )

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = HeisenbergMatrix.identity(self.l)
        for _ in range(abs(n)):
            out = out * base
        return out

    def entries(self):
        return (self.x12, self.x23, self.x13)

    def rows(self):
        return ((1, self.x12, self.x13), (0, 1, self.x23), (0, 0, 1))


def to_matrix(word: FreeWord, l: int) -> HeisenbergMatrix:
    """Matrix image of a word under x1 -> E12-, x2 -> E23-unitriangular."""
    gens = {
        1: HeisenbergMatrix(l, 1, 0, 0),
        2: HeisenbergMatrix(l, 0, 1, 0),
    }
    acc = HeisenbergMatrix.identity(l)
    for idx, exp in word.letters:
        g = gens.get(idx)
        if g is None:
            continue
        acc = acc * g**exp
    return acc


def verify_relations(l: int, c, trials: int = 100, max_len: int = 8, seed: int = 0):
    """Exact verification report for one (l, c) instance.

    Checks the generator orders, the commutator identity, centrality and
    order of delta, the two routes to eps, the monodromy exponents of
    commutators and l-th powers, and matrix-kernel consistency on random
    words.  Returns a dict with an overall "ok" flag.
    """
    import random

    field = CoverField(l, c)
    alpha, beta = field.generators()
    ident = field.identity_automorphism()
    delta = field.delta()

    def order_is_l(g):
        acc = g
        for _ in range(l - 1):
            if acc == ident:
                return False
            acc = acc.after(g)
        return acc == ident

    alpha_inv = _power(alpha, l - 1, ident)
    beta_inv = _power(beta, l - 1, ident)
    commutator = alpha.after(beta).after(alpha_inv).after(beta_inv)

    report = {
        "l": l,
        "c": str(field.c),
        "alpha_order_l": order_is_l(alpha),
        "beta_order_l": order_is_l(beta),
        "commutator_is_delta": commutator == delta,
        "delta_central": delta.after(alpha) == alpha.after(delta)
        and delta.after(beta) == beta.after(delta),
        "delta_order_l": order_is_l(delta),
        "epsilon_consistency": RadicalElement.e_root(field) ** l
        == epsilon_product(field, RadicalElement.t_root(field)),
    }

    mono = {}
    x = [None] + [FreeWord.generator(3, i) for i in (1, 2, 3)]
    cases = [
        ("[x1,x2]", x[1].commutator(x[2]), 1),
        ("[x1,x3]", x[1].commutator(x[3]), 0),
        ("[x2,x3]", x[2].commutator(x[3]), 0),
        ("x1^l", x[1] ** l, 0),
        ("x2^l", x[2] ** l, 0),
        ("x3^l", x[3] ** l, 0),
    ]
    for name, word, expected in cases:
        got = monodromy_check(word, l, c, field=field).exponent
        mono[name] = {"exponent": got, "expected": expected, "ok": got == expected}
    report["monodromy"] = mono

    rng = random.Random(seed)
    reps: dict = {}
    consistent = True
    for _ in range(trials):
        length = rng.randint(1, max_len)
        letters = tuple(
            (rng.choice((1, 2)), rng.choice((1, -1))) for _ in range(length)
        )
        word = FreeWord(2, letters)
        key = to_matrix(word, l).entries()
        phi = automorphism_of_word(word, field)
        if key in reps:
            if reps[key] != phi:
                consistent = False
        else:
            if any(phi == seen for seen in reps.values()):
                consistent = False
            reps[key] = phi
    report["matrix_kernel_words"] = trials
    report["matrix_kernel_classes"] = len(reps)
    report["matrix_kernel_consistent"] = consistent

    report["ok"] = all(
        [
            report["alpha_order_l"],
            report["beta_order_l"],
            report["commutator_is_delta"],
            report["delta_central"],
            report["delta_order_l"],
            report["epsilon_consistency"],
            consistent,
        ]
        + [case["ok"] for case in mono.values()]
    )
    return report


def _power(g: CoverAutomorphism, n: int, ident: CoverAutomorphism):
    acc = ident
    for _ in range(n):
        acc = acc.after(g)
    return acc
