"""Truncated mod-l Magnus expansions of free group words.

Words over generators x_1..x_r map into the algebra of noncommutative
power series F_l<<X_1,...,X_r>> via x_i -> 1 + X_i, truncated at a hard
degree cap.  Coefficients of the expansion are the mod-l Magnus
coefficients mu_l(I; w); the invariants of a family of longitude words
are read off as mu_l(I'; f_{last(I)}).  The filtration degree of a word
w is the smallest degree with a nonvanishing coefficient in the
expansion of w minus its constant term 1.

Series use a sparse map keyed by multi-index tuples; generator counts and
caps are tiny (r <= 4, d <= 6) in every intended use, so no cleverness is
needed beyond degree-grouped multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import IndexOutOfRange, InconsistentShape, NotInF2

Letter = Tuple[int, int]  # (generator index 1..r, nonzero exponent)


@dataclass(frozen=True)
class FreeWord:
    """A word in the free group on r generators, stored normalized.

    Adjacent letters with equal index are merged and zero exponents
    dropped, so equality is syntactic equality of reduced words.
    """

    r: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _normalize(self.letters))
        for idx, exp in self.letters:
            if not 1 <= idx <= self.r:
                raise IndexOutOfRange(f"generator x{idx} outside 1..{self.r}")
            if exp == 0:
                raise ValueError("zero exponent survived normalization")

    @classmethod
    def identity(cls, r: int) -> "FreeWord":
        return cls(r, ())

    @classmethod
    def generator(cls, r: int, i: int, exp: int = 1) -> "FreeWord":
        return cls(r, ((i, exp),))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.r != other.r:
            raise ValueError("words over different generator counts")
        return FreeWord(self.r, self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.r, tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "FreeWord":
        if n == 0:
            return FreeWord.identity(self.r)
        if len(self.letters) == 1:  # x_i^(N-1) must not materialize N letters
            idx, exp = self.letters[0]
            return FreeWord(self.r, ((idx, exp * n),))
        base = self if n > 0 else self.inverse()
        return FreeWord(self.r, base.letters * abs(n))

    def commutator(self, other: "FreeWord") -> "FreeWord":
        return self * other * self.inverse() * other.inverse()

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def with_rank(self, r: int) -> "FreeWord":
        return FreeWord(r, self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(
            f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.letters
        )


def _normalize(letters) -> Tuple[Letter, ...]:
    out = []
    for idx, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == idx:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((idx, merged))
        else:
            out.append((idx, exp))
    return tuple(out)


def parse_word(text: str, r: Optional[int] = None) -> FreeWord:
    """Parse `x1 x2^-1 [x1,x2] x3^5`; [a,b] expands to a b a^-1 b^-1.

    Brackets nest; whitespace separates letters and is optional inside
    brackets.  r defaults to the largest generator index present.
    """
    letters, max_idx, _ = _parse_seq(text, 0, len(text), stop=None)
    rank = r if r is not None else max(max_idx, 1)
    return FreeWord(rank, tuple(letters))


def _parse_seq(s, pos, end, stop):
    letters = []
    max_idx = 0
    while pos < end:
        ch = s[pos]
        if ch.isspace():
            pos += 1
            continue
        if stop and ch in stop:
            return letters, max_idx, pos
        if ch == "1":
            pos += 1
            continue
        if ch == "x":
            pos += 1
            start = pos
            while pos < end and s[pos].isdigit():
                pos += 1
            if start == pos:
                raise ValueError(f"expected generator index at {start} in {s!r}")
            idx = int(s[start:pos])
            exp, pos = _parse_exponent(s, pos, end)
            letters.append((idx, exp))
            max_idx = max(max_idx, idx)
            continue
        if ch == "[":
            left, m1, pos = _parse_seq(s, pos + 1, end, stop=",")
            if pos >= end or s[pos] != ",":
                raise ValueError(f"unterminated commutator in {s!r}")
            right, m2, pos = _parse_seq(s, pos + 1, end, stop="]")
            if pos >= end or s[pos] != "]":
                raise ValueError(f"unterminated commutator in {s!r}")
            pos += 1
            exp, pos = _parse_exponent(s, pos, end)
            inner = (
                tuple(left)
                + tuple(right)
                + tuple((i, -e) for i, e in reversed(left))
                + tuple((i, -e) for i, e in reversed(right))
            )
            body = inner if exp >= 0 else tuple((i, -e) for i, e in reversed(inner))
            letters.extend(body * abs(exp))
            max_idx = max(max_idx, m1, m2)
            continue
        raise ValueError(f"unexpected character {ch!r} in word {text_snip(s, pos)}")
    if stop:
        raise ValueError(f"expected one of {stop!r} before end of {s!r}")
    return letters, max_idx, pos


def _parse_exponent(s, pos, end):
    if pos < end and s[pos] == "^":
        pos += 1
        start = pos
        if pos < end and s[pos] in "+-":
            pos += 1
        while pos < end and s[pos].isdigit():
            pos += 1
        if start == pos or not s[start:pos].lstrip("+-"):
            raise ValueError(f"bad exponent at {start} in {s!r}")
        return int(s[start:pos]), pos
    return 1, pos


def text_snip(s, pos):
    return f"{s[max(0, pos - 8):pos + 8]!r} (offset {pos})"


class TruncatedSeries:
    """Noncommutative power series mod l, truncated above degree cap.

    coeffs maps multi-index tuples (entries 1..r, length <= cap) to
    nonzero residues mod l; missing keys are zero.
    """

    __slots__ = ("l", "r", "cap", "coeffs")

    def __init__(self, l, r, cap, coeffs=None):
        self.l = l
        self.r = r
        self.cap = cap
        self.coeffs = coeffs if coeffs is not None else {}

    @classmethod
    def one(cls, l, r, cap):
        return cls(l, r, cap, {(): 1 % l})

    def coefficient(self, index) -> int:
        return self.coeffs.get(tuple(index), 0)

    def _compatible(self, other):
        return (self.l, self.r, self.cap) == (other.l, other.r, other.cap)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not self._compatible(other):
            raise ValueError("series parameters differ")
        by_deg: dict = {}
        for key, val in other.coeffs.items():
            by_deg.setdefault(len(key), []).append((key, val))
        out: dict = {}
        l, cap = self.l, self.cap
        for k1, v1 in self.coeffs.items():
            room = cap - len(k1)
            for deg, items in by_deg.items():
                if deg > room:
                    continue
                for k2, v2 in items:
                    key = k1 + k2
                    c = (out.get(key, 0) + v1 * v2) % l
                    if c:
                        out[key] = c
                    elif key in out:
                        del out[key]
        return TruncatedSeries(self.l, self.r, self.cap, out)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self._compatible(other)
            and self.coeffs == other.coeffs
        )

    def min_degree(self) -> Optional[int]:
        """Smallest positive degree carrying a nonzero coefficient."""
        degs = [len(k) for k in self.coeffs if k]
        return min(degs) if degs else None

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        parts = []
        for key, val in self.terms():
            if not key:
                parts.append(str(val))
                continue
            mono = "".join(f"X{i}" for i in key)
            parts.append(mono if val == 1 else f"{val}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncatedSeries(l={self.l}, r={self.r}, cap={self.cap}, {self})"


def _binom_mod(e: int, k: int, l: int) -> int:
    """C(e, k) mod l for any integer e (generalized binomial), k >= 0."""
    if k == 0:
        return 1 % l
    num = 1
    for j in range(k):
        num *= e - j
    return (num // math.factorial(k)) % l


def _letter_series(l, r, cap, idx, exp) -> TruncatedSeries:
    coeffs = {(): 1 % l}
    for k in range(1, cap + 1):
        c = _binom_mod(exp, k, l)
        if c:
            coeffs[(idx,) * k] = c
    return TruncatedSeries(l, r, cap, coeffs)


def expand(word: FreeWord, l: int, r: Optional[int] = None, d: int = 2) -> TruncatedSeries:
    """Magnus expansion of the word mod l, truncated at degree d."""
    if d < 1:
        raise ValueError("cap must be at least 1")
    rank = r if r is not None else word.r
    series = TruncatedSeries.one(l, rank, d)
    for idx, exp in word.letters:
        series = series * _letter_series(l, rank, d, idx, exp)
    return series


def mu(index: Sequence[int], word: FreeWord, l: int) -> int:
    """Magnus coefficient of X_index in the expansion of the word."""
    index = tuple(index)
    cap = max(len(index), 1)
    return expand(word, l, word.r, cap).coefficient(index)


def milnor_of_element(longitudes: Sequence[FreeWord], index: Sequence[int], l: int) -> int:
    """Invariant mu_l(I) of a family of longitude words f_1..f_r.

    mu_l(I) is mu_l(I'; f_{i_n}) with I' = I without its last entry;
    |I| = 1 gives 0 by convention.
    """
    index = tuple(index)
    if not index:
        raise IndexOutOfRange("empty multi-index")
    if len(index) == 1:
        return 0
    last = index[-1]
    if not 1 <= last <= len(longitudes):
        raise IndexOutOfRange(f"index {last} has no longitude (have {len(longitudes)})")
    return mu(index[:-1], longitudes[last - 1], l)


def zassenhaus_degree(word: FreeWord, l: int, cap: int = 6) -> Optional[int]:
    """Filtration degree of the word up to cap; None means >= cap + 1."""
    return expand(word, l, word.r, cap).min_degree()


@dataclass(frozen=True)
class NormalForm2:
    """Degree-2 coefficients of a word in the second filtration step, r = 3.

    squares holds the exponents of x_i^2 for l = 2 (None for l = 3);
    commutators maps (i, j), i < j, to the exponent of [x_i, x_j].
    """

    l: int
    squares: Optional[Tuple[int, int, int]]
    commutators: dict

    def as_dict(self):
        out = {}
        if self.squares is not None:
            for i, e in enumerate(self.squares, 1):
                out[f"e{i}{i}"] = e
        for (i, j), e in sorted(self.commutators.items()):
            out[f"e{i}{j}"] = e
        return out


def normal_form_deg2(word: FreeWord, l: int) -> NormalForm2:
    """Exponents of the square/commutator basis for a word in F(2), r = 3.

    For l = 2 the basis is x_1^2, x_2^2, x_3^2, [x_1,x_2], [x_2,x_3],
    [x_1,x_3]; for l = 3 the squares are absent.  Raises NotInF2 when a
    degree-1 coefficient survives, InconsistentShape when the degree-2
    block is not of the required (anti)symmetric shape.
    """
    if l not in (2, 3):
        raise ValueError("normal forms are defined for l in {2, 3}")
    if word.r > 3:
        raise IndexOutOfRange("normal form is for words on at most 3 generators")
    series = expand(word.with_rank(3), l, 3, 2)
    for i in range(1, 4):
        if series.coefficient((i,)):
            raise NotInF2(f"degree-1 coefficient of X{i} is nonzero")
    commutators = {}
    for i in range(1, 4):
        for j in range(i + 1, 4):
            eij = series.coefficient((i, j))
            eji = series.coefficient((j, i))
            if l == 2:
                if eij != eji:
                    raise InconsistentShape(f"coefficients of X{i}X{j} and X{j}X{i} differ")
            else:
                if (eij + eji) % 3 != 0:
                    raise InconsistentShape(
                        f"coefficients of X{i}X{j} and X{j}X{i} are not opposite"
                    )
            commutators[(i, j)] = eij
    if l == 2:
        squares = tuple(series.coefficient((i, i)) for i in range(1, 4))
        return NormalForm2(2, squares, commutators)
    for i in range(1, 4):
        if series.coefficient((i, i)):
            raise InconsistentShape(f"diagonal coefficient of X{i}X{i} is nonzero")
    return NormalForm2(3, None, commutators)


@dataclass(frozen=True)
class LocalRelationReport:
    degree: Optional[int]
    implied_degree: int
    ok: bool


def local_relation_check(
    n_norm: int, i: int, frobenius_word: FreeWord, l: int, cap: int = 6
) -> LocalRelationReport:
    """Check x_i^(N-1) [x_i, y] = 1 up to the degree implied by N.

    With l^v the exact power of l dividing N - 1, the relator word lies in
    filtration step min(l^v, 2); the report records the observed degree of
    its expansion against that bound.  y is a candidate Frobenius word.
    """
    r = max(frobenius_word.r, i)
    xi = FreeWord.generator(r, i)
    power = FreeWord(r, ((i, n_norm - 1),))
    relator = power * xi.commutator(frobenius_word.with_rank(r))
    deg = zassenhaus_degree(relator, l, cap)
    e = n_norm - 1
    v = 0
    while e and e % l == 0:
        e //= l
        v += 1
    implied = min(l**v, 2) if v else 1
    ok = deg is None or deg >= implied
    return LocalRelationReport(deg, implied, ok)
