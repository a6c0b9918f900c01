"""Sparse multivariate polynomial arithmetic over F2 and the integers.

Monomials are packed into plain Python integers so that the natural integer
order coincides with graded reverse lexicographic order: the most significant
byte is the total degree, followed by one byte per variable occurrence
(largest variable index first, each stored as ``255 - index``).  With this
encoding ``max()`` over a term set finds the leading monomial, and sorting
integers sorts monomials, which the Groebner kernels exploit heavily.

Variable indices run from 0 to at most ``MAX_VARS - 1`` and total degrees are
bounded by ``MAX_DEGREE``; both bounds are far beyond anything this package
computes, and exceeding them raises ``ValueError`` rather than silently
wrapping.

A polynomial is an immutable list of ``(monomial, coefficient)`` terms in
strictly decreasing monomial order with no zero coefficients; over F2 every
stored coefficient is 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainMismatch, InverseNotAvailable

MAX_VARS = 200
MAX_DEGREE = 250

MONO_ONE = 0

F2 = "F2"
ZZ = "ZZ"
DOMAINS = (F2, ZZ)


# ---------------------------------------------------------------------------
# packed monomials

def mono_from_indices(indices: Iterable[int]) -> int:
    """Pack a multiset of variable indices (repeats mean powers) into a key."""
    idx = sorted(indices, reverse=True)
    d = len(idx)
    if d > MAX_DEGREE:
        raise ValueError(f"monomial degree {d} exceeds MAX_DEGREE={MAX_DEGREE}")
    m = d
    for v in idx:
        if not 0 <= v < MAX_VARS:
            raise ValueError(f"variable index {v} out of range")
        m = (m << 8) | (255 - v)
    return m


def mono_from_exponents(exps: Mapping[int, int]) -> int:
    """Pack a sparse ``{variable: exponent}`` map into a key."""
    indices: list[int] = []
    for v, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent")
        indices.extend([v] * e)
    return mono_from_indices(indices)


def mono_degree(m: int) -> int:
    """Total degree of a packed monomial."""
    if m == 0:
        return 0
    return m >> (((m.bit_length() - 1) >> 3) << 3)


def mono_indices(m: int) -> tuple[int, ...]:
    """Variable indices with multiplicity, largest first."""
    if m == 0:
        return ()
    d = mono_degree(m)
    return tuple(255 - ((m >> (8 * (d - 1 - i))) & 0xFF) for i in range(d))


def mono_exponents(m: int) -> dict[int, int]:
    """Sparse exponent map of a packed monomial."""
    out: dict[int, int] = {}
    for v in mono_indices(m):
        out[v] = out.get(v, 0) + 1
    return out


def mono_mul(a: int, b: int) -> int:
    """Product of two packed monomials."""
    if a == 0:
        return b
    if b == 0:
        return a
    return mono_from_indices(mono_indices(a) + mono_indices(b))


def mono_divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides ``b`` (multiset inclusion)."""
    if a == 0:
        return True
    ia, ib = mono_indices(a), mono_indices(b)
    j = 0
    nb = len(ib)
    for v in ia:  # both descending
        while j < nb and ib[j] > v:
            j += 1
        if j >= nb or ib[j] != v:
            return False
        j += 1
    return True


def mono_div(b: int, a: int) -> int:
    """Quotient ``b / a``; caller must ensure divisibility."""
    if a == 0:
        return b
    ia = list(mono_indices(a))
    out = []
    for v in mono_indices(b):
        if ia and ia[0] == v:
            ia.pop(0)
        else:
            out.append(v)
    if ia:
        raise ValueError("monomial division is not exact")
    return mono_from_indices(out)


def mono_lcm(a: int, b: int) -> int:
    ea, eb = mono_exponents(a), mono_exponents(b)
    for v, e in eb.items():
        if ea.get(v, 0) < e:
            ea[v] = e
    return mono_from_exponents(ea)


def mono_gcd(a: int, b: int) -> int:
    ea, eb = mono_exponents(a), mono_exponents(b)
    out = {v: min(e, eb[v]) for v, e in ea.items() if v in eb}
    return mono_from_exponents(out)


def mono_coprime(a: int, b: int) -> bool:
    return mono_gcd(a, b) == 0


def mono_divisors(m: int) -> Iterator[int]:
    """All divisors of ``m`` (every sub-multiset), including 1 and ``m``."""
    items = sorted(mono_exponents(m).items())
    choices = [[(v, e) for e in range(exp + 1)] for v, exp in items]
    for combo in itertools.product(*choices):
        yield mono_from_exponents({v: e for v, e in combo if e})


def mono_str(m: int) -> str:
    if m == 0:
        return "1"
    exps = sorted(mono_exponents(m).items())
    return "*".join(f"x{v}^{e}" for v, e in exps)


def monomials_of_degree(num_vars: int, degree: int) -> Iterator[int]:
    """All packed monomials in ``num_vars`` variables of exact total degree."""
    if degree == 0:
        yield MONO_ONE
        return
    for combo in itertools.combinations_with_replacement(range(num_vars), degree):
        yield mono_from_indices(combo)


def count_monomials_below(num_vars: int, k: int) -> int:
    """Number of monomials of total degree < k."""
    total = 0
    for d in range(k):
        num = 1
        for i in range(d):
            num = num * (num_vars + i) // (i + 1)
        total += num
    return total


# ---------------------------------------------------------------------------
# order objects and comparison

LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order descriptor; only graded reverse lex is implemented."""

    kind: str = "grevlex"
    num_vars: int = 0

    def __post_init__(self):
        if self.kind != "grevlex":
            raise ValueError(f"unsupported monomial order {self.kind!r}")


def compare(a: "Monomial | int", b: "Monomial | int", order: MonomialOrder | None = None) -> int:
    """Grevlex comparison; returns LESS, EQUAL or GREATER.

    Degrees compare first; ties are broken at the largest variable index where
    the exponents differ, the smaller exponent there winning.  The packed
    integer encoding realizes exactly this order, so the comparison is plain
    integer comparison.
    """
    ka = a.key if isinstance(a, Monomial) else a
    kb = b.key if isinstance(b, Monomial) else b
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


@dataclass(frozen=True)
class Monomial:
    """Thin wrapper over a packed monomial key."""

    key: int

    @classmethod
    def from_exponents(cls, exps: Mapping[int, int]) -> "Monomial":
        return cls(mono_from_exponents(exps))

    @property
    def exponents(self) -> dict[int, int]:
        return mono_exponents(self.key)

    @property
    def total_degree(self) -> int:
        return mono_degree(self.key)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(mono_mul(self.key, other.key))

    def divides(self, other: "Monomial") -> bool:
        return mono_divides(self.key, other.key)

    def __str__(self) -> str:
        return mono_str(self.key)


# ---------------------------------------------------------------------------
# polynomials

_TERMS = tuple[tuple[int, int], ...]


def _normalize(domain: str, terms: Iterable[tuple[int, int]]) -> _TERMS:
    acc: dict[int, int] = {}
    for m, c in terms:
        acc[m] = acc.get(m, 0) + c
    if domain == F2:
        return tuple(sorted(((m, 1) for m, c in acc.items() if c % 2), reverse=True))
    return tuple(sorted(((m, c) for m, c in acc.items() if c), reverse=True))


class Polynomial:
    """Immutable sparse polynomial over F2 or the integers, grevlex-sorted."""

    __slots__ = ("domain", "num_vars", "terms")

    def __init__(self, domain: str, num_vars: int, terms: Iterable[tuple[int, int]] = ()):
        if domain not in DOMAINS:
            raise ValueError(f"unknown domain {domain!r}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", _normalize(domain, terms))

    @classmethod
    def _raw(cls, domain: str, num_vars: int, terms: _TERMS) -> "Polynomial":
        """Trusted constructor: terms already canonical."""
        p = cls.__new__(cls)
        object.__setattr__(p, "domain", domain)
        object.__setattr__(p, "num_vars", num_vars)
        object.__setattr__(p, "terms", terms)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors
    @classmethod
    def zero(cls, domain: str, num_vars: int) -> "Polynomial":
        return cls(domain, num_vars)

    @classmethod
    def constant(cls, c: int, domain: str, num_vars: int) -> "Polynomial":
        return cls(domain, num_vars, [(MONO_ONE, c)])

    @classmethod
    def one(cls, domain: str, num_vars: int) -> "Polynomial":
        return cls.constant(1, domain, num_vars)

    @classmethod
    def variable(cls, v: int, domain: str, num_vars: int) -> "Polynomial":
        if not 0 <= v < num_vars:
            raise ValueError(f"variable index {v} out of range for {num_vars} variables")
        return cls(domain, num_vars, [(mono_from_indices([v]), 1)])

    @classmethod
    def monomial(cls, m: int, domain: str, num_vars: int, coeff: int = 1) -> "Polynomial":
        return cls(domain, num_vars, [(m, coeff)])

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def leading_term(self) -> tuple[int, int] | None:
        """(monomial, coefficient) of the largest term, or None for 0."""
        return self.terms[0] if self.terms else None

    def leading_monomial(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def total_degree(self) -> int:
        """Degree of the leading term (graded order: the maximal term degree)."""
        return mono_degree(self.terms[0][0]) if self.terms else 0

    def min_degree(self) -> int:
        """Smallest total degree among terms (0 for the zero polynomial)."""
        return mono_degree(self.terms[-1][0]) if self.terms else 0

    def constant_term(self) -> int:
        if self.terms and self.terms[-1][0] == MONO_ONE:
            return self.terms[-1][1]
        return 0

    def _check(self, other: "Polynomial") -> None:
        if self.domain != other.domain or self.num_vars != other.num_vars:
            raise DomainMismatch(
                f"({self.domain},{self.num_vars} vars) vs ({other.domain},{other.num_vars} vars)"
            )

    # arithmetic
    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial(self.domain, self.num_vars, list(self.terms) + list(other.terms))

    def __neg__(self) -> "Polynomial":
        if self.domain == F2:
            return self
        return Polynomial._raw(self.domain, self.num_vars, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict[int, int] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(self.domain, self.num_vars, out.items())

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.domain, self.num_vars, [(m, c * cc) for m, cc in self.terms])

    def mul_monomial(self, m: int, c: int = 1) -> "Polynomial":
        return Polynomial(
            self.domain, self.num_vars, [(mono_mul(m, mm), c * cc) for mm, cc in self.terms]
        )

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.domain, self.num_vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.domain == other.domain
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.num_vars, self.terms))

    def __str__(self) -> str:
        return poly_to_line(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.domain}, {self.num_vars}, {poly_to_line(self)!r})"


def truncate(f: Polynomial, k: int) -> Polynomial:
    """Drop every term of total degree >= k (the image in R modulo m^k)."""
    if k < 0:
        raise ValueError("negative truncation degree")
    kept = tuple((m, c) for m, c in f.terms if mono_degree(m) < k)
    return Polynomial._raw(f.domain, f.num_vars, kept)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


# ---------------------------------------------------------------------------
# 2x2 polynomial matrices (lifting models)

class PolyMatrix2:
    """A 2x2 matrix of integer-coefficient polynomials over one ring."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("PolyMatrix2 needs a 2x2 entry grid")
        first = rows[0][0]
        for row in rows:
            for p in row:
                first._check(p)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix2 is immutable")

    @classmethod
    def identity(cls, domain: str, num_vars: int) -> "PolyMatrix2":
        one = Polynomial.one(domain, num_vars)
        zero = Polynomial.zero(domain, num_vars)
        return cls([[one, zero], [zero, one]])

    def trace(self) -> Polynomial:
        return self.entries[0][0] + self.entries[1][1]

    def __sub__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        return PolyMatrix2(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(2)]
                for i in range(2)
            ]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix2) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)


def mat_mul(a: PolyMatrix2, b: PolyMatrix2) -> PolyMatrix2:
    """Exact 2x2 matrix product."""
    e, f = a.entries, b.entries
    return PolyMatrix2(
        [
            [e[0][0] * f[0][0] + e[0][1] * f[1][0], e[0][0] * f[0][1] + e[0][1] * f[1][1]],
            [e[1][0] * f[0][0] + e[1][1] * f[1][0], e[1][0] * f[0][1] + e[1][1] * f[1][1]],
        ]
    )


def mat_word(
    generator_matrices: Sequence[tuple[PolyMatrix2, PolyMatrix2 | None]],
    word: Iterable[tuple[int, int]],
) -> PolyMatrix2:
    """Evaluate a word of (generator index, exponent +-1) pairs as a product.

    Each generator supplies a matrix and, optionally, an explicit inverse
    witness; a -1 exponent without a witness raises InverseNotAvailable.
    """
    mats = list(generator_matrices)
    if not mats:
        raise ValueError("need at least one generator matrix")
    out = PolyMatrix2.identity(mats[0][0].entries[0][0].domain, mats[0][0].entries[0][0].num_vars)
    for s, e in word:
        if not 0 <= s < len(mats):
            raise ValueError(f"word references generator {s} of {len(mats)}")
        if e == 1:
            out = mat_mul(out, mats[s][0])
        elif e == -1:
            if mats[s][1] is None:
                raise InverseNotAvailable(f"no inverse witness for generator {s}")
            out = mat_mul(out, mats[s][1])
        else:
            raise ValueError("word exponents must be +1 or -1")
    return out


# ---------------------------------------------------------------------------
# canonical text form (used by the Groebner cache)

_TERM_RE = re.compile(r"^(-?\d+)((?:\*x\d+\^\d+)*)$")
_FACTOR_RE = re.compile(r"x(\d+)\^(\d+)")


def poly_to_line(f: Polynomial) -> str:
    """One-line canonical form: terms ``c*x<i>^<e>...`` in descending order."""
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.terms:
        if m == MONO_ONE:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{mono_str(m)}")
    return " + ".join(parts)


def poly_from_line(line: str, domain: str, num_vars: int) -> Polynomial:
    """Parse the canonical one-line form back into a polynomial."""
    line = line.strip()
    if line == "0":
        return Polynomial.zero(domain, num_vars)
    terms = []
    for chunk in line.split(" + "):
        chunk = chunk.strip()
        mt = _TERM_RE.match(chunk)
        if not mt:
            raise ValueError(f"malformed term {chunk!r}")
        c = int(mt.group(1))
        exps: dict[int, int] = {}
        for v, e in _FACTOR_RE.findall(mt.group(2)):
            exps[int(v)] = int(e)
        terms.append((mono_from_exponents(exps), c))
    return Polynomial(domain, num_vars, terms)
