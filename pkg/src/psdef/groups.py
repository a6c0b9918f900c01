"""Exact finite-group arithmetic: tables, builders, classes, quotients.

Groups are realized by full multiplication tables over elements 0..n-1 with
element 0 always the identity.  The builtin families used downstream (cyclic,
abelian 2-groups, dihedral 2-groups, and the order-32 extraspecial central
product of two dihedral groups of order 8) come with presentations whose
relators are stored as words of (generator index, +-1 exponent) pairs.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidParameter,
    InvalidPresentation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
    NotSubgroup,
)

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mult[g][h]`` is the index of g*h, element 0 is the identity and ``inv``
    maps each element to its inverse.  ``generator_names`` (when present) maps
    word-level generator names to element indices.
    """

    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int = 0
    labels: tuple[str, ...] | None = None
    name: str = ""
    generator_names: tuple[tuple[str, int], ...] = ()

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, x: int, g: int) -> int:
        """x g x^-1."""
        return self.mult[self.mult[x][g]][self.inv[x]]

    def commutator(self, g: int, h: int) -> int:
        """g^-1 h^-1 g h."""
        return self.mult[self.mult[self.inv[g]][self.inv[h]]][self.mult[g][h]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            n += 1
        return n

    def power(self, g: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv[g], -e)
        x = 0
        for _ in range(e):
            x = self.mult[x][g]
        return x

    def generator_map(self) -> dict[str, int]:
        return dict(self.generator_names)

    def evaluate_word(self, word: Iterable[tuple[int, int]], generators: Sequence[int]) -> int:
        """Multiply out a word of (generator position, exponent) pairs."""
        x = 0
        for s, e in word:
            x = self.mult[x][self.power(generators[s], e)]
        return x

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    def is_abelian(self) -> bool:
        return all(
            self.mult[a][b] == self.mult[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def center(self) -> tuple[int, ...]:
        return tuple(
            g
            for g in range(self.order)
            if all(self.mult[g][h] == self.mult[h][g] for h in range(self.order))
        )

    def exponent(self) -> int:
        e = 1
        for g in range(self.order):
            o = self.element_order(g)
            x = e
            while x % o:
                x += e
            e = x
        return e


@dataclass(frozen=True)
class GroupPresentation:
    """Generators and relator words; relators use exponents +-1 only."""

    num_generators: int
    relators: tuple[Word, ...]
    name: str = ""
    generator_names: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.generator_names or tuple(f"g{i + 1}" for i in range(self.num_generators))
        object.__setattr__(self, "generator_names", names)
        if len(names) != self.num_generators:
            raise InvalidPresentation("generator name count does not match generator count")
        for w in self.relators:
            if not w:
                raise InvalidPresentation("empty relator word")
            for s, e in w:
                if not 0 <= s < self.num_generators:
                    raise InvalidPresentation(f"relator references generator {s}")
                if e not in (1, -1):
                    raise InvalidPresentation("relator exponents must be +1 or -1")


@dataclass(frozen=True)
class ClassStructure:
    """Conjugacy classes, commutator subgroup and abelianization of a group."""

    class_of: tuple[int, ...]
    class_reps: tuple[int, ...]
    commutator_subgroup: tuple[int, ...]
    abelianization: FiniteGroup
    projection: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)


def expand_relator(pairs: Iterable[tuple[int, int]]) -> Word:
    """Flatten (generator, exponent) pairs with arbitrary exponents to +-1 steps."""
    out: list[tuple[int, int]] = []
    for s, e in pairs:
        sign = 1 if e > 0 else -1
        out.extend([(s, sign)] * abs(e))
    return tuple(out)


# ---------------------------------------------------------------------------
# construction and validation

def build_from_table(
    table: Sequence[Sequence[int]],
    *,
    labels: Sequence[str] | None = None,
    name: str = "",
    generator_names: Mapping[str, int] | None = None,
) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    The identity is relocated to index 0 when necessary; associativity is
    checked exhaustively (group orders here never exceed 64).
    """
    n = len(table)
    if n == 0:
        raise InvalidParameter("empty table")
    rows = [tuple(int(x) for x in row) for row in table]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidParameter(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise InvalidParameter(f"table entry {x} out of range")

    identity = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("table has no two-sided identity")

    if identity != 0:
        perm = list(range(n))
        perm[0], perm[identity] = identity, 0  # new index -> old index
        inv_perm = perm
        rows = [
            tuple(inv_perm.index(rows[perm[i]][perm[j]]) for j in range(n)) for i in range(n)
        ]
        if labels is not None:
            labels = [labels[perm[i]] for i in range(n)]
        if generator_names is not None:
            generator_names = {k: inv_perm.index(v) for k, v in generator_names.items()}

    inv = []
    for g in range(n):
        h = next((h for h in range(n) if rows[g][h] == 0 and rows[h][g] == 0), None)
        if h is None:
            raise NoInverse(g)
        inv.append(h)

    for i in range(n):
        for j in range(n):
            ij = rows[i][j]
            for k in range(n):
                if rows[ij][k] != rows[i][rows[j][k]]:
                    raise NotAssociative(i, j, k)

    return FiniteGroup(
        order=n,
        mult=tuple(rows),
        inv=tuple(inv),
        labels=tuple(labels) if labels is not None else None,
        name=name,
        generator_names=tuple(sorted((generator_names or {}).items())),
    )


def trivial_group() -> FiniteGroup:
    return build_from_table([[0]], labels=["1"], name="1")


def cyclic(n: int, *, name: str = "") -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"cyclic order must be positive, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return build_from_table(
        table,
        labels=labels,
        name=name or f"Z/{n}",
        generator_names={"g": 1 % n},
    )


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


def direct_product(a: FiniteGroup, b: FiniteGroup, *, name: str = "") -> FiniteGroup:
    """Direct product with indices packed as i*|B| + j."""
    n = a.order * b.order
    table = [
        [
            a.mult[i1][i2] * b.order + b.mult[j1][j2]
            for i2 in range(a.order)
            for j2 in range(b.order)
        ]
        for i1 in range(a.order)
        for j1 in range(b.order)
    ]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [
            f"({a.labels[i]},{b.labels[j]})" for i in range(a.order) for j in range(b.order)
        ]
    return build_from_table(table, labels=labels, name=name or f"{a.name}x{b.name}")


def abelian_2group(cyclic_orders: Sequence[int], *, name: str = "") -> FiniteGroup:
    """Direct product of cyclic 2-groups; rejects factors that are not powers of 2."""
    orders = list(cyclic_orders)
    if not orders:
        raise InvalidParameter("need at least one cyclic factor")
    for o in orders:
        if not _is_power_of_two(o):
            raise InvalidParameter(f"cyclic order {o} is not a power of 2")
    group = cyclic(orders[0])
    for o in orders[1:]:
        group = direct_product(group, cyclic(o))
    gens: dict[str, int] = {}
    stride = group.order
    for i, o in enumerate(orders):
        stride //= o
        gens[f"g{i + 1}"] = stride if o > 1 else 0
    label = "x".join(f"Z/{o}" for o in orders)
    return FiniteGroup(
        order=group.order,
        mult=group.mult,
        inv=group.inv,
        labels=None,
        name=name or label,
        generator_names=tuple(sorted(gens.items())),
    )


def dihedral(m: int) -> tuple[FiniteGroup, GroupPresentation]:
    """Dihedral group of order 2m with presentation <r, s | r^m, s^2, (sr)^2>.

    Elements 0..m-1 are the rotations r^i, elements m..2m-1 the reflections
    r^i s.  Values of m that are not powers of two are accepted with a warning
    since the downstream theory is stated for 2-groups only.
    """
    if m < 2:
        raise InvalidParameter(f"dihedral parameter must be >= 2, got {m}")
    if not _is_power_of_two(m):
        warnings.warn(f"dihedral({m}): m is not a power of 2", stacklevel=2)

    def enc(i: int, f: int) -> int:
        return f * m + (i % m)

    table = []
    for x in range(2 * m):
        i, f = x % m, x // m
        row = []
        for y in range(2 * m):
            j, g = y % m, y // m
            row.append(enc(i - j if f else i + j, f ^ g))
        table.append(row)
    labels = ["1"] + [f"r^{i}" if i > 1 else "r" for i in range(1, m)]
    labels += ["s"] + [f"r^{i}*s" if i > 1 else "r*s" for i in range(1, m)]
    group = build_from_table(
        table,
        labels=labels,
        name=f"D{2 * m}",
        generator_names={"r": 1, "s": m},
    )
    pres = GroupPresentation(
        num_generators=2,
        relators=(
            expand_relator([(0, m)]),
            expand_relator([(1, 2)]),
            expand_relator([(1, 1), (0, 1), (1, 1), (0, 1)]),
        ),
        name=f"D{2 * m}",
        generator_names=("r", "s"),
    )
    return group, pres


def quotient_by_normal(
    G: FiniteGroup, N: Iterable[int], *, name: str = ""
) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup; returns the coset group and projection."""
    nset = set(N)
    if 0 not in nset:
        raise NotSubgroup("subgroup must contain the identity")
    for a in nset:
        if G.inv[a] not in nset:
            raise NotSubgroup(f"subgroup not closed under inverse at {a}")
        for b in nset:
            if G.mult[a][b] not in nset:
                raise NotSubgroup(f"subgroup not closed under product at ({a},{b})")
    for g in range(G.order):
        for a in nset:
            if G.conjugate(g, a) not in nset:
                raise NotNormal(f"conjugate of {a} by {g} leaves the subgroup")

    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] != -1:
            continue
        idx = len(reps)
        reps.append(g)
        for a in nset:
            coset_of[G.mult[g][a]] = idx
    # identity coset is discovered first, so index 0 is the identity
    table = [
        [coset_of[G.mult[reps[i]][reps[j]]] for j in range(len(reps))] for i in range(len(reps))
    ]
    labels = [G.label(r) for r in reps] if G.labels is not None else None
    quotient = build_from_table(table, labels=labels, name=name or f"{G.name}/N")
    return quotient, tuple(coset_of)


def class_structure(G: FiniteGroup) -> ClassStructure:
    """Conjugacy classes, commutator subgroup and abelianization by enumeration."""
    class_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if class_of[g] != -1:
            continue
        idx = len(reps)
        reps.append(g)
        for x in range(G.order):
            class_of[G.conjugate(x, g)] = idx

    commutators = {G.commutator(g, h) for g in range(G.order) for h in range(G.order)}
    closure = set(commutators) | {0}
    frontier = list(closure)
    while frontier:
        a = frontier.pop()
        for b in list(closure):
            for c in (G.mult[a][b], G.mult[b][a]):
                if c not in closure:
                    closure.add(c)
                    frontier.append(c)

    ab, proj = quotient_by_normal(G, closure, name=f"{G.name}^ab")
    return ClassStructure(
        class_of=tuple(class_of),
        class_reps=tuple(reps),
        commutator_subgroup=tuple(sorted(closure)),
        abelianization=ab,
        projection=proj,
    )


def _word_labels(G: FiniteGroup, generators: Mapping[str, int]) -> tuple[str, ...]:
    """Shortest-word labels for every element, found by breadth-first search."""
    labels = {0: "1"}
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for nm, ge in generators.items():
                h = G.mult[g][ge]
                if h not in labels:
                    labels[h] = nm if g == 0 else f"{labels[g]}*{nm}"
                    nxt.append(h)
        frontier = nxt
    if len(labels) != G.order:
        raise InvalidParameter("generators do not generate the group")
    return tuple(labels[g] for g in range(G.order))


def extraspecial_32_plus() -> tuple[FiniteGroup, GroupPresentation]:
    """The extraspecial group of order 32 of plus type.

    Built as the central product of two dihedral groups of order 8 (the
    quotient of their direct product by the order-2 subgroup identifying the
    central rotations), with generators a, b from the first factor and c, d
    from the second.  The presentation records the defining relations
    a^4 = b^2 = d^2 = 1, c^2 = a^2, bab = a^-1, ac = ca, ad = da, bc = cb,
    bd = db, dcd = a^2 c, and construction verifies that every relator
    evaluates to the identity.
    """
    d8a, _ = dihedral(4)
    d8b, _ = dihedral(4)
    prod = direct_product(d8a, d8b, name="D8xD8")
    # generators inside the product: a = (r,1), b = (s,1), c = (1,r), d = (1,s)
    a0, b0 = 1 * 8 + 0, 4 * 8 + 0
    c0, d0 = 0 * 8 + 1, 0 * 8 + 4
    a2 = prod.mult[a0][a0]
    c2 = prod.mult[c0][c0]
    central = prod.mult[a2][prod.inv[c2]]
    quotient, proj = quotient_by_normal(prod, {0, central}, name="2^{1+4}_+")

    gens = {"a": proj[a0], "b": proj[b0], "c": proj[c0], "d": proj[d0]}
    labels = _word_labels(quotient, gens)
    group = FiniteGroup(
        order=quotient.order,
        mult=quotient.mult,
        inv=quotient.inv,
        labels=labels,
        name="2^{1+4}_+",
        generator_names=tuple(sorted(gens.items())),
    )

    A, B, C, D = 0, 1, 2, 3
    pres = GroupPresentation(
        num_generators=4,
        relators=(
            expand_relator([(A, 4)]),
            expand_relator([(B, 2)]),
            expand_relator([(D, 2)]),
            expand_relator([(C, 2), (A, -2)]),
            expand_relator([(B, 1), (A, 1), (B, 1), (A, 1)]),
            expand_relator([(A, 1), (C, 1), (A, -1), (C, -1)]),
            expand_relator([(A, 1), (D, 1), (A, -1), (D, -1)]),
            expand_relator([(B, 1), (C, 1), (B, -1), (C, -1)]),
            expand_relator([(B, 1), (D, 1), (B, -1), (D, -1)]),
            expand_relator([(D, 1), (C, 1), (D, 1), (C, -1), (A, -2)]),
        ),
        name="2^{1+4}_+",
        generator_names=("a", "b", "c", "d"),
    )

    gen_elements = [gens[nm] for nm in pres.generator_names]
    for w in pres.relators:
        if group.evaluate_word(w, gen_elements) != 0:
            raise InvalidPresentation("relator does not hold in the constructed group")
    return group, pres


# ---------------------------------------------------------------------------
# group words

_WORD_TOKEN = re.compile(r"([A-Za-z]\w*)(?:\^(-?\d+))?")


def parse_word(text: str) -> list[tuple[str, int]]:
    """Parse words like ``a^2*b`` or ``a*a*b^-1`` into (name, exponent) pairs."""
    out: list[tuple[str, int]] = []
    text = text.strip()
    if not text or text == "1":
        return out
    for chunk in text.split("*"):
        chunk = chunk.strip()
        mt = _WORD_TOKEN.fullmatch(chunk)
        if not mt:
            raise InvalidParameter(f"malformed word component {chunk!r}")
        out.append((mt.group(1), int(mt.group(2) or 1)))
    return out


def evaluate_element_word(G: FiniteGroup, text: str) -> int:
    """Evaluate a word written in the group's named generators."""
    gens = G.generator_map()
    if not gens:
        raise InvalidParameter(f"group {G.name!r} has no named generators")
    x = 0
    for nm, e in parse_word(text):
        if nm not in gens:
            raise InvalidParameter(f"unknown generator {nm!r}; have {sorted(gens)}")
        x = G.mult[x][G.power(gens[nm], e)]
    return x


def presentation_word(pres: GroupPresentation, text: str) -> Word:
    """Parse a word in presentation generators into (index, +-1) steps."""
    index = {nm: i for i, nm in enumerate(pres.generator_names)}
    pairs = []
    for nm, e in parse_word(text):
        if nm not in index:
            raise InvalidParameter(f"unknown generator {nm!r}; have {list(index)}")
        pairs.append((index[nm], e))
    return expand_relator(pairs)


# ---------------------------------------------------------------------------
# group specs (CLI names and JSON files)

_DIHEDRAL_RE = re.compile(r"^dihedral:(\d+)$")
_ABELIAN_RE = re.compile(r"^abelian:(\d+(?:x\d+)*)$")
_CYCLIC_RE = re.compile(r"^cyclic:(\d+)$")


def builtin_group(spec: str) -> tuple[FiniteGroup, GroupPresentation | None]:
    """Resolve a builtin CLI name to a group (and presentation when it has one)."""
    s = spec.strip()
    if s == "extraspecial32":
        return extraspecial_32_plus()
    mt = _DIHEDRAL_RE.match(s)
    if mt:
        return dihedral(int(mt.group(1)))
    mt = _ABELIAN_RE.match(s)
    if mt:
        return abelian_2group([int(x) for x in mt.group(1).split("x")]), None
    mt = _CYCLIC_RE.match(s)
    if mt:
        return cyclic(int(mt.group(1))), None
    raise InvalidParameter(
        f"unknown builtin group {spec!r}; expected extraspecial32, dihedral:<m>, "
        "abelian:<o1>x<o2>x..., or cyclic:<n>"
    )


def group_from_json(payload: Mapping) -> tuple[FiniteGroup, GroupPresentation | None]:
    """Build a group from the JSON group-spec format."""
    kind = payload.get("kind")
    name = payload.get("name", "")
    if kind == "table":
        table = payload.get("table")
        if not isinstance(table, list):
            raise InvalidParameter("table spec requires a 'table' array")
        return build_from_table(table, name=name), None
    if kind == "builtin":
        builtin = payload.get("builtin") or {}
        family = builtin.get("family")
        params = list(builtin.get("params") or [])
        if family == "cyclic":
            return cyclic(params[0]), None
        if family == "abelian":
            return abelian_2group(params), None
        if family == "dihedral":
            return dihedral(params[0])
        if family == "extraspecial32":
            return extraspecial_32_plus()
        raise InvalidParameter(f"unknown builtin family {family!r}")
    raise InvalidParameter(f"unknown group-spec kind {kind!r}")


def resolve_group_spec(spec: str) -> tuple[FiniteGroup, GroupPresentation | None]:
    """Resolve a CLI --group value: a builtin name or a JSON spec file path."""
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        return group_from_json(json.loads(path.read_text(encoding="utf-8")))
    return builtin_group(spec)
