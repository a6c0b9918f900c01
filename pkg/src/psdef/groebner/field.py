"""Buchberger engine over F2, with optional degree truncation.

A run with truncation degree k computes a basis of I + m^k that is complete
below degree k, without ever materializing the (huge) monomial generating set
of m^k.  Two ingredients make that equivalence hold:

* S-pairs whose lcm has degree >= k are discarded and every reduction result
  is truncated at k (their high parts lie in m^k);
* interactions between basis elements and m^k are closed off explicitly: for
  a basis element b with leading degree d, every product u*b with deg(u) =
  k - d collapses modulo m^k to u * low(b), where low(b) is the part of b of
  degree < d.  The driver sweeps exactly these products, organized through an
  echelon basis of the low parts per leading degree so each independent low
  is swept once.

Without the sweep, ideals such as <x^2 + x> at k = 3 would be mishandled:
x = x^3 - x*(x^2 + x) + x^2 ... lies in I + m^3 but no plain S-pair finds it.
The Macaulay oracle cross-checks this equivalence in the test suite.
"""

from __future__ import annotations

import heapq
import random
import time

from ..errors import ResourceLimit
from ..poly import (
    MONO_ONE,
    Polynomial,
    mono_degree,
    mono_divisors,
    mono_from_indices,
    mono_indices,
    mono_lcm,
    monomials_of_degree,
)
from .kernel import kernel_name, make_store
from .types import GBLimits, GroebnerBasis, IdealBasis

_PAIR_SHIFT_I = 17
_PAIR_SHIFT_L = 34
_PAIR_MASK = (1 << 17) - 1


class _Run:
    """State of one Buchberger run over F2."""

    def __init__(self, num_vars: int, k: int, limits: GBLimits, rng, pure):
        self.num_vars = num_vars
        self.k = k  # 0 = untruncated
        self.limits = limits
        self.rng = rng
        self.store = make_store(k, pure)
        self.pairs: list = []
        self.pending_low: list[int] = []
        self.echelons: dict[int, dict[int, frozenset]] = {}
        self.deadline = None
        if limits.timeout_s is not None:
            self.deadline = time.monotonic() + limits.timeout_s
        self.stop_reason: str | None = None
        self.reductions = 0
        self._mono_cache: dict[int, tuple[int, ...]] = {}

    # -- limits ------------------------------------------------------------
    def over_limit(self) -> bool:
        if self.stop_reason:
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.stop_reason = "timeout"
            return True
        if self.limits.max_basis is not None and self.store.size() > self.limits.max_basis:
            self.stop_reason = "max_basis"
            return True
        return False

    # -- pair management ----------------------------------------------------
    def push_pairs(self, t: int) -> None:
        store = self.store
        lt_t = store.lt(t)
        deg_t = mono_degree(lt_t)
        fresh: dict[int, int] = {}
        for i in range(t):
            lt_i = store.lt(i)
            L = mono_lcm(lt_t, lt_i)
            dL = mono_degree(L)
            if self.k and dL >= self.k:
                continue
            if dL == deg_t + mono_degree(lt_i):
                continue  # coprime leading monomials: S-polynomial reduces to 0
            fresh.setdefault(L, i)  # one pair per lcm among the new pairs
        for L, i in fresh.items():
            if self.rng is None:
                heapq.heappush(self.pairs, (L << _PAIR_SHIFT_L) | (t << _PAIR_SHIFT_I) | i)
            else:
                heapq.heappush(self.pairs, (self.rng.random(), L, t, i))

    def insert(self, terms) -> int:
        t = self.store.add(terms)
        self.push_pairs(t)
        self.pending_low.append(t)
        return t

    def drain_pairs(self) -> None:
        pairs = self.pairs
        store = self.store
        n = 0
        while pairs:
            n += 1
            if n % 64 == 0 and self.over_limit():
                return
            item = heapq.heappop(pairs)
            if self.rng is None:
                t = (item >> _PAIR_SHIFT_I) & _PAIR_MASK
                i = item & _PAIR_MASK
            else:
                _, _, t, i = item
            r = store.spoly_nf(t, i)
            self.reductions += 1
            if r:
                self.insert(r)

    # -- boundary closure against m^k ----------------------------------------
    def _echelon_insert(self, d: int, row: set[int]) -> frozenset | None:
        table = self.echelons.setdefault(d, {})
        while row:
            pivot = max(row)
            other = table.get(pivot)
            if other is None:
                fr = frozenset(row)
                table[pivot] = fr
                return fr
            row ^= other
        return None

    def _degree_monomials(self, j: int) -> tuple[int, ...]:
        cached = self._mono_cache.get(j)
        if cached is None:
            cached = tuple(monomials_of_degree(self.num_vars, j))
            self._mono_cache[j] = cached
        return cached

    def sweep_boundary(self) -> bool:
        """Close interactions with m^k; returns True when the basis grew."""
        store = self.store
        rows: list[tuple[int, frozenset]] = []
        for idx in self.pending_low:
            terms = store.get(idx)
            d = mono_degree(terms[0])
            low = {m for m in terms if mono_degree(m) < d}
            if not low:
                continue
            fr = self._echelon_insert(d, low)
            if fr is not None:
                rows.append((d, fr))
        self.pending_low = []
        grew = False
        for d, fr in sorted(rows, key=lambda x: (x[0], sorted(x[1], reverse=True))):
            row_terms = tuple(sorted(fr, reverse=True))
            n = 0
            for u in self._degree_monomials(self.k - d):
                n += 1
                if n % 256 == 0 and self.over_limit():
                    return grew
                r = store.mul_mono_nf(row_terms, u)
                self.reductions += 1
                if r:
                    self.insert(r)
                    grew = True
        return grew

    def run(self, seed_terms: list[tuple[int, ...]]) -> None:
        for terms in seed_terms:
            if self.over_limit():
                return
            r = self.store.nf(terms)
            if r:
                self.insert(r)
        while True:
            self.drain_pairs()
            if self.stop_reason or not self.k:
                return
            grew = self.sweep_boundary()
            if self.stop_reason:
                return
            if not grew and not self.pairs:
                return


def _interreduce(polys: list[tuple[int, ...]], k: int, pure) -> list[tuple[int, ...]]:
    """Minimalize and tail-reduce; canonical output sorted by descending LT."""
    work = [tuple(t) for t in polys if t]
    while True:
        work.sort(key=lambda t: (t[0], t))
        keeper = make_store(k, pure)
        dropped: list[tuple[int, ...]] = []
        for t in work:
            if keeper.size() and keeper.reducer(t[0]) >= 0:
                dropped.append(t)
            else:
                keeper.add(t)
        kept = [keeper.get(i) for i in range(keeper.size())]
        reducer = make_store(k, pure)
        for t in kept:
            reducer.add(t)
        tail_reduced = [(t[0],) + reducer.nf(t[1:]) for t in kept]
        extra = []
        for t in dropped:
            r = reducer.nf(t)
            if r:
                extra.append(r)
        if not extra:
            return sorted(tail_reduced, reverse=True)
        work = tail_reduced + extra


def _to_terms(p: Polynomial) -> tuple[int, ...]:
    return tuple(m for m, _ in p.terms)


def _to_poly(terms, num_vars: int) -> Polynomial:
    return Polynomial._raw("F2", num_vars, tuple((m, 1) for m in terms))


def buchberger_field(
    ideal: IdealBasis,
    truncation: int | None = None,
    *,
    limits: GBLimits | None = None,
    shuffle_seed: int | None = None,
    pure: bool | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis over F2, degree-truncated when requested.

    ``shuffle_seed`` replaces the normal (smallest-lcm-first) pair selection
    with a seeded random order; the reduced result must not depend on it.
    """
    if ideal.domain != "F2":
        raise ValueError("buchberger_field computes over F2")
    if truncation is not None and truncation < 1:
        raise ValueError("truncation degree must be >= 1")
    limits = limits or GBLimits()
    k = truncation or 0
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    seeds = sorted(_to_terms(g) for g in ideal.generators)
    if k:
        seeds = [tuple(m for m in t if mono_degree(m) < k) for t in seeds]
    seeds = [t for t in seeds if t]

    run = _Run(ideal.num_vars, k, limits, rng, pure)
    run.run(seeds)
    reduced = _interreduce([run.store.get(i) for i in range(run.store.size())], k, pure)
    return GroebnerBasis(
        domain="F2",
        num_vars=ideal.num_vars,
        basis=tuple(_to_poly(t, ideal.num_vars) for t in reduced),
        truncation_degree=truncation,
        reduced=True,
        partial=run.stop_reason is not None,
        limit_reason=run.stop_reason,
        meta={
            "kernel": kernel_name(pure, k),
            "reductions": run.reductions,
            "provenance": ideal.provenance,
        },
    )


def normal_form_field(f: Polynomial, basis: GroebnerBasis, pure: bool | None = None) -> Polynomial:
    """Deterministic full normal form of f against a basis over F2."""
    k = basis.truncation_degree or 0
    store = make_store(k, pure)
    for p in basis.basis:
        store.add(_to_terms(p))
    return _to_poly(store.nf(_to_terms(f)), basis.num_vars)


def standard_monomial_count(basis: GroebnerBasis, bound: int | None = None) -> int:
    """Count monomials of degree < bound divisible by no basis leading monomial.

    For a basis truncated at k this is dim R/(m^k + I) and the bound must be
    k itself: leading terms of I + m^k below k do not describe I + m^j for
    j < k (the smaller power adds leading terms of its own).  Untruncated
    bases admit any bound.
    """
    k = bound if bound is not None else basis.truncation_degree
    if k is None:
        raise ValueError("need a degree bound for counting standard monomials")
    if basis.truncation_degree is not None and k != basis.truncation_degree:
        raise ValueError("bound must equal the basis truncation degree")
    if k <= 0:
        return 0
    lts = set(basis.leading_monomials())

    def reducible(m: int) -> bool:
        return any(d in lts for d in mono_divisors(m))

    if reducible(MONO_ONE):
        return 0
    count = 1
    frontier: list[tuple[int, int]] = [(MONO_ONE, basis.num_vars - 1)]
    degree = 0
    while frontier and degree + 1 < k:
        degree += 1
        nxt: list[tuple[int, int]] = []
        for m, max_var in frontier:
            base = mono_indices(m)
            for v in range(max_var + 1):
                child = mono_from_indices(base + (v,))
                if reducible(child):
                    continue
                count += 1
                nxt.append((child, v))
        frontier = nxt
    return count


def raise_if_partial(basis: GroebnerBasis) -> None:
    if basis.partial:
        raise ResourceLimit(
            basis.limit_reason or "unknown",
            partial=basis,
            diagnostics={"basis_size": len(basis.basis)},
        )
