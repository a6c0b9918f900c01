"""Strong Groebner bases over the integers.

The engine closes the basis under both S-polynomials (cancelling leading
terms through the lcm of monomials and of coefficients) and GCD-polynomials
(a Bezout combination realizing gcd of the leading coefficients on the lcm
monomial), so leading terms of basis elements strongly divide the leading
term of every ideal element.  Reduction is strong: a term c*m is rewritten by
a basis element with lead cg*mg whenever mg | m and floor(c / cg) != 0,
leaving coefficients in [0, cg).

Affirmative membership answers (normal form 0) are certificates even from a
partial basis; negative answers require a complete one.  Reductions can
record traces, and with ``track_combinations`` every basis element carries
its expression over the original generators so certificates can be expanded
and re-verified.
"""

from __future__ import annotations

import heapq
import math
import time

from ..poly import Polynomial, mono_degree, mono_div, mono_divides, mono_divisors, mono_lcm, mono_mul
from .types import GBLimits, GroebnerBasis, IdealBasis

Terms = tuple[tuple[int, int], ...]

_PAIR_I = 17
_PAIR_T = 34
_PAIR_KIND = 35
_IDX_MASK = (1 << 17) - 1

_MAX_DIVISOR_PROBES = 256


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = x*a + y*b."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _divisor_count(m: int) -> int:
    n = 1
    from ..poly import mono_exponents

    for e in mono_exponents(m).values():
        n *= e + 1
        if n > _MAX_DIVISOR_PROBES:
            return n
    return n


class ZEngine:
    """Mutable state of one strong Buchberger run."""

    def __init__(self, num_vars: int, limits: GBLimits, track_combinations: bool = False):
        self.num_vars = num_vars
        self.limits = limits
        self.basis: list[Terms] = []
        self.by_mono: dict[int, list[int]] = {}
        self.pairs: list[int] = []
        self.combos: list[dict[int, dict[int, int]]] | None = [] if track_combinations else None
        self.dropped_pairs = 0
        self.stop_reason: str | None = None
        self.reductions = 0
        self.deadline = None
        if limits.timeout_s is not None:
            self.deadline = time.monotonic() + limits.timeout_s

    # -- bookkeeping ---------------------------------------------------------
    def over_limit(self) -> bool:
        if self.stop_reason:
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.stop_reason = "timeout"
            return True
        if self.limits.max_basis is not None and len(self.basis) > self.limits.max_basis:
            self.stop_reason = "max_basis"
            return True
        return False

    def max_lead_degree(self) -> int:
        return max((mono_degree(t[0][0]) for t in self.basis), default=0)

    # -- reduction -----------------------------------------------------------
    def _reducer(self, m: int, c: int, skip: int = -1) -> int:
        """First basis index whose lead strongly reduces the term c*m."""
        if _divisor_count(m) <= _MAX_DIVISOR_PROBES:
            best = -1
            for d in mono_divisors(m):
                for idx in self.by_mono.get(d, ()):
                    if idx == skip or (best >= 0 and idx >= best):
                        continue
                    if c // self.basis[idx][0][1] != 0:
                        best = idx
            return best
        dm = mono_degree(m)
        for idx, t in enumerate(self.basis):
            if idx == skip:
                continue
            lm, lc = t[0]
            if mono_degree(lm) <= dm and c // lc != 0 and mono_divides(lm, m):
                return idx
        return -1

    def nf(self, terms, combo=None, trace=None, skip: int = -1) -> Terms:
        """Full strong normal form; optionally updates a combination/trace."""
        work: dict[int, int] = {}
        for m, c in terms:
            work[m] = work.get(m, 0) + c
        heap = [-m for m, c in work.items() if c]
        heapq.heapify(heap)
        out: dict[int, int] = {}
        while heap:
            m = -heapq.heappop(heap)
            c = work.pop(m, 0)
            if c == 0:
                continue
            while c:
                idx = self._reducer(m, c, skip)
                if idx < 0:
                    break
                gm, gc = self.basis[idx][0]
                q = c // gc
                c -= q * gc
                cof = mono_div(m, gm)
                for tm, tc in self.basis[idx][1:]:
                    mm = mono_mul(cof, tm)
                    prev = work.get(mm, 0)
                    val = prev - q * tc
                    if val:
                        work[mm] = val
                        if prev == 0:
                            heapq.heappush(heap, -mm)
                    else:
                        work.pop(mm, None)
                if trace is not None:
                    trace.append((idx, cof, q))
                if combo is not None and self.combos is not None:
                    _combo_axpy(combo, self.combos[idx], cof, -q)
            if c:
                out[m] = c
        self.reductions += 1
        return tuple(sorted(out.items(), reverse=True))

    # -- pair management -------------------------------------------------------
    def _push_pairs(self, t: int) -> None:
        mt, ct = self.basis[t][0]
        cap = self.limits.max_degree
        for i in range(t):
            mi, ci = self.basis[i][0]
            L = mono_lcm(mt, mi)
            if cap is not None and mono_degree(L) > cap:
                self.dropped_pairs += 1
                continue
            heapq.heappush(self.pairs, (L << _PAIR_KIND) | (1 << (_PAIR_KIND - 1)) | (t << _PAIR_I) | i)
            if ct % ci and ci % ct:
                heapq.heappush(self.pairs, (L << _PAIR_KIND) | (t << _PAIR_I) | i)

    def insert(self, terms: Terms, combo=None) -> int:
        if terms[0][1] < 0:
            terms = tuple((m, -c) for m, c in terms)
            if combo is not None:
                combo = {g: {m: -c for m, c in p.items()} for g, p in combo.items()}
        idx = len(self.basis)
        self.basis.append(terms)
        self.by_mono.setdefault(terms[0][0], []).append(idx)
        if self.combos is not None:
            self.combos.append(combo if combo is not None else {})
        self._push_pairs(idx)
        return idx

    def _pair_element(self, key: int) -> tuple[Terms, dict | None]:
        L = key >> _PAIR_KIND
        is_spoly = bool((key >> (_PAIR_KIND - 1)) & 1)
        t = (key >> _PAIR_I) & _IDX_MASK
        i = key & _IDX_MASK
        (mt, ct), (mi, ci) = self.basis[t][0], self.basis[i][0]
        ut, ui = mono_div(L, mt), mono_div(L, mi)
        if is_spoly:
            g = math.gcd(ct, ci)
            qt, qi = ci // g, -(ct // g)
        else:
            _, qt, qi = _ext_gcd(ct, ci)
        work: dict[int, int] = {}
        for (src, cof, q) in ((self.basis[t], ut, qt), (self.basis[i], ui, qi)):
            for m, c in src:
                mm = mono_mul(cof, m)
                work[mm] = work.get(mm, 0) + q * c
        combo = None
        if self.combos is not None:
            combo = {}
            _combo_axpy(combo, self.combos[t], ut, qt)
            _combo_axpy(combo, self.combos[i], ui, qi)
        terms = tuple(sorted(((m, c) for m, c in work.items() if c), reverse=True))
        return terms, combo

    def seed(self, generators: list[Terms]) -> None:
        for gi, terms in enumerate(generators):
            if self.over_limit():
                return
            combo = {gi: {0: 1}} if self.combos is not None else None
            r = self.nf(terms, combo=combo)
            if r:
                self.insert(r, combo)

    def run(self) -> None:
        n = 0
        while self.pairs:
            n += 1
            if n % 16 == 0 and self.over_limit():
                return
            key = heapq.heappop(self.pairs)
            terms, combo = self._pair_element(key)
            if not terms:
                continue
            r = self.nf(terms, combo=combo)
            if r:
                self.insert(r, combo)


def _combo_axpy(dst: dict, src: dict, cof: int, coeff: int) -> None:
    """dst += coeff * x^cof * src for generator-indexed multiplier maps."""
    if coeff == 0:
        return
    for g, poly in src.items():
        d = dst.setdefault(g, {})
        for m, c in poly.items():
            mm = mono_mul(cof, m)
            val = d.get(mm, 0) + coeff * c
            if val:
                d[mm] = val
            else:
                d.pop(mm, None)
        if not d:
            dst.pop(g, None)


def _interreduce_z(engine: ZEngine) -> tuple[list[Terms], list | None]:
    """Canonical form: dedupe, repeated full mutual reduction, canonical sort."""
    items: list[tuple[Terms, dict | None]] = []
    seen = set()
    combos = engine.combos
    for i, t in enumerate(engine.basis):
        if t not in seen:
            seen.add(t)
            items.append((t, combos[i] if combos is not None else None))

    for _ in range(1000):
        items.sort(key=lambda x: (x[0][0], x[0]))
        ref = ZEngine(engine.num_vars, GBLimits(), track_combinations=False)
        ref.combos = None
        for t, _c in items:
            ref.basis.append(t)
            ref.by_mono.setdefault(t[0][0], []).append(len(ref.basis) - 1)
        changed = False
        nxt: list[tuple[Terms, dict | None]] = []
        for idx, (t, combo) in enumerate(items):
            trace: list = []
            r = ref.nf(t, trace=trace, skip=idx)
            if r != t:
                changed = True
                if combo is not None:
                    for j, cof, q in trace:
                        _combo_axpy(combo, items[j][1] or {}, cof, -q)
            if r:
                if r[0][1] < 0:
                    r = tuple((m, -c) for m, c in r)
                    if combo is not None:
                        combo = {g: {m: -c for m, c in p.items()} for g, p in combo.items()}
                nxt.append((r, combo))
        items = nxt
        if not changed:
            break
    items.sort(key=lambda x: (x[0][0], x[0]), reverse=True)
    basis = [t for t, _ in items]
    out_combos = [c for _, c in items] if combos is not None else None
    return basis, out_combos


def _terms_of(p: Polynomial) -> Terms:
    return p.terms


def _poly_of(terms: Terms, num_vars: int) -> Polynomial:
    return Polynomial._raw("ZZ", num_vars, tuple(terms))


def strong_buchberger_int(
    ideal: IdealBasis,
    *,
    limits: GBLimits | None = None,
    track_combinations: bool = False,
) -> GroebnerBasis:
    """Strong Groebner basis over the integers; partial when limits bite.

    ``max_degree`` caps the lcm degree of processed pairs; any dropped pair
    marks the result partial.  With ``track_combinations`` the result's meta
    carries, per basis element, its multiplier polynomials over the original
    generators.
    """
    if ideal.domain != "ZZ":
        raise ValueError("strong_buchberger_int computes over the integers")
    limits = limits or GBLimits()
    engine = ZEngine(ideal.num_vars, limits, track_combinations)
    engine.seed(sorted(_terms_of(g) for g in ideal.generators))
    engine.run()
    basis, combos = _interreduce_z(engine)
    partial = engine.stop_reason is not None or engine.dropped_pairs > 0
    reason = engine.stop_reason or ("degree-capped" if engine.dropped_pairs else None)
    meta = {
        "kernel": "python-zz",
        "reductions": engine.reductions,
        "dropped_pairs": engine.dropped_pairs,
        "max_lead_degree": max((mono_degree(t[0][0]) for t in basis), default=0),
        "provenance": ideal.provenance,
    }
    if combos is not None:
        meta["combinations"] = combos
    return GroebnerBasis(
        domain="ZZ",
        num_vars=ideal.num_vars,
        basis=tuple(_poly_of(t, ideal.num_vars) for t in basis),
        truncation_degree=None,
        reduced=True,
        partial=partial,
        limit_reason=reason,
        meta=meta,
    )


def normal_form_int(
    f: Polynomial, basis: GroebnerBasis, trace: list | None = None
) -> Polynomial:
    """Strong normal form of f against a basis over the integers."""
    engine = ZEngine(basis.num_vars, GBLimits(), track_combinations=False)
    for t in basis.basis:
        terms = _terms_of(t)
        engine.basis.append(terms)
        engine.by_mono.setdefault(terms[0][0], []).append(len(engine.basis) - 1)
    return _poly_of(engine.nf(_terms_of(f), trace=trace), basis.num_vars)


def expand_trace(
    trace: list[tuple[int, int, int]], basis: GroebnerBasis
) -> dict[int, Polynomial]:
    """Multipliers per basis index: f = sum(q * x^cof * basis[idx]) + nf."""
    out: dict[int, Polynomial] = {}
    for idx, cof, q in trace:
        p = Polynomial.monomial(cof, "ZZ", basis.num_vars, q)
        out[idx] = out.get(idx, Polynomial.zero("ZZ", basis.num_vars)) + p
    return out
