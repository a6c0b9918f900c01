"""Pure-Python reduction kernel over F2.

A polynomial over F2 is a tuple of packed monomials in strictly decreasing
order (every coefficient is 1).  ``F2Store`` keeps the working basis and
answers normal-form queries against it; the compiled kernel in
``psdef._f2speed`` implements the same interface.
"""

from __future__ import annotations

from ..poly import mono_degree, mono_div, mono_divisors, mono_lcm, mono_mul


class F2Store:
    """Working basis for F2 reductions, optionally truncated at degree k."""

    def __init__(self, truncation: int = 0):
        self.trunc = truncation  # 0 means no truncation
        self.polys: list[tuple[int, ...]] = []
        self.lt_map: dict[int, int] = {}

    def size(self) -> int:
        return len(self.polys)

    def get(self, i: int) -> tuple[int, ...]:
        return self.polys[i]

    def lt(self, i: int) -> int:
        return self.polys[i][0]

    def add(self, terms) -> int:
        """Register a nonzero, already-reduced polynomial; returns its index."""
        terms = tuple(terms)
        idx = len(self.polys)
        self.polys.append(terms)
        self.lt_map.setdefault(terms[0], idx)
        return idx

    def reducer(self, m: int) -> int:
        """Index of the first basis element whose leading monomial divides m."""
        best = -1
        for d in mono_divisors(m):
            idx = self.lt_map.get(d, -1)
            if idx >= 0 and (best < 0 or idx < best):
                best = idx
        return best

    def _reduce_set(self, work: set[int]) -> tuple[int, ...]:
        k = self.trunc
        out: list[int] = []
        while work:
            m = max(work)
            idx = self.reducer(m)
            if idx < 0:
                work.discard(m)
                out.append(m)
                continue
            g = self.polys[idx]
            cof = mono_div(m, g[0])
            if cof == 0:
                work.symmetric_difference_update(g)
            else:
                for t in g:
                    mm = mono_mul(cof, t)
                    if k and mono_degree(mm) >= k:
                        continue
                    if mm in work:
                        work.discard(mm)
                    else:
                        work.add(mm)
        return tuple(out)

    def nf(self, terms) -> tuple[int, ...]:
        """Full normal form of a polynomial against the store."""
        k = self.trunc
        if k:
            work = {m for m in terms if mono_degree(m) < k}
        else:
            work = set(terms)
        return self._reduce_set(work)

    def spoly_nf(self, i: int, j: int) -> tuple[int, ...]:
        """Normal form of the S-polynomial of basis elements i and j."""
        f, g = self.polys[i], self.polys[j]
        L = mono_lcm(f[0], g[0])
        uf, ug = mono_div(L, f[0]), mono_div(L, g[0])
        k = self.trunc
        work: set[int] = set()
        for src, cof in ((f, uf), (g, ug)):
            for t in src:
                mm = mono_mul(cof, t)
                if k and mono_degree(mm) >= k:
                    continue
                if mm in work:
                    work.discard(mm)
                else:
                    work.add(mm)
        return self._reduce_set(work)

    def mul_mono_nf(self, terms, u: int) -> tuple[int, ...]:
        """Normal form of truncate(u * p) for a polynomial p given by terms."""
        k = self.trunc
        work: set[int] = set()
        for t in terms:
            mm = mono_mul(u, t)
            if k and mono_degree(mm) >= k:
                continue
            work.add(mm)
        return self._reduce_set(work)
