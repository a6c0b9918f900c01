"""Independent Macaulay-matrix dimension oracle over F2.

Builds the linear span of all products (monomial * generator) truncated at
degree k inside the space of polynomials of degree < k and returns the
codimension, which is dim of R/(m^k + I).  This is deliberately a different
route from the Buchberger engine so the two can cross-validate each other.
"""

from __future__ import annotations

import itertools

from ..errors import TooLarge
from ..poly import mono_degree, mono_from_indices, mono_mul
from .types import IdealBasis

MAX_ROWS = 2_000_000


def _monomials_below(num_vars: int, k: int) -> list[int]:
    out = [0]
    for d in range(1, k):
        out.extend(
            mono_from_indices(c)
            for c in itertools.combinations_with_replacement(range(num_vars), d)
        )
    return out


def macaulay_oracle_dim(ideal: IdealBasis, k: int) -> int:
    """dim over F2 of R/(m^k + I) by rank computation on the Macaulay matrix."""
    if ideal.domain != "F2":
        raise ValueError("the Macaulay oracle works over F2")
    if k < 0:
        raise ValueError("negative truncation degree")
    if k == 0:
        return 0

    columns = _monomials_below(ideal.num_vars, k)
    col_index = {m: i for i, m in enumerate(columns)}

    gens = []
    total_rows = 0
    for g in ideal.generators:
        terms = [m for m, _ in g.terms if mono_degree(m) < k]
        if not terms:
            continue
        mindeg = min(mono_degree(m) for m in terms)
        room = k - mindeg
        count = sum(
            1
            for d in range(room)
            for _ in itertools.combinations_with_replacement(range(ideal.num_vars), d)
        )
        total_rows += count
        if total_rows > MAX_ROWS:
            raise TooLarge(f"Macaulay matrix needs more than {MAX_ROWS} rows")
        gens.append((terms, room))

    pivots: dict[int, int] = {}
    for terms, room in gens:
        for d in range(room):
            for combo in itertools.combinations_with_replacement(range(ideal.num_vars), d):
                u = mono_from_indices(combo)
                row = 0
                for m in terms:
                    mm = mono_mul(u, m)
                    if mono_degree(mm) < k:
                        row ^= 1 << col_index[mm]
                while row:
                    p = row.bit_length() - 1
                    other = pivots.get(p)
                    if other is None:
                        pivots[p] = row
                        break
                    row ^= other
    return len(columns) - len(pivots)
