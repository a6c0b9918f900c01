"""Pseudodeformation ideals of finite 2-groups over F2.

For a group G the ring has one variable tau_g for the shifted trace of each
element (residually the trace is 2, i.e. 0 mod 2) and one variable delta_g
for the shifted determinant D(g) - 1.  The ideal transcribes the axioms of a
degree-2 determinant: normalization at the identity, trace symmetry
T(gh) = T(hg), multiplicativity of D, and the trace identity
D(g) T(g^-1 h) - T(g) T(h) + T(gh) = 0, all expanded at T = tau, D = 1 +
delta with coefficients in F2.

Graded dimensions dim R/(m^k + I) are computed by truncated Groebner runs;
the associated Hilbert series coefficients are their first differences, and
the run stops as soon as the dimensions provably stabilize.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimit
from .groups import FiniteGroup, class_structure
from .groebner import (
    GBLimits,
    GroebnerBasis,
    IdealBasis,
    Membership,
    buchberger_field,
    is_member,
    load_cached,
    standard_monomial_count,
    store_cached,
)
from .poly import Polynomial, mono_from_indices


@dataclass(frozen=True)
class PsVariableMap:
    """Variable layout of the pseudodeformation ring of a group.

    ``tau[g]`` and ``delta[g]`` give the variable index of the shifted trace
    and shifted determinant of element g; collapsed maps (one trace variable
    per conjugacy class) are produced by the optimization flag and are not
    injective on tau.
    """

    group: FiniteGroup
    tau: tuple[int, ...]
    delta: tuple[int, ...]
    num_vars: int

    def tau_poly(self, g: int) -> Polynomial:
        return Polynomial.variable(self.tau[g], "F2", self.num_vars)


@dataclass(frozen=True)
class HilbertProfile:
    """Graded dimensions dims[k] = dim R/(m^(k+1) + I) and their differences."""

    dims: tuple[int, ...]
    series_coeffs: tuple[int, ...]
    stabilized: bool
    total_dim: int | None

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "series": list(self.series_coeffs),
            "stabilized": self.stabilized,
            "total": self.total_dim,
        }


def build_psdef_ideal(
    G: FiniteGroup, *, collapse_tau_classes: bool = False
) -> tuple[PsVariableMap, IdealBasis]:
    """Generators of the pseudodeformation ideal of G over F2.

    With ``collapse_tau_classes`` the trace variables are identified along
    conjugacy classes up front (the linear relations of the trace-symmetry
    family make this an equivalence); all computed dimensions must match the
    plain construction.
    """
    n = G.order
    if collapse_tau_classes:
        cs = class_structure(G)
        tau = tuple(cs.class_of[g] for g in range(n))
        base = cs.num_classes
    else:
        tau = tuple(range(n))
        base = n
    delta = tuple(base + g for g in range(n))
    num_vars = base + n
    vm = PsVariableMap(group=G, tau=tau, delta=delta, num_vars=num_vars)

    def tvar(g: int) -> int:
        return mono_from_indices([tau[g]])

    def dvar(g: int) -> int:
        return mono_from_indices([delta[g]])

    seen: set[tuple] = set()
    gens: list[Polynomial] = []

    def emit(terms: list[int]) -> None:
        acc: set[int] = set()
        for m in terms:
            acc.symmetric_difference_update((m,))
        key = tuple(sorted(acc, reverse=True))
        if key and key not in seen:
            seen.add(key)
            gens.append(Polynomial._raw("F2", num_vars, tuple((m, 1) for m in key)))

    emit([tvar(0)])
    emit([dvar(0)])
    for g in range(n):
        for h in range(n):
            gh, hg = G.mult[g][h], G.mult[h][g]
            # trace symmetry
            emit([tvar(gh), tvar(hg)])
            # multiplicativity of the determinant at D = 1 + delta
            emit([
                dvar(gh),
                mono_from_indices([delta[g], delta[h]]),
                dvar(g),
                dvar(h),
            ])
            # trace identity at D = 1 + delta, coefficients mod 2
            ginv_h = G.mult[G.inv[g]][h]
            emit([
                mono_from_indices([delta[g], tau[ginv_h]]),
                tvar(ginv_h),
                mono_from_indices([tau[g], tau[h]]),
                tvar(gh),
            ])

    ideal = IdealBasis("F2", num_vars, gens, provenance=f"psdef:{G.name or G.order}")
    return vm, ideal


def _truncated_basis(
    ideal: IdealBasis,
    k: int,
    limits: GBLimits | None,
    cache_dir=None,
    pure: bool | None = None,
) -> GroebnerBasis:
    cached = load_cached(cache_dir, ideal, k)
    if cached is not None:
        return cached
    basis = buchberger_field(ideal, truncation=k, limits=limits, pure=pure)
    if not basis.partial:
        store_cached(cache_dir, ideal, k, basis)
    return basis


def hilbert_profile(
    G: FiniteGroup,
    k_max: int = 10,
    *,
    limits: GBLimits | None = None,
    cache_dir=None,
    collapse_tau_classes: bool = False,
    pure: bool | None = None,
) -> HilbertProfile:
    """Graded dimensions of R^ps/(2) for G, stopping at stabilization.

    Runs truncated bases at k = 1, 2, ...; equal counts at two consecutive
    levels mean the associated graded algebra has no components of degree
    >= k (it is generated in degree 1), so the dimensions are final and the
    extra level is not reported.  Raises ResourceLimit with the partial
    profile attached when a run is cut short.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    _, ideal = build_psdef_ideal(G, collapse_tau_classes=collapse_tau_classes)
    dims: list[int] = []
    for k in range(1, k_max + 2):
        basis = _truncated_basis(ideal, k, limits, cache_dir, pure)
        if basis.partial:
            raise ResourceLimit(
                basis.limit_reason or "unknown",
                partial=HilbertProfile(
                    dims=tuple(dims), series_coeffs=_diffs(dims), stabilized=False, total_dim=None
                ),
                diagnostics={"k": k, "basis_size": len(basis.basis)},
            )
        dims.append(standard_monomial_count(basis))
        if len(dims) >= 2 and dims[-1] == dims[-2]:
            dims.pop()
            return HilbertProfile(tuple(dims), _diffs(dims), True, dims[-1])
    dims = dims[: k_max]
    return HilbertProfile(tuple(dims), _diffs(dims), False, None)


def _diffs(dims: list[int]) -> tuple[int, ...]:
    out = []
    prev = 0
    for d in dims:
        out.append(d - prev)
        prev = d
    return tuple(out)


def d_of_ps(
    G: FiniteGroup,
    *,
    k_max: int = 10,
    limits: GBLimits | None = None,
    cache_dir=None,
    pure: bool | None = None,
) -> int:
    """Stabilized total dimension of R^ps/(2) (minimal generator count)."""
    profile = hilbert_profile(G, k_max, limits=limits, cache_dir=cache_dir, pure=pure)
    if not profile.stabilized or profile.total_dim is None:
        raise ResourceLimit(
            f"dimensions did not stabilize within k_max={k_max}", partial=profile
        )
    return profile.total_dim


def witness_membership(
    G: FiniteGroup,
    g: int,
    k: int,
    *,
    limits: GBLimits | None = None,
    cache_dir=None,
    pure: bool | None = None,
) -> Membership:
    """Whether the shifted trace of element g lies in I + m^k over F2."""
    if not 0 <= g < G.order:
        raise ValueError(f"element {g} out of range")
    if k < 1:
        raise ValueError("k must be >= 1")
    vm, ideal = build_psdef_ideal(G)
    basis = _truncated_basis(ideal, k, limits, cache_dir, pure)
    return is_member(vm.tau_poly(g), basis)
