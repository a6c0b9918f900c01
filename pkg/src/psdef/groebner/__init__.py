"""Groebner engine: F2 (with degree truncation) and strong bases over Z."""

from __future__ import annotations

from ..errors import DomainMismatch
from ..poly import Polynomial, truncate
from .cache import basis_key, load_basis, load_cached, save_basis, store_cached
from .field import (
    buchberger_field,
    normal_form_field,
    raise_if_partial,
    standard_monomial_count,
)
from .integers import expand_trace, normal_form_int, strong_buchberger_int
from .kernel import compiled_available, kernel_name
from .macaulay import macaulay_oracle_dim
from .types import GBLimits, GroebnerBasis, IdealBasis, Membership

__all__ = [
    "GBLimits",
    "GroebnerBasis",
    "IdealBasis",
    "Membership",
    "basis_key",
    "buchberger_field",
    "compiled_available",
    "expand_trace",
    "is_member",
    "kernel_name",
    "load_basis",
    "load_cached",
    "macaulay_oracle_dim",
    "normal_form",
    "normal_form_int",
    "save_basis",
    "standard_monomial_count",
    "store_cached",
    "strong_buchberger_int",
]


def normal_form(f: Polynomial, basis: GroebnerBasis, trace: list | None = None) -> Polynomial:
    """Normal form of f against a basis, truncating first when the basis is.

    Deterministic: the largest reducible term is always rewritten by the
    first eligible basis element in insertion order.
    """
    if f.domain != basis.domain or f.num_vars != basis.num_vars:
        raise DomainMismatch(
            f"polynomial ring ({f.domain},{f.num_vars}) vs basis ring "
            f"({basis.domain},{basis.num_vars})"
        )
    if basis.truncation_degree is not None:
        f = truncate(f, basis.truncation_degree)
    if basis.domain == "F2":
        return normal_form_field(f, basis)
    return normal_form_int(f, basis, trace=trace)


def is_member(f: Polynomial, basis: GroebnerBasis, trace: list | None = None) -> Membership:
    """Ideal membership (modulo m^k for truncated bases).

    Yes always certifies membership; with a partial basis a nonzero normal
    form proves nothing, so the answer degrades to Unknown.
    """
    nf = normal_form(f, basis, trace=trace)
    if nf.is_zero():
        return Membership.YES
    if basis.partial:
        return Membership.UNKNOWN
    return Membership.NO
