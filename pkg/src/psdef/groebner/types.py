"""Shared value types for the Groebner engine."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import DomainMismatch
from ..poly import DOMAINS, MonomialOrder, Polynomial


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GBLimits:
    """Resource limits for basis computations; None disables a limit."""

    timeout_s: float | None = None
    max_basis: int | None = None
    max_degree: int | None = None
    jobs: int = 1

    def scaled(self, **kw) -> "GBLimits":
        data = {
            "timeout_s": self.timeout_s,
            "max_basis": self.max_basis,
            "max_degree": self.max_degree,
            "jobs": self.jobs,
        }
        data.update(kw)
        return GBLimits(**data)


@dataclass(frozen=True)
class IdealBasis:
    """A list of generators in one polynomial ring, with a provenance tag."""

    domain: str
    num_vars: int
    generators: tuple[Polynomial, ...]
    provenance: str = ""

    def __init__(self, domain: str, num_vars: int, generators: Iterable[Polynomial], provenance: str = ""):
        if domain not in DOMAINS:
            raise ValueError(f"unknown domain {domain!r}")
        gens = []
        for g in generators:
            if g.domain != domain or g.num_vars != num_vars:
                raise DomainMismatch(
                    f"generator ring ({g.domain},{g.num_vars}) does not match ideal ring "
                    f"({domain},{num_vars})"
                )
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "provenance", provenance)

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder("grevlex", self.num_vars)


@dataclass(frozen=True)
class GroebnerBasis:
    """A (possibly degree-truncated, possibly partial) Groebner basis.

    With ``truncation_degree = k`` the basis describes the ideal I + m^k and
    is only meaningful below degree k.  ``partial`` marks bases cut short by a
    resource limit: affirmative membership answers (normal form 0) remain
    valid, negative ones do not.
    """

    domain: str
    num_vars: int
    basis: tuple[Polynomial, ...]
    truncation_degree: int | None = None
    reduced: bool = False
    partial: bool = False
    limit_reason: str | None = None
    meta: dict = field(default_factory=dict)

    def leading_monomials(self) -> tuple[int, ...]:
        return tuple(p.leading_monomial() for p in self.basis)
