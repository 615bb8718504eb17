"""Generating fields of free-field vertex superalgebras: bc ghosts, βγ pairs and currents."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.forms import BilinearForm


logger = logging.getLogger(__name__)

Torus = tuple[int, ...]


class FieldKind(Enum):
    def __new__(cls, value: str, odd: bool, weight: int, charge: int):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.odd = odd
        obj.weight = weight
        obj.charge = charge
        return obj

    def __str__(self) -> str:
        return self._value_

    GHOST = "phi", True, 1, -1
    ANTIGHOST = "phi*", True, 0, 1
    BETA = "beta", False, 1, 0
    GAMMA = "gamma", False, 0, 0
    CURRENT = "current", False, 1, 0


@dataclass(frozen=True)
class FieldSpec:
    """One generating field.

    :param partner: the field it pairs with through a first order pole
    :param sector: index of the current sector for currents
    :param basis_index: basis element of the sector's algebra
    """

    name: str
    kind: FieldKind
    partner: Optional[str] = None
    torus: Torus = ()
    sector: Optional[int] = None
    basis_index: Optional[int] = None

    @property
    def odd(self) -> bool:
        return self.kind.odd

    @property
    def weight(self) -> int:
        return self.kind.weight

    @property
    def charge(self) -> int:
        return self.kind.charge


@dataclass
class CurrentSector:
    """Currents ``a_i`` with ``a_i(z)a_j(w) ~ (a_i,a_j)/(z-w)^2 + [a_i,a_j](w)/(z-w)``."""

    algebra: LieAlgebraPresentation
    level: BilinearForm
    prefix: str = "J"

    def field_name(self, i: int) -> str:
        return f"{self.prefix}_{self.algebra.basis_names[i]}"


def _negated(torus: Torus) -> Torus:
    return tuple(-x for x in torus)


def unit_vector(k: int, length: int) -> Torus:
    return tuple(1 if i == k else 0 for i in range(length))


def algebra_torus(algebra: LieAlgebraPresentation) -> list[Torus]:
    """Root weights of the basis, zero vectors when the algebra carries none."""
    if algebra.weights:
        return [tuple(w) for w in algebra.weights]
    return [() for _ in range(algebra.dim)]


def bc_system(names: Sequence[str], torus: Optional[Sequence[Torus]] = None) -> list[FieldSpec]:
    """Ghosts ``phi_x`` (odd, weight 1) and ``phi*_x`` (odd, weight 0) with ``phi_x(z)phi*_x(w) ~ 1/(z-w)``.

    ``phi_x`` carries ``torus[k]`` and ``phi*_x`` its negative.
    """
    torus = list(torus) if torus is not None else [() for _ in names]
    fields = []
    for name, weight in zip(names, torus):
        ghost, antighost = f"phi_{name}", f"phi*_{name}"
        fields.append(FieldSpec(ghost, FieldKind.GHOST, partner=antighost, torus=tuple(weight)))
        fields.append(FieldSpec(antighost, FieldKind.ANTIGHOST, partner=ghost, torus=_negated(tuple(weight))))
    return fields


def ghost_system(algebra: LieAlgebraPresentation, torus: Optional[Sequence[Torus]] = None) -> list[FieldSpec]:
    return bc_system(algebra.basis_names, torus if torus is not None else algebra_torus(algebra))


def betagamma_system(count: int, prefix: str = "") -> list[FieldSpec]:
    """``beta_k`` (weight 1) and ``gamma_k`` (weight 0) with ``beta_k(z)gamma_k(w) ~ 1/(z-w)``.

    ``gamma_k`` carries ``+e_k``, ``beta_k`` carries ``-e_k``.
    """
    fields = []
    for k in range(count):
        e_k = unit_vector(k, count)
        beta, gamma = f"beta{prefix}_{k + 1}", f"gamma{prefix}_{k + 1}"
        fields.append(FieldSpec(beta, FieldKind.BETA, partner=gamma, torus=_negated(e_k)))
        fields.append(FieldSpec(gamma, FieldKind.GAMMA, partner=beta, torus=e_k))
    return fields


def current_fields(sector: CurrentSector, sector_index: int, torus: Optional[Sequence[Torus]] = None) -> list[FieldSpec]:
    weights = list(torus) if torus is not None else algebra_torus(sector.algebra)
    return [
        FieldSpec(sector.field_name(i), FieldKind.CURRENT, torus=tuple(weights[i]), sector=sector_index, basis_index=i)
        for i in range(sector.algebra.dim)
    ]
