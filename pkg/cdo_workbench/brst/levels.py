"""Levels of a Lie algebra whose restriction to a subalgebra is minus its Killing form.

The relative complex of a subalgebra ``s ⊂ g`` with currents at level ``(,)`` needs
``(,)|_s = -(,)_{s;K}``; for the Borel of sl(n) this singles out the critical level.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from cdo_workbench.helpers.linalg import from_columns, nullspace, solve
from cdo_workbench.helpers.scalars import LEVEL_RING, rational, render_scalar
from cdo_workbench.lie.forms import (
    BilinearForm, SubalgebraSpec, critical_level, form_vector, invariant_form_space, killing_form, restrict_form
)


logger = logging.getLogger(__name__)


class LevelVerdict(Enum):
    def __new__(cls, value: str, description: str = ""):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.description = description
        return obj

    def __str__(self) -> str:
        return self._value_

    NONE = "none", "no level restricts to minus the Killing form"
    UNIQUE = "unique", "exactly one level"
    FAMILY = "family", "an affine family of levels"
    ALL = "all", "every level"


@dataclass
class AdmissibleLevels:
    parent: str
    subalgebra: str
    verdict: LevelVerdict
    level: Optional[BilinearForm] = None
    free_directions: int = 0
    is_critical: bool = False

    def describe(self) -> str:
        if self.verdict is LevelVerdict.UNIQUE:
            suffix = " (critical)" if self.is_critical else ""
            return f"{self.verdict.description}{suffix}: {self.level.rendered_rows()}"
        return self.verdict.description


def admissible_levels(sub: SubalgebraSpec) -> AdmissibleLevels:
    """Solves ``restrict(level) = -Killing(sub)`` over the invariant forms of the parent."""
    parent = sub.parent
    basis = invariant_form_space(parent)
    target = form_vector(-killing_form(sub.algebra))
    size = sub.algebra.dim * (sub.algebra.dim + 1) // 2
    columns = [form_vector(restrict_form(sub, form)) for form in basis]
    matrix = from_columns(columns, size)
    solution = solve(matrix, target)
    if solution is None:
        result = AdmissibleLevels(parent.name, sub.name, LevelVerdict.NONE)
        logger.info(f"No level on {parent.name} restricts to minus the Killing form of {sub.name}")
        return result
    kernel = len(nullspace(matrix))
    level = BilinearForm.zero(parent.dim)
    for k, value in solution.items():
        level = level + basis[k].scale(LEVEL_RING(value))
    if kernel == 0:
        verdict = LevelVerdict.UNIQUE
    elif kernel == len(basis) and not target:
        verdict = LevelVerdict.ALL
    else:
        verdict = LevelVerdict.FAMILY
    result = AdmissibleLevels(
        parent.name, sub.name, verdict,
        level=level,
        free_directions=kernel,
        is_critical=verdict is LevelVerdict.UNIQUE and level == critical_level(parent),
    )
    logger.info(f"Admissible levels of {parent.name} over {sub.name}: {result.describe()}")
    return result


def killing_restriction_ratio(sub: SubalgebraSpec) -> Optional[object]:
    """``r`` with ``Killing(parent)|_sub = r Killing(sub)``, None when not proportional or both vanish."""
    restricted = restrict_form(sub, killing_form(sub.parent))
    own = killing_form(sub.algebra)
    entries = own.entries()
    if not entries:
        return None
    key, value = next(iter(sorted(entries.items())))
    ratio = rational(restricted[key]) / rational(value)
    if restricted != own.scale(LEVEL_RING(ratio)):
        logger.debug(f"Killing forms of {sub.parent.name} and {sub.name} are not proportional")
        return None
    logger.debug(f"Killing of {sub.parent.name} restricts to {render_scalar(LEVEL_RING(ratio))} times Killing of {sub.name}")
    return ratio
