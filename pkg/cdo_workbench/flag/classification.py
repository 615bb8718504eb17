"""Existence and classification of chiral differential operators on G and its homogeneous spaces."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from cdo_workbench._errors import InputError
from cdo_workbench.brst.levels import AdmissibleLevels, LevelVerdict, admissible_levels, killing_restriction_ratio
from cdo_workbench.flag.chern import QuadraticClass, ch2_class
from cdo_workbench.flag.roots import RootSystem, build_root_system
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.builtins import builtin_subalgebra
from cdo_workbench.lie.forms import invariant_form_space


logger = logging.getLogger(__name__)


class SpaceKind(Enum):
    def __new__(cls, value: str, subalgebra: Optional[str] = None):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.subalgebra = subalgebra
        return obj

    def __str__(self) -> str:
        return self._value_

    GROUP = "group"
    UNIPOTENT_QUOTIENT = "G/N", "nilradical"
    BOREL_QUOTIENT = "G/B", "borel"
    PARABOLIC_QUOTIENT = "G/P", "parabolic"


@dataclass
class ExistenceReport:
    space: SpaceKind
    algebra: str
    verdict: str
    statement: str
    classes_dimension: Optional[int] = None
    subset: tuple[int, ...] = ()
    ch2: Optional[QuadraticClass] = None
    levels: Optional[AdmissibleLevels] = None
    killing_ratio: Optional[object] = None
    notes: list[str] = field(default_factory=list)
    corroborated: bool = True


def _root_system(algebra: LieAlgebraPresentation) -> RootSystem:
    realization = algebra.realization
    if realization is None or not realization.is_full:
        raise InputError(f"Homogeneous spaces are available for builtin sl(n) only, not {algebra.name}")
    return build_root_system("A", realization.size - 1)


def _classes_dimension(algebra: LieAlgebraPresentation) -> int:
    return len(invariant_form_space(algebra))


def existence_report(space: SpaceKind, algebra: LieAlgebraPresentation, parabolic: Optional[Sequence[int]] = None) -> ExistenceReport:
    """Classification record for cdo's on the group or on ``G/N``, ``G/B``, ``G/P``.

    :param parabolic: 1-based simple roots in the Levi of ``P``; the last simple root by default
    """
    if space is SpaceKind.GROUP:
        dimension = _classes_dimension(algebra)
        report = ExistenceReport(
            space, algebra.name, "torsor",
            f"isomorphism classes form a torsor over the invariant forms of {algebra.name}, "
            f"parameterized by {dimension} level parameter(s)",
            classes_dimension=dimension,
        )
        logger.info(f"{algebra.name} group: {report.statement}")
        return report

    rs = _root_system(algebra)
    if space is SpaceKind.UNIPOTENT_QUOTIENT:
        dimension = _classes_dimension(algebra)
        levels = admissible_levels(builtin_subalgebra(algebra, "nilradical"))
        report = ExistenceReport(
            space, algebra.name, "torsor",
            f"classes on G/N are in bijection with the classes on the group, "
            f"parameterized by {dimension} level parameter(s)",
            classes_dimension=dimension,
            levels=levels,
            corroborated=levels.verdict is LevelVerdict.ALL,
        )
        report.notes.append("the Killing form restricts to zero on the nilradical, so every level passes the relative gate")
    elif space is SpaceKind.BOREL_QUOTIENT:
        sub = builtin_subalgebra(algebra, "borel")
        ch2 = ch2_class(rs, ())
        levels = admissible_levels(sub)
        report = ExistenceReport(
            space, algebra.name, "unique",
            "a cdo on G/B exists and is unique up to unique isomorphism",
            ch2=ch2,
            levels=levels,
            killing_ratio=killing_restriction_ratio(sub),
            corroborated=ch2.vanishes and levels.verdict is LevelVerdict.UNIQUE and levels.is_critical,
        )
        report.notes.append("the relative complex over the Borel is defined at the critical level only")
    else:
        subset = tuple(sorted(parabolic)) if parabolic else (rs.rank,)
        rs.check_subset(subset)
        if len(subset) >= rs.rank:
            raise InputError(f"The parabolic {list(subset)} of {algebra.name} is the whole group")
        sub = builtin_subalgebra(algebra, "parabolic", subset)
        ch2 = ch2_class(rs, subset)
        levels = admissible_levels(sub)
        report = ExistenceReport(
            space, algebra.name, "nonempty" if ch2.vanishes else "empty",
            f"there is {'a' if ch2.vanishes else 'no'} cdo over G/P for P given by {list(subset)}",
            subset=subset,
            ch2=ch2,
            levels=levels,
            corroborated=(not ch2.vanishes) == (levels.verdict is LevelVerdict.NONE),
        )
        report.notes.append(f"ch2 verified by exact linear algebra for {rs.name}")
        if levels.verdict is LevelVerdict.NONE:
            report.notes.append("no level restricts to minus the Killing form of the parabolic")
    logger.info(f"{algebra.name} {space}: {report.verdict}, corroborated: {report.corroborated}")
    return report
