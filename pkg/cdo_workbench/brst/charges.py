"""BRST charge, its square and the ghost realization of currents at the Killing level."""
import logging
from itertools import combinations

from sympy import QQ

from cdo_workbench.fock.elements import FieldElement, ModeCalculus, OpeCheckFailure
from cdo_workbench.fock.fields import ghost_system
from cdo_workbench.fock.space import FockSpace
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.forms import killing_form


logger = logging.getLogger(__name__)


def ghost(name: str) -> str:
    return f"phi_{name}"


def antighost(name: str) -> str:
    return f"phi*_{name}"


def brst_charge(algebra: LieAlgebraPresentation) -> FieldElement:
    """``D = -1/2 c^{ij}_p :φ_p φ*_i φ*_j:``, collected on ``i < j``."""
    names = algebra.basis_names
    terms = {}
    for i, j in combinations(range(algebra.dim), 2):
        for p, c in algebra.bracket_of(i, j).items():
            key = ((ghost(names[p]), 0), (antighost(names[i]), 0), (antighost(names[j]), 0))
            terms[key] = terms.get(key, 0) - c
    return FieldElement(terms)


def ghost_currents(algebra: LieAlgebraPresentation) -> list[FieldElement]:
    """``a_i ↦ c^{ip}_q :φ_q φ*_p:``."""
    names = algebra.basis_names
    images = []
    for i in range(algebra.dim):
        terms = {}
        for p in range(algebra.dim):
            for q, c in algebra.bracket_of(i, p).items():
                key = ((ghost(names[q]), 0), (antighost(names[p]), 0))
                terms[key] = terms.get(key, 0) + c
        images.append(FieldElement(terms))
    return images


def killing_square(algebra: LieAlgebraPresentation) -> FieldElement:
    """``1/2 (a_i, a_j)_K :∂φ*_i φ*_j:``, whose zero mode is the square of the BRST differential."""
    killing = killing_form(algebra)
    names = algebra.basis_names
    terms = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            value = killing[i, j]
            if value:
                terms[((antighost(names[i]), 1), (antighost(names[j]), 0))] = value * QQ(1, 2)
    return FieldElement(terms)


def ghost_space(algebra: LieAlgebraPresentation, max_weight: int) -> FockSpace:
    return FockSpace(ghost_system(algebra), max_weight=max_weight)


def check_ghost_currents(algebra: LieAlgebraPresentation, max_weight: int = 2) -> list[FieldElement]:
    """Ghost currents with their OPE checked against the Killing level.

    :raises OpeCheckFailure: naming the first pair whose products differ
    """
    images = ghost_currents(algebra)
    calculus = ModeCalculus(ghost_space(algebra, max_weight))
    killing = killing_form(algebra)
    names = algebra.basis_names
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            bracket = FieldElement()
            for p, c in algebra.bracket_of(i, j).items():
                bracket = bracket + images[p].scale(c)
            expected = {}
            if not bracket.is_zero():
                expected[0] = bracket
            if killing[i, j]:
                expected[1] = FieldElement.identity().scale(killing[i, j])
            if not calculus.ope_check(images[i], images[j], expected):
                raise OpeCheckFailure(f"Ghost currents of {algebra.name} fail the current OPE at ({names[i]}, {names[j]})")
    logger.info(f"Ghost currents of {algebra.name} reproduce the Killing level")
    return images
