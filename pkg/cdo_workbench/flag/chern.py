"""Degree four classes on G/P in the Borel presentation.

``H*(G/P)`` is ``Sym(h*)^{W_P}`` modulo the ideal of positive degree ``W``-invariants. For a simple
type there are no linear invariants, so a quadratic class vanishes exactly when it lies in
``Sym²(h*)^W``. The tangent bundle has Chern roots the negative roots outside the Levi, which
makes its ``ch₂`` the class of ``Σ α²`` over those roots.
"""
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from cdo_workbench.flag.roots import Root, RootSystem
from cdo_workbench.helpers.linalg import from_columns, in_span, nullspace


logger = logging.getLogger(__name__)


def quadratic_ring(rs: RootSystem):
    """Polynomials in the simple roots ``x1 … xr`` over ``QQ``."""
    return ring([f"x{k}" for k in range(1, rs.rank + 1)], QQ)[0]


def _monomials(rank: int) -> list[tuple[int, ...]]:
    result = []
    for a, b in combinations_with_replacement(range(rank), 2):
        exponents = [0] * rank
        exponents[a] += 1
        exponents[b] += 1
        result.append(tuple(exponents))
    return result


def root_form(poly_ring, root: Sequence[int]) -> PolyElement:
    return sum((c * x for c, x in zip(root, poly_ring.gens)), poly_ring.zero)


def _reflected(rs: RootSystem, poly_ring, quadratic: PolyElement, k: int) -> PolyElement:
    """``s_k`` acting on ``h*``: ``x_j -> x_j - <α_j, α_k^∨> x_k``."""
    gens = poly_ring.gens
    images = [(gens[j], gens[j] - rs.cartan[j][k] * gens[k]) for j in range(rs.rank)]
    return quadratic.compose(images)


def _coordinates(quadratic: PolyElement, monomials: list[tuple[int, ...]]) -> dict[int, object]:
    position = {m: i for i, m in enumerate(monomials)}
    return {position[m]: c for m, c in quadratic.terms() if c}


def _generators(rs: RootSystem, subset: Optional[Sequence[int]]) -> list[int]:
    if subset is None:
        return list(range(rs.rank))
    rs.check_subset(subset)
    return [s - 1 for s in subset]


def invariant_quadratics(rs: RootSystem, subset: Optional[Sequence[int]] = None) -> list[PolyElement]:
    """Basis of quadratics fixed by the reflections in ``subset`` (1-based; None for all of ``W``)."""
    poly_ring = quadratic_ring(rs)
    monomials = _monomials(rs.rank)
    generators = _generators(rs, subset)
    size = len(monomials)
    columns = []
    for exponents in monomials:
        monomial = poly_ring({exponents: QQ.one})
        column: dict[int, object] = {}
        for g, k in enumerate(generators):
            for i, c in _coordinates(_reflected(rs, poly_ring, monomial, k) - monomial, monomials).items():
                column[g * size + i] = c
        columns.append(column)
    if not generators:
        kernel = [[QQ.one if i == j else QQ.zero for j in range(size)] for i in range(size)]
    else:
        kernel = nullspace(from_columns(columns, len(generators) * size))
    basis = [poly_ring({monomials[i]: v for i, v in enumerate(vector) if v}) for vector in kernel]
    logger.debug(f"Invariant quadratics of {rs.name} under {[k + 1 for k in generators]}: dimension {len(basis)}")
    return basis


def is_invariant(rs: RootSystem, quadratic: PolyElement, subset: Optional[Sequence[int]] = None) -> bool:
    poly_ring = quadratic.ring
    return all(_reflected(rs, poly_ring, quadratic, k) == quadratic for k in _generators(rs, subset))


def root_square_sum(rs: RootSystem, roots: Sequence[Root]) -> PolyElement:
    poly_ring = quadratic_ring(rs)
    return sum((root_form(poly_ring, r) ** 2 for r in roots), poly_ring.zero)


@dataclass
class QuadraticClass:
    """``ch₂`` of the tangent bundle of ``G/P`` for the parabolic of ``subset``."""

    root_system: str
    subset: tuple[int, ...]
    quadratic: PolyElement
    tangent_roots: list[Root]
    vanishes: bool

    def symmetric_matrix(self) -> list[list[object]]:
        """Gram matrix of the quadratic in simple-root coordinates."""
        rank = len(self.quadratic.ring.gens)
        rows = [[QQ.zero] * rank for _ in range(rank)]
        for exponents, c in self.quadratic.terms():
            indices = [i for i, e in enumerate(exponents) for _ in range(e)]
            a, b = indices
            if a == b:
                rows[a][a] += c
            else:
                rows[a][b] += c / 2
                rows[b][a] += c / 2
        return rows

    @property
    def verdict(self) -> str:
        return "zero" if self.vanishes else "nonzero"


def ch2_class(rs: RootSystem, subset: Sequence[int] = ()) -> QuadraticClass:
    """``Σ α²`` over the negative roots outside the Levi of the parabolic given by ``subset``."""
    rs.check_subset(subset)
    levi = {tuple(-c for c in r) for r in rs.levi_roots(subset)}
    tangent = [r for r in rs.negative_roots if r not in levi]
    quadratic = root_square_sum(rs, tangent)
    monomials = _monomials(rs.rank)
    invariants = [_coordinates(q, monomials) for q in invariant_quadratics(rs)]
    vanishes = in_span(invariants, _coordinates(quadratic, monomials), len(monomials))
    result = QuadraticClass(rs.name, tuple(sorted(subset)), quadratic, tangent, vanishes)
    logger.info(f"ch2 of {rs.name}/P{list(result.subset)}: {result.verdict} ({quadratic.as_expr()})")
    return result
