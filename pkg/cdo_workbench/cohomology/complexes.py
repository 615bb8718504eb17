import logging
from enum import Enum
from itertools import combinations
from typing import Optional, Union

from sympy.polys.matrices import DomainMatrix

from cdo_workbench.helpers.linalg import from_columns, nullspace, rank, solve_polynomial, span_rank
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, rational
from cdo_workbench.helpers.workers import run_blocks
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.forms import BilinearForm, require_invariant
from cdo_workbench.cohomology.cochains import Cochain, TildeCochain, d_tilde, d_trivial


logger = logging.getLogger(__name__)


class ComplexKind(Enum):
    def __new__(cls, value: str, description: str = ""):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.description = description
        return obj

    def __str__(self) -> str:
        return self._value_

    TRIVIAL = "trivial", "C·(g), trivial coefficients"
    TILDE = "tilde", "C̃·(g), shifted and augmented by the coadjoint module"


class CochainComplex:
    """One of the two cochain complexes of a Lie algebra with its exact differential matrices."""

    rank_workers = 1

    def __init__(self, algebra: LieAlgebraPresentation, kind: ComplexKind = ComplexKind.TRIVIAL, rank_workers: Optional[int] = None):
        self.algebra = algebra
        self.kind = kind
        if rank_workers is not None:
            self.rank_workers = rank_workers
        self._ranks: dict[int, int] = {}

    @property
    def top_degree(self) -> int:
        return self.algebra.dim if self.kind is ComplexKind.TRIVIAL else self.algebra.dim + 1

    def basis(self, degree: int) -> list:
        dim = self.algebra.dim
        if degree < 0 or degree > self.top_degree:
            return []
        if self.kind is ComplexKind.TRIVIAL:
            return list(combinations(range(dim), degree))
        if degree == 0:
            return [None]
        return [(indices, a) for indices in combinations(range(dim), degree - 1) for a in range(dim)]

    def unit(self, degree: int, key) -> Union[Cochain, TildeCochain]:
        dim = self.algebra.dim
        if self.kind is ComplexKind.TRIVIAL:
            return Cochain(dim, degree, {key: 1})
        if degree == 0:
            return TildeCochain(dim, 0, constant=1)
        return TildeCochain(dim, degree, {key: 1})

    def differential(self, cochain: Union[Cochain, TildeCochain]) -> Union[Cochain, TildeCochain]:
        if self.kind is ComplexKind.TRIVIAL:
            return d_trivial(self.algebra, cochain)
        return d_tilde(self.algebra, cochain)

    def coordinates(self, degree: int, cochain: Union[Cochain, TildeCochain]) -> dict[int, Scalar]:
        position = {key: m for m, key in enumerate(self.basis(degree))}
        if self.kind is ComplexKind.TILDE and degree == 0:
            return {0: cochain.constant} if cochain.constant else {}
        return {position[key]: v for key, v in cochain.coefficients.items()}

    def from_coordinates(self, degree: int, values: dict[int, Scalar]) -> Union[Cochain, TildeCochain]:
        basis = self.basis(degree)
        dim = self.algebra.dim
        if self.kind is ComplexKind.TRIVIAL:
            return Cochain(dim, degree, {basis[m]: v for m, v in values.items()})
        if degree == 0:
            return TildeCochain(dim, 0, constant=values.get(0, LEVEL_RING.zero))
        return TildeCochain(dim, degree, {basis[m]: v for m, v in values.items()})

    def differential_matrix(self, degree: int) -> DomainMatrix:
        """Matrix of ``d: C^degree -> C^{degree+1}``; columns are source basis vectors."""
        source = self.basis(degree)
        n_target = len(self.basis(degree + 1))
        columns = []
        for key in source:
            image = self.differential(self.unit(degree, key))
            columns.append({m: rational(v) for m, v in self.coordinates(degree + 1, image).items()})
        return from_columns(columns, n_target)

    def rank_of(self, degree: int) -> int:
        if degree not in self._ranks:
            if degree < 0 or degree >= self.top_degree:
                self._ranks[degree] = 0
            else:
                self._ranks[degree] = rank(self.differential_matrix(degree))
                logger.debug(f"{self.kind} complex of {self.algebra.name}: rank d_{degree} = {self._ranks[degree]}")
        return self._ranks[degree]

    def dims(self) -> list[int]:
        degrees = list(range(self.top_degree + 1))
        missing = [d for d in degrees if d not in self._ranks and d < self.top_degree]
        for d, r in zip(missing, run_blocks(lambda d: rank(self.differential_matrix(d)), missing, self.rank_workers)):
            self._ranks[d] = r
        result = [len(self.basis(d)) - self.rank_of(d) - self.rank_of(d - 1) for d in degrees]
        logger.info(f"H·({self.algebra.name}, {self.kind}) = {result}")
        return result

    def is_coboundary(self, cochain: Union[Cochain, TildeCochain]) -> bool:
        degree = cochain.degree
        if degree == 0:
            return cochain.is_zero()
        matrix = self.differential_matrix(degree - 1)
        return solve_polynomial(matrix, self.coordinates(degree, cochain)) is not None

    def cocycle_basis(self, degree: int) -> list[Union[Cochain, TildeCochain]]:
        kernel = nullspace(self.differential_matrix(degree))
        return [self.from_coordinates(degree, {m: LEVEL_RING(v) for m, v in enumerate(vector) if v}) for vector in kernel]

    def _boundary_columns(self, degree: int) -> list[dict[int, object]]:
        if degree <= 0:
            return []
        columns: dict[int, dict[int, object]] = {}
        for i, row in self.differential_matrix(degree - 1).to_dod().items():
            for j, v in row.items():
                columns.setdefault(j, {})[i] = v
        return list(columns.values())

    def independent_modulo_boundaries(self, cochains: list[Union[Cochain, TildeCochain]]) -> bool:
        """Whether the classes of rational cocycles are linearly independent."""
        if not cochains:
            return True
        degree = cochains[0].degree
        n = len(self.basis(degree))
        boundaries = self._boundary_columns(degree)
        vectors = [{m: rational(v) for m, v in self.coordinates(degree, c).items()} for c in cochains]
        return span_rank(boundaries + vectors, n) == span_rank(boundaries, n) + len(cochains)

    def representatives(self, degree: int) -> list[Union[Cochain, TildeCochain]]:
        """Cocycles whose classes form a basis of ``H^degree``."""
        n = len(self.basis(degree))
        chosen = []
        current = self._boundary_columns(degree)
        current_rank = span_rank(current, n) if current else 0
        for cocycle in self.cocycle_basis(degree):
            vector = {m: rational(v) for m, v in self.coordinates(degree, cocycle).items()}
            new_rank = span_rank(current + [vector], n)
            if new_rank > current_rank:
                chosen.append(cocycle)
                current.append(vector)
                current_rank = new_rank
        return chosen


def cohomology_dims(algebra: LieAlgebraPresentation, kind: ComplexKind = ComplexKind.TRIVIAL) -> list[int]:
    return CochainComplex(algebra, kind).dims()


def cohomology_representatives(algebra: LieAlgebraPresentation, degree: int) -> list[Cochain]:
    return CochainComplex(algebra).representatives(degree)


def is_coboundary(algebra: LieAlgebraPresentation, cochain: Cochain) -> bool:
    return CochainComplex(algebra).is_coboundary(cochain)


def cocycle_from_form(algebra: LieAlgebraPresentation, form: BilinearForm) -> Cochain:
    """``c(τ_1, τ_2, τ_3) = ([τ_1, τ_2], τ_3)``."""
    require_invariant(algebra, form)
    result = {}
    for indices in combinations(range(algebra.dim), 3):
        i, j, k = indices
        value = LEVEL_RING.zero
        for p, c in algebra.bracket_of(i, j).items():
            value += c * form[p, k]
        if value:
            result[indices] = value
    return Cochain(algebra.dim, 3, result)
