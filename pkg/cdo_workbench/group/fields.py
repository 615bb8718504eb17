"""Left and right invariant vector fields on a matrix group and the transport matrix between them.

Left fields act by ``τ_i(X) = X·T_i``, right fields by ``τ_i^R(X) = -T_i·X``; both are
derivations of the coordinate ring given by their values on the matrix entries.
"""
import logging
from enum import Enum
from typing import Optional

from sympy.polys.rings import PolyElement

from cdo_workbench._errors import VerificationFailure
from cdo_workbench.group.coordinate_ring import CoordinateRing, parse_group_name
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.builtins import builtin_subalgebra, matrix_product, sl


logger = logging.getLogger(__name__)

Entry = tuple[int, int]
Images = dict[Entry, PolyElement]


class ConventionFailure(VerificationFailure):
    pass


class SolveFailure(VerificationFailure):
    pass


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class InvariantField:
    """A derivation given by its images of the matrix entries."""

    def __init__(self, side: Side, index: int, images: Images):
        self.side = side
        self.index = index
        self.images = {k: v for k, v in images.items() if v}

    def __repr__(self) -> str:
        return f"InvariantField({self.side.value}, {self.index})"


class TransportMatrix:
    """``τ_i^R = Σ_j a^{ij} τ_j`` over the coordinate ring."""

    def __init__(self, size: int, entries: dict[tuple[int, int], PolyElement], zero: PolyElement):
        self.size = size
        self._entries = {k: v for k, v in entries.items() if v}
        self._zero = zero

    def __getitem__(self, key: tuple[int, int]) -> PolyElement:
        return self._entries.get(key, self._zero)

    def row(self, i: int) -> dict[int, PolyElement]:
        return {j: v for (a, j), v in self._entries.items() if a == i}


class MatrixGroup:
    """SL(n) or its unipotent subgroup N(n) with invariant fields.

    :param check_on_build: verify the field conventions on generators while building
    """

    check_on_build = True

    def __init__(self, name: str, check_on_build: Optional[bool] = None):
        size, unipotent = parse_group_name(name)
        if check_on_build is not None:
            self.check_on_build = check_on_build
        self.coordinate_ring = CoordinateRing(size, unipotent)
        self.name = self.coordinate_ring.name
        parent = sl(size)
        self.algebra: LieAlgebraPresentation = (
            builtin_subalgebra(parent, "nilradical").algebra if unipotent else parent
        )
        self._realization = self.algebra.realization
        self._matrix = self.coordinate_ring.matrix()
        self._inverse = self.coordinate_ring.adjugate(self._matrix)
        self._cache: dict[tuple, PolyElement] = {}
        self._transport: Optional[TransportMatrix] = None

        self.left = [
            InvariantField(Side.LEFT, i, self._restricted(matrix_product(self._matrix, t_i)))
            for i, t_i in enumerate(self._realization.matrices)
        ]
        self.right = self._right_fields(-1)
        if self.check_on_build and not self._right_convention_holds():
            logger.warning(f"{self.name}: right fields fail with sign -1, trying +1")
            self.right = self._right_fields(1)
            if not self._right_convention_holds():
                raise ConventionFailure(f"{self.name}: no sign of the right action commutes with the left one")
        logger.info(f"Built {self.name} with {self.algebra.dim} left and right invariant fields")

    @property
    def zero(self) -> PolyElement:
        return self.coordinate_ring.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.coordinate_ring.ring.one

    def reduce(self, p: PolyElement) -> PolyElement:
        return self.coordinate_ring.reduce(p)

    def _restricted(self, matrix: dict) -> Images:
        return {
            entry: self.reduce(value)
            for entry, value in matrix.items()
            if entry in self.coordinate_ring.generators and value
        }

    def _right_fields(self, sign: int) -> list[InvariantField]:
        fields = []
        for i, t_i in enumerate(self._realization.matrices):
            product = matrix_product(t_i, self._matrix)
            fields.append(InvariantField(Side.RIGHT, i, self._restricted({k: sign * v for k, v in product.items()})))
        return fields

    def apply(self, field: InvariantField, p: PolyElement) -> PolyElement:
        """``field(p)`` in normal form."""
        if not p:
            return p
        key = (field.side, field.index, p)
        cached = self._cache.get(key)
        if cached is None:
            result = self.zero
            for entry, image in field.images.items():
                partial = self.coordinate_ring.derivative(p, entry)
                if partial:
                    result += image * partial
            cached = self.reduce(result)
            self._cache[key] = cached
        return cached

    def tau(self, i: int, p: PolyElement) -> PolyElement:
        return self.apply(self.left[i], p)

    def tau_right(self, i: int, p: PolyElement) -> PolyElement:
        return self.apply(self.right[i], p)

    def commutator(self, first: InvariantField, second: InvariantField) -> Images:
        """``[first, second]`` on the matrix entries."""
        result = {}
        for entry, generator in self.coordinate_ring.generators.items():
            value = self.apply(first, self.apply(second, generator)) - self.apply(second, self.apply(first, generator))
            if value:
                result[entry] = value
        return result

    def combination(self, fields: list[InvariantField], coefficients: dict[int, PolyElement]) -> Images:
        result: Images = {}
        for i, c in coefficients.items():
            for entry, image in fields[i].images.items():
                result[entry] = result.get(entry, self.zero) + c * image
        return {k: self.reduce(v) for k, v in result.items() if v}

    def frame_coordinates(self, images: Images) -> dict[int, PolyElement]:
        """Coefficients ``φ_p`` of a derivation ``D = Σ_p φ_p τ_p``, read from ``X^{-1} D(X)``."""
        derivative = {entry: value for entry, value in images.items() if value}
        product = {k: self.reduce(v) for k, v in matrix_product(self._inverse, derivative).items()}
        coordinates = self._realization.coordinates(product)
        if coordinates is None:
            raise SolveFailure(f"{self.name}: derivation is not in the span of the left invariant fields")
        return {p: v for p, v in coordinates.items() if v}

    def _bracket_matches(self, fields: list[InvariantField], images: Images, i: int, j: int) -> bool:
        return images == self.combination(fields, {p: self.coordinate_ring.lift(c) for p, c in self.algebra.bracket_of(i, j).items()})

    def _right_convention_holds(self) -> bool:
        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                if self.commutator(self.left[i], self.right[j]):
                    return False
                if not self._bracket_matches(self.right, self.commutator(self.right[i], self.right[j]), i, j):
                    return False
        return True

    def transport_matrix(self) -> TransportMatrix:
        """Solves ``τ_i^R = a^{ij} τ_j`` exactly."""
        if self._transport is None:
            entries = {}
            for i, field in enumerate(self.right):
                for j, value in self.frame_coordinates(field.images).items():
                    entries[(i, j)] = value
            self._transport = TransportMatrix(self.algebra.dim, entries, self.zero)
            logger.info(f"{self.name}: transport matrix solved, {len(entries)} nonzero entries")
        return self._transport
