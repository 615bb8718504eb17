"""BRST complexes at truncated conformal weight and their cohomology."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from cdo_workbench._errors import InputError, VerificationFailure
from cdo_workbench.brst.charges import antighost, brst_charge, ghost_space, killing_square
from cdo_workbench.fock.elements import FieldElement, ModeCalculus
from cdo_workbench.fock.fields import (
    CurrentSector, Torus, algebra_torus, betagamma_system, current_fields, ghost_system, unit_vector
)
from cdo_workbench.fock.space import BlockKey, FockSpace, Monomial, State
from cdo_workbench.helpers.linalg import from_columns, rank
from cdo_workbench.helpers.scalars import rational
from cdo_workbench.helpers.workers import run_blocks
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.forms import BilinearForm, killing_form, require_invariant


logger = logging.getLogger(__name__)


class MismatchError(VerificationFailure):
    pass


class DifferentialNotSquareZero(InputError):
    pass


class StabilityViolation(VerificationFailure):
    pass


class ModuleKind(Enum):
    def __new__(cls, value: str, description: str = ""):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.description = description
        return obj

    def __str__(self) -> str:
        return self._value_

    GHOSTS = "ghosts", "ghost system alone"
    CURRENTS = "currents", "currents of the algebra at a level"
    BETAGAMMA = "betagamma", "βγ system with the algebra acting by β"


@dataclass
class ModuleSpec:
    kind: ModuleKind = ModuleKind.GHOSTS
    level: Optional[BilinearForm] = None

    def describe(self) -> str:
        if self.kind is ModuleKind.CURRENTS:
            return f"currents:{self.level.rendered_rows()}"
        return str(self.kind)


@dataclass
class SquareReport:
    """Blocks where ``d²`` does not vanish, with the number of compared blocks."""

    blocks: int
    nonzero_blocks: list[BlockKey] = field(default_factory=list)

    @property
    def vanishes(self) -> bool:
        return not self.nonzero_blocks


@dataclass
class CohomologyTable:
    """``dims[weight][charge]`` summed over the torus weights inspected."""

    dims: dict[int, dict[int, int]]
    chain_dims: dict[int, dict[int, int]]
    torus_weights: list[Torus]

    def euler_characteristics(self) -> dict[int, int]:
        return {w: sum((-1) ** p * d for p, d in row.items()) for w, row in self.dims.items()}

    def chain_euler_characteristics(self) -> dict[int, int]:
        return {w: sum((-1) ** p * d for p, d in row.items()) for w, row in self.chain_dims.items()}

    def total(self, charge: int) -> int:
        return sum(row.get(charge, 0) for row in self.dims.values())


class BrstComplex:
    """Ghosts for ``algebra`` tensored with a coefficient module, with ``d`` the zero mode of
    ``:φ*_i a_i: + D``.

    :param torus_radius: torus weights inspected when the blocks are infinite in number
    """

    block_workers = 1
    torus_radius = 2

    def __init__(
        self,
        algebra: LieAlgebraPresentation,
        module: Optional[ModuleSpec] = None,
        max_weight: int = 2,
        block_workers: Optional[int] = None,
        torus_radius: Optional[int] = None,
    ):
        self.algebra = algebra
        self.module = module or ModuleSpec()
        if block_workers is not None:
            self.block_workers = block_workers
        if torus_radius is not None:
            self.torus_radius = torus_radius
        self.space, module_element = self._build(max_weight)
        self.max_weight = max_weight
        self.element = module_element + brst_charge(algebra)
        self.calculus = ModeCalculus(self.space)
        self.differential = self.calculus.zero_mode(self.element)
        logger.info(f"BRST complex of {algebra.name} with {self.module.describe()} up to weight {max_weight}")

    def _build(self, max_weight: int) -> tuple[FockSpace, FieldElement]:
        algebra = self.algebra
        names = algebra.basis_names
        kind = self.module.kind
        if kind is ModuleKind.GHOSTS:
            return ghost_space(algebra, max_weight), FieldElement()
        if kind is ModuleKind.CURRENTS:
            if self.module.level is None:
                raise InputError("A current module needs a level")
            require_invariant(algebra, self.module.level)
            sector = CurrentSector(algebra, self.module.level, prefix="J")
            fields = ghost_system(algebra) + current_fields(sector, 0)
            element = FieldElement({
                ((antighost(names[i]), 0), (sector.field_name(i), 0)): 1 for i in range(algebra.dim)
            })
            return FockSpace(fields, [sector], max_weight), element
        if not algebra.is_abelian:
            raise InputError(f"The βγ module is modeled for abelian algebras only, not {algebra.name}")
        n = algebra.dim
        torus = [tuple(-x for x in unit_vector(k, n)) for k in range(n)]
        fields = ghost_system(algebra, torus) + betagamma_system(n)
        element = FieldElement({((antighost(names[k]), 0), (f"beta_{k + 1}", 0)): 1 for k in range(n)})
        return FockSpace(fields, max_weight=max_weight), element

    def torus_weights(self) -> list[Optional[Torus]]:
        if not self.space.has_unbounded_blocks():
            return [None]
        return self.space.torus_window(self.torus_radius)

    def blocks(self) -> dict[BlockKey, list[Monomial]]:
        result: dict[BlockKey, list[Monomial]] = {}
        for torus in self.torus_weights():
            result.update(self.space.blocks(torus))
        return dict(sorted(result.items()))

    def apply_d(self, state: State) -> State:
        return self.differential.apply(state)

    def square(self) -> SquareReport:
        blocks = self.blocks()
        report = SquareReport(len(blocks))
        for key, basis in blocks.items():
            if any(self.apply_d(self.differential.on_monomial(m)) for m in basis):
                report.nonzero_blocks.append(key)
        logger.info(f"d² on {self.algebra.name}: {'zero' if report.vanishes else 'nonzero'} on {report.blocks} blocks")
        return report

    def differential_matrix(self, blocks: dict[BlockKey, list[Monomial]], key: BlockKey):
        weight, charge, torus = key
        target = blocks.get((weight, charge + 1, torus), [])
        columns = self.differential.columns(blocks[key], target)
        return from_columns([{i: rational(v) for i, v in c.items()} for c in columns], len(target))

    def cohomology(self, blocks: Optional[dict[BlockKey, list[Monomial]]] = None) -> CohomologyTable:
        """Exact ``dim H^p`` per weight.

        :param blocks: a d-stable family of blocks, all blocks of the complex by default
        :raises DifferentialNotSquareZero: when ``d²`` fails on some block
        """
        squared = self.square()
        if not squared.vanishes:
            raise DifferentialNotSquareZero(
                f"d² does not vanish for {self.algebra.name} with {self.module.describe()}, first block {squared.nonzero_blocks[0]}"
            )
        if blocks is None:
            blocks = self.blocks()
        keys = list(blocks)
        ranks = dict(zip(keys, run_blocks(lambda k: rank(self.differential_matrix(blocks, k)), keys, self.block_workers)))
        dims: dict[int, dict[int, int]] = {}
        chain_dims: dict[int, dict[int, int]] = {}
        for (weight, charge, torus), basis in blocks.items():
            incoming = ranks.get((weight, charge - 1, torus), 0)
            value = len(basis) - ranks[(weight, charge, torus)] - incoming
            dims.setdefault(weight, {})
            chain_dims.setdefault(weight, {})
            dims[weight][charge] = dims[weight].get(charge, 0) + value
            chain_dims[weight][charge] = chain_dims[weight].get(charge, 0) + len(basis)
        dims = {w: {p: d for p, d in sorted(row.items()) if d} for w, row in sorted(dims.items())}
        table = CohomologyTable(dims, chain_dims, sorted({key[2] for key in blocks if key[2] is not None}))
        logger.info(f"H_BRST({self.algebra.name}; {self.module.describe()}) up to weight {self.max_weight}: {table.dims}")
        return table


def brst_square(algebra: LieAlgebraPresentation, max_weight: int = 2) -> SquareReport:
    """``d²`` on the ghost complex, squared directly and compared with the zero mode of
    ``1/2 (a_i, a_j)_K :∂φ*_i φ*_j:`` block by block.

    :raises MismatchError: when the two computations differ on a block
    """
    complex_ = BrstComplex(algebra, max_weight=max_weight)
    expected = complex_.calculus.zero_mode(killing_square(algebra))
    blocks = complex_.blocks()
    report = SquareReport(len(blocks))
    for key, basis in blocks.items():
        for monomial in basis:
            squared = complex_.apply_d(complex_.differential.on_monomial(monomial))
            if squared != expected.on_monomial(monomial):
                raise MismatchError(
                    f"d² on {algebra.name} differs from the Killing operator at {complex_.space.render(monomial)}"
                )
            if squared and key not in report.nonzero_blocks:
                report.nonzero_blocks.append(key)
    logger.info(f"d² on the ghosts of {algebra.name} matches the Killing operator on {report.blocks} blocks")
    return report


def module_differential(algebra: LieAlgebraPresentation, module: ModuleSpec, max_weight: int = 2) -> tuple[BrstComplex, SquareReport]:
    complex_ = BrstComplex(algebra, module, max_weight)
    return complex_, complex_.square()


def minus_killing_module(algebra: LieAlgebraPresentation) -> ModuleSpec:
    return ModuleSpec(ModuleKind.CURRENTS, -killing_form(algebra))


@dataclass
class RelativeReport:
    basis_size: int
    excluded: int
    stable: bool


def cartan_indices(algebra: LieAlgebraPresentation) -> list[int]:
    """Basis elements of zero root weight; none when the algebra carries no weights."""
    if not algebra.weights:
        return []
    return [i for i, w in enumerate(algebra_torus(algebra)) if not any(w)]


def relative_subcomplex(complex_: BrstComplex) -> tuple[dict[BlockKey, list[Monomial]], RelativeReport]:
    """Monomials without a weight zero Cartan antighost and of total torus weight zero.

    :raises StabilityViolation: when ``d`` leaves the filtered span
    """
    algebra = complex_.algebra
    space = complex_.space
    cartan_modes = {space.mode(antighost(algebra.basis_names[i]), -1) for i in cartan_indices(algebra)}
    zero_torus = tuple([0] * space.torus_length)
    blocks = space.blocks(zero_torus if space.has_unbounded_blocks() else None)
    kept: dict[BlockKey, list[Monomial]] = {}
    excluded = 0
    for key, basis in blocks.items():
        if key[2] != zero_torus:
            excluded += len(basis)
            continue
        filtered = [m for m in basis if not cartan_modes.intersection(m)]
        excluded += len(basis) - len(filtered)
        if filtered:
            kept[key] = filtered
    allowed = {m for basis in kept.values() for m in basis}
    for basis in kept.values():
        for monomial in basis:
            for image in complex_.differential.on_monomial(monomial):
                if image not in allowed:
                    raise StabilityViolation(
                        f"d maps {space.render(monomial)} outside the relative subcomplex, to {space.render(image)}"
                    )
    report = RelativeReport(len(allowed), excluded, True)
    logger.info(f"Relative subcomplex of {algebra.name}: {report.basis_size} monomials kept, {excluded} excluded")
    return kept, report


def relative_cohomology(complex_: BrstComplex) -> tuple[CohomologyTable, RelativeReport]:
    kept, report = relative_subcomplex(complex_)
    return complex_.cohomology(kept), report
