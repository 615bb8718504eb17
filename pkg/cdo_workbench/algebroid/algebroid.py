"""The groupoid of vertex algebroids over constants.

An object is a Lie algebra with a symmetric pairing ``<,>`` and ``c ∈ C̃³(g)``; a morphism
``(<,>, c) -> (<,>', c')`` is ``h ∈ C̃²(g)`` with

    <τ_1, h(τ_2)> + <τ_2, h(τ_1)> = <τ_1, τ_2> - <τ_1, τ_2>'
    d̃h = c - c'

Composition adds the ``h``.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from sympy import QQ

from cdo_workbench._errors import InputError, VerificationFailure
from cdo_workbench.cohomology.cochains import TildeCochain, d_tilde, embed_trivial
from cdo_workbench.cohomology.complexes import CochainComplex, cocycle_from_form
from cdo_workbench.helpers.linalg import build_matrix, solve_polynomial
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, render_scalar
from cdo_workbench.lie.algebra import LieAlgebraPresentation
from cdo_workbench.lie.forms import BilinearForm, invariant_form_space, is_semisimple, require_invariant


logger = logging.getLogger(__name__)


class AxiomA4Violation(VerificationFailure):
    pass


class AxiomA5Violation(VerificationFailure):
    pass


class AlgebraMismatch(InputError):
    pass


class ConstantVertexAlgebroid:
    def __init__(self, algebra: LieAlgebraPresentation, pairing: BilinearForm, c: TildeCochain, name: str = ""):
        if pairing.dim != algebra.dim or c.dim != algebra.dim or c.degree != 3:
            raise InputError(f"Pairing or cocycle does not fit {algebra.name}")
        self.algebra = algebra
        self.pairing = pairing
        self.c = c
        self.name = name or f"A({algebra.name})"

    def __repr__(self) -> str:
        return f"ConstantVertexAlgebroid({self.name!r})"


def axiom_a4_residual(algebra: LieAlgebraPresentation, pairing: BilinearForm, c: TildeCochain, i: int, j: int, k: int) -> Scalar:
    """``<[τ_i,τ_j],τ_k> + <τ_j,[τ_i,τ_k]> - <τ_j,c(τ_i,τ_k)> - <τ_k,c(τ_i,τ_j)>``."""
    value = LEVEL_RING.zero
    for p, coeff in algebra.bracket_of(i, j).items():
        value += coeff * pairing[p, k]
    for p, coeff in algebra.bracket_of(i, k).items():
        value += coeff * pairing[j, p]
    return value - c.pair(j, (i, k)) - c.pair(k, (i, j))


def check_axioms(
    algebra: LieAlgebraPresentation, pairing: BilinearForm, c: TildeCochain, name: str = ""
) -> ConstantVertexAlgebroid:
    """Validates the two axioms of an algebroid over constants and returns the object."""
    candidate = ConstantVertexAlgebroid(algebra, pairing, c, name)
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for k in range(j, algebra.dim):
                residual = axiom_a4_residual(algebra, pairing, c, i, j, k)
                if residual:
                    raise AxiomA4Violation(
                        f"{candidate.name}: pairing axiom fails on {algebra.triple_name(i, j, k)} "
                        f"with residual {render_scalar(residual)}"
                    )
    dc = d_tilde(algebra, c)
    if not dc.is_zero():
        (indices, target), value = next(iter(sorted(dc.coefficients.items())))
        raise AxiomA5Violation(
            f"{candidate.name}: d̃c != 0 on {algebra.triple_name(target, *indices)} "
            f"with value {render_scalar(value)}"
        )
    logger.debug(f"{candidate.name} satisfies both algebroid axioms")
    return candidate


class AlgebroidMorphism:
    def __init__(self, source: ConstantVertexAlgebroid, target: ConstantVertexAlgebroid, h: TildeCochain):
        if source.algebra is not target.algebra and source.algebra.basis_names != target.algebra.basis_names:
            raise AlgebraMismatch(f"{source.name} and {target.name} live on different Lie algebras")
        if h.degree != 2 or h.dim != source.algebra.dim:
            raise InputError("A morphism is given by an element of C̃²(g)")
        self.source = source
        self.target = target
        self.h = h

    def __repr__(self) -> str:
        return f"AlgebroidMorphism({self.source.name} -> {self.target.name})"


@dataclass
class MorphismCertificate:
    holds: bool
    pairing_residuals: dict[tuple[int, int], Scalar] = field(default_factory=dict)
    cocycle_residuals: dict[tuple[tuple[int, ...], int], Scalar] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def check_morphism(morphism: AlgebroidMorphism) -> MorphismCertificate:
    algebra = morphism.source.algebra
    h = morphism.h
    pairing_residuals = {}
    for a in range(algebra.dim):
        for b in range(a, algebra.dim):
            value = (
                h.pair(a, (b,)) + h.pair(b, (a,))
                - morphism.source.pairing[a, b] + morphism.target.pairing[a, b]
            )
            if value:
                pairing_residuals[(a, b)] = value
    difference = d_tilde(algebra, h) - (morphism.source.c - morphism.target.c)
    certificate = MorphismCertificate(
        holds=not pairing_residuals and difference.is_zero(),
        pairing_residuals=pairing_residuals,
        cocycle_residuals=dict(difference.coefficients),
    )
    logger.debug(f"{morphism}: {'valid' if certificate else 'invalid'}")
    return certificate


def compose_morphisms(first: AlgebroidMorphism, second: AlgebroidMorphism) -> AlgebroidMorphism:
    """``second ∘ first``."""
    if first.target is not second.source:
        raise AlgebraMismatch(f"Cannot compose {first} with {second}")
    return AlgebroidMorphism(first.source, second.target, first.h + second.h)


def invert_morphism(morphism: AlgebroidMorphism) -> AlgebroidMorphism:
    return AlgebroidMorphism(morphism.target, morphism.source, -morphism.h)


def identity_morphism(obj: ConstantVertexAlgebroid) -> AlgebroidMorphism:
    return AlgebroidMorphism(obj, obj, TildeCochain.zero(obj.algebra.dim, 2))


def half_form_map(algebra: LieAlgebraPresentation, form: BilinearForm) -> TildeCochain:
    """``<τ_1, h(τ_2)> = (τ_1, τ_2) / 2``."""
    half = QQ(1, 2)
    return TildeCochain(
        algebra.dim, 2,
        {((b,), a): form[a, b] * half for a in range(algebra.dim) for b in range(algebra.dim) if form[a, b]},
    )


@dataclass
class CanonicalObjects:
    tilde: ConstantVertexAlgebroid
    """``Ã_{g;(,)}``: pairing ``(,)``, ``c = 0``."""
    cocycle: ConstantVertexAlgebroid
    """``A_{g;c_{(,)}}``: pairing 0, ``c`` the embedded ``([τ_1,τ_2],τ_3)``."""
    currents: ConstantVertexAlgebroid
    """``A_{g;(,)}``, the currents-only algebroid ``(C, g, g*, 0, 0, (,), 0)``."""
    connecting: AlgebroidMorphism
    """``h_{(,)}`` from ``Ã_{g;(,)}`` to the algebroid of the cocycle ``c_{(,)}/2``."""


def canonical_objects(algebra: LieAlgebraPresentation, form: BilinearForm) -> CanonicalObjects:
    require_invariant(algebra, form)
    cocycle = cocycle_from_form(algebra, form)
    zero_pairing = BilinearForm.zero(algebra.dim)
    zero_c = TildeCochain.zero(algebra.dim, 3)
    tilde = check_axioms(algebra, form, zero_c, f"Ã({algebra.name})")
    cocycle_object = check_axioms(algebra, zero_pairing, embed_trivial(cocycle), f"A({algebra.name};c)")
    currents = check_axioms(algebra, form, zero_c, f"A({algebra.name};(,))")
    half_cocycle = check_axioms(
        algebra, zero_pairing, embed_trivial(cocycle.scale(QQ(1, 2))), f"A({algebra.name};c/2)"
    )
    connecting = AlgebroidMorphism(tilde, half_cocycle, half_form_map(algebra, form))
    certificate = check_morphism(connecting)
    if not certificate:
        raise VerificationFailure(f"h_(,) is not a morphism on {algebra.name}: {certificate}")
    logger.info(f"Canonical algebroids of {algebra.name} built and verified")
    return CanonicalObjects(tilde, cocycle_object, currents, connecting)


def find_morphism(source: ConstantVertexAlgebroid, target: ConstantVertexAlgebroid) -> Optional[TildeCochain]:
    """Solves the morphism equations for ``h`` exactly; None when no morphism exists."""
    if source.algebra.basis_names != target.algebra.basis_names:
        raise AlgebraMismatch(f"{source.name} and {target.name} live on different Lie algebras")
    algebra = source.algebra
    dim = algebra.dim
    unknowns = [(a, b) for a in range(dim) for b in range(dim)]  # <τ_a, h(τ_b)>
    position = {key: m for m, key in enumerate(unknowns)}
    rows: dict[int, dict[int, object]] = {}
    rhs: dict[int, Scalar] = {}
    n_rows = 0

    for a in range(dim):
        for b in range(a, dim):
            row: dict[int, object] = {}
            row[position[(a, b)]] = row.get(position[(a, b)], QQ.zero) + 1
            row[position[(b, a)]] = row.get(position[(b, a)], QQ.zero) + 1
            rows[n_rows] = row
            rhs[n_rows] = source.pairing[a, b] - target.pairing[a, b]
            n_rows += 1

    # d̃ is linear: image of each unit h, one column per unknown
    images = {}
    for (a, b) in unknowns:
        images[position[(a, b)]] = d_tilde(algebra, TildeCochain(dim, 2, {((b,), a): 1}))
    difference = source.c - target.c
    for indices in combinations(range(dim), 2):
        for a in range(dim):
            row = {}
            for m, image in images.items():
                value = image.pair(a, indices)
                if value:
                    row[m] = value.coeff(1)
            rows[n_rows] = row
            rhs[n_rows] = difference.pair(a, indices)
            n_rows += 1

    matrix = build_matrix(rows, (n_rows, len(unknowns)))
    solution = solve_polynomial(matrix, {i: v for i, v in rhs.items() if v})
    if solution is None:
        logger.info(f"No morphism {source.name} -> {target.name}")
        return None
    h = TildeCochain(dim, 2, {((unknowns[m][1],), unknowns[m][0]): v for m, v in solution.items()})
    logger.info(f"Found morphism {source.name} -> {target.name}")
    return h


@dataclass
class Pi0Report:
    algebra: str
    h3_dimension: int
    representatives: list = field(default_factory=list)
    semisimple: bool = False
    invariant_forms_dimension: Optional[int] = None
    forms_inject: Optional[bool] = None

    @property
    def agree(self) -> Optional[bool]:
        if self.invariant_forms_dimension is None:
            return None
        return self.invariant_forms_dimension == self.h3_dimension and bool(self.forms_inject)


def pi0_report(algebra: LieAlgebraPresentation) -> Pi0Report:
    """``π_0`` of the groupoid is ``H³(g)``; for semisimple ``g`` also ``(S²g*)^g``."""
    complex_ = CochainComplex(algebra)
    dims = complex_.dims()
    h3 = dims[3] if len(dims) > 3 else 0
    report = Pi0Report(algebra.name, h3, complex_.representatives(3) if h3 else [])
    if algebra.dim and is_semisimple(algebra):
        report.semisimple = True
        forms = invariant_form_space(algebra)
        report.invariant_forms_dimension = len(forms)
        # classes of c_(,) over a basis of forms must stay independent modulo coboundaries
        report.forms_inject = complex_.independent_modulo_boundaries(
            [cocycle_from_form(algebra, form) for form in forms]
        )
    logger.info(f"π0 report for {algebra.name}: H³ dim {h3}, forms {report.invariant_forms_dimension}")
    return report
