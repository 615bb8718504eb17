"""Brute-force BRST cohomology from the derivation rule, with dense sympy ranks.

``d(m_1 … m_k|0>) = Σ_j ± m_1 … [d, m_j} … m_k|0>`` and ``[X_(0), y_(n)} = (X_(0)y)_(n)``; the
first order poles ``X_(0)y`` of the charge with each generator come from Wick contractions.
"""
import logging

from sympy import Matrix, QQ

from cdo_workbench._errors import InputError
from cdo_workbench.brst.complex import BrstComplex, CohomologyTable
from cdo_workbench.fock.elements import FieldElement, Term
from cdo_workbench.fock.fields import FieldKind
from cdo_workbench.fock.space import Monomial, State, add_state
from cdo_workbench.helpers.scalars import LEVEL_RING, rational


logger = logging.getLogger(__name__)


def _simple_pole(complex_: BrstComplex, left: str, right: str):
    """First and second order pole coefficients of ``left(z) right(w)``; the first as an element."""
    space = complex_.space
    fx, fy = space.field(left), space.field(right)
    if fx.partner == fy.name:
        value = -1 if fx.kind is FieldKind.GAMMA else 1
        return FieldElement.identity().scale(value), LEVEL_RING.zero
    if fx.kind is FieldKind.CURRENT and fy.kind is FieldKind.CURRENT and fx.sector == fy.sector:
        sector = space.sectors[fx.sector]
        first = FieldElement({((sector.field_name(p), 0),): c for p, c in sector.algebra.bracket_of(fx.basis_index, fy.basis_index).items()})
        return first, sector.level[fx.basis_index, fy.basis_index]
    return FieldElement(), LEVEL_RING.zero


def _insert(term: Term, position: int, element: FieldElement) -> FieldElement:
    terms = {}
    for inner, value in element.terms.items():
        terms[term[:position] + inner + term[position:]] = value
    return FieldElement(terms)


def _derivative(term: Term) -> FieldElement:
    terms = {}
    for k, (name, order) in enumerate(term):
        if order:
            raise InputError("Derivative factors are not supported by the brute-force oracle")
        key = term[:k] + ((name, 1),) + term[k + 1:]
        terms[key] = terms.get(key, 0) + 1
    return FieldElement(terms)


def first_order_pole(complex_: BrstComplex, element: FieldElement, generator: str) -> FieldElement:
    """``element_(0) generator`` by single contractions."""
    space = complex_.space
    y_odd = space.field(generator).odd
    result = FieldElement()
    for term, coefficient in element.terms.items():
        for j, (name, order) in enumerate(term):
            if order:
                raise InputError("Derivative factors are not supported by the brute-force oracle")
            later = sum(space.field(f).odd for f, _ in term[j + 1:])
            sign = -1 if y_odd and later % 2 else 1
            rest = term[:j] + term[j + 1:]
            first, second = _simple_pole(complex_, name, generator)
            if not first.is_zero():
                result = result + _insert(rest, j, first).scale(coefficient * sign)
            if second and rest:
                result = result + _derivative(rest).scale(coefficient * sign * second)
    return result


class DerivationDifferential:
    def __init__(self, complex_: BrstComplex):
        self.complex = complex_
        self.space = complex_.space
        self.calculus = complex_.calculus
        self._poles = {
            f.name: first_order_pole(complex_, complex_.element, f.name) for f in self.space.fields
        }

    def on_monomial(self, monomial: Monomial) -> State:
        result: State = {}
        prefix_odd = 0
        for j, (index, n) in enumerate(monomial):
            pole = self._poles[self.space.fields[index].name]
            tail: State = {}
            for term, value in pole.terms.items():
                add_state(tail, self.calculus.term_mode(term, n, monomial[j + 1:]), value)
            for mode in reversed(monomial[:j]):
                moved: State = {}
                for m, c in tail.items():
                    add_state(moved, self.space.apply_to_monomial(mode, m), c)
                tail = moved
            add_state(result, tail, -1 if prefix_odd % 2 else 1)
            prefix_odd += self.space.is_odd((index, n))
        return result


def _dense_rank(columns: list[State], target: list[Monomial]) -> int:
    if not columns or not target:
        return 0
    position = {m: k for k, m in enumerate(target)}
    matrix = Matrix.zeros(len(target), len(columns))
    for j, column in enumerate(columns):
        for monomial, value in column.items():
            matrix[position[monomial], j] = QQ.to_sympy(rational(value))
    return matrix.rank()


def dense_cohomology_oracle(complex_: BrstComplex) -> CohomologyTable:
    """Cohomology dimensions from the derivation-rule differential."""
    differential = DerivationDifferential(complex_)
    blocks = complex_.blocks()
    ranks = {}
    for (weight, charge, torus), basis in blocks.items():
        target = blocks.get((weight, charge + 1, torus), [])
        ranks[(weight, charge, torus)] = _dense_rank([differential.on_monomial(m) for m in basis], target)
    dims: dict[int, dict[int, int]] = {}
    chain_dims: dict[int, dict[int, int]] = {}
    for (weight, charge, torus), basis in blocks.items():
        value = len(basis) - ranks[(weight, charge, torus)] - ranks.get((weight, charge - 1, torus), 0)
        dims.setdefault(weight, {})[charge] = dims.get(weight, {}).get(charge, 0) + value
        chain_dims.setdefault(weight, {})[charge] = chain_dims.get(weight, {}).get(charge, 0) + len(basis)
    dims = {w: {p: d for p, d in sorted(row.items()) if d} for w, row in sorted(dims.items())}
    logger.info(f"Dense oracle for {complex_.algebra.name}: {dims}")
    return CohomologyTable(dims, chain_dims, [t for t in complex_.torus_weights() if t is not None])


def differentials_agree(complex_: BrstComplex) -> bool:
    """The derivation-rule differential equals the zero mode on every basis monomial."""
    differential = DerivationDifferential(complex_)
    for basis in complex_.blocks().values():
        for monomial in basis:
            if differential.on_monomial(monomial) != complex_.differential.on_monomial(monomial):
                logger.info(f"Differentials differ at {complex_.space.render(monomial)}")
                return False
    return True
