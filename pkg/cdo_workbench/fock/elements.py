"""Normally ordered polynomials in the generating fields and their modes.

A term ``(x_1, …, x_k)`` stands for the right-nested normally ordered product
``:x_1 :x_2 … x_k::``; each factor is ``(field name, order)`` with order 1 for ``∂x``.
"""
import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from sympy import QQ
from sympy.polys.rings import ring

from cdo_workbench._errors import VerificationFailure
from cdo_workbench.fock.space import FockSpace, Monomial, State, TruncationExceeded, add_state
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, render_scalar, scalar


logger = logging.getLogger(__name__)

Factor = tuple[str, int]
Term = tuple[Factor, ...]


class OpeCheckFailure(VerificationFailure):
    pass


class FieldElement:
    def __init__(self, terms: Optional[Mapping[Term, Union[Scalar, int]]] = None):
        self.terms: dict[Term, Scalar] = {}
        for term, value in (terms or {}).items():
            value = scalar(value)
            if value:
                self.terms[tuple(term)] = self.terms.get(tuple(term), LEVEL_RING.zero) + value
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def generator(cls, name: str, order: int = 0) -> "FieldElement":
        return cls({((name, order),): 1})

    @classmethod
    def normal_product(cls, *factors: Union[str, Factor], coefficient: Union[Scalar, int] = 1) -> "FieldElement":
        """``:x_1 :x_2 … x_k::``; a plain name is an underived factor."""
        term = tuple((f, 0) if isinstance(f, str) else tuple(f) for f in factors)
        return cls({term: coefficient})

    @classmethod
    def identity(cls) -> "FieldElement":
        return cls({(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FieldElement") -> "FieldElement":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, LEVEL_RING.zero) + v
        return FieldElement(terms)

    def __neg__(self) -> "FieldElement":
        return self.scale(-1)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def scale(self, factor: Union[Scalar, int]) -> "FieldElement":
        factor = scalar(factor)
        return FieldElement({k: v * factor for k, v in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for term, value in sorted(self.terms.items()):
            body = " ".join(("∂" if order else "") + name for name, order in term) or "1"
            parts.append(f"({render_scalar(value)}) :{body}:")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FieldElement({self.render()})"


class ModeCalculus:
    """Modes of field elements acting on the states of a Fock space."""

    def __init__(self, space: FockSpace):
        self.space = space
        self._cache: dict[tuple[Term, int, Monomial], State] = {}

    def _factor_weight(self, factor: Factor) -> int:
        return self.space.field(factor[0]).weight + factor[1]

    def _factor_odd(self, factor: Factor) -> bool:
        return self.space.field(factor[0]).odd

    def term_weight(self, term: Term) -> int:
        return sum(self._factor_weight(f) for f in term)

    def term_odd(self, term: Term) -> bool:
        return sum(self._factor_odd(f) for f in term) % 2 == 1

    def term_charge(self, term: Term) -> int:
        return sum(self.space.field(name).charge for name, _ in term)

    def _factor_mode(self, factor: Factor, n: int, monomial: Monomial) -> State:
        name, order = factor
        index = self.space.field_index(name)
        if order == 0:
            return self.space.apply_to_monomial((index, n), monomial)
        # (∂x)_(n) = -n x_(n-1)
        if n == 0:
            return {}
        return {m: -n * v for m, v in self.space.apply_to_monomial((index, n - 1), monomial).items()}

    def term_mode(self, term: Term, n: int, monomial: Monomial) -> State:
        key = (term, n, monomial)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._term_mode(term, n, monomial)
            self._cache[key] = cached
        return cached

    def _term_mode(self, term: Term, n: int, monomial: Monomial) -> State:
        if not term:
            return {monomial: LEVEL_RING.one} if n == -1 else {}
        if len(term) == 1:
            return self._factor_mode(term[0], n, monomial)
        a, b = term[0], term[1:]
        weight = self.space.weight(monomial)
        wa, wb = self._factor_weight(a), self.term_weight(b)
        sign = -1 if self._factor_odd(a) and self.term_odd(b) else 1
        result: State = {}
        # :ab:_(n) = Σ_{k<=-1} a_(k) b_(n-k-1) + (±) Σ_{k>=0} b_(n-k-1) a_(k)
        for k in range(n - weight - wb, 0):
            for inner, c in self.term_mode(b, n - k - 1, monomial).items():
                add_state(result, self._factor_mode(a, k, inner), c)
        for k in range(0, weight + wa):
            for inner, c in self._factor_mode(a, k, monomial).items():
                add_state(result, self.term_mode(b, n - k - 1, inner), sign * c)
        return result

    def element_mode(self, element: FieldElement, n: int, state: State) -> State:
        """``element_(n)`` applied to a state."""
        result: State = {}
        for monomial, c in state.items():
            for term, value in element.terms.items():
                add_state(result, self.term_mode(term, n, monomial), c * value)
        self.space.require_within(result)
        return result

    def state_of(self, element: FieldElement) -> State:
        """``element_(-1)|0>``."""
        return self.element_mode(element, -1, {(): LEVEL_RING.one})

    def element_weight(self, element: FieldElement) -> int:
        weights = {self.term_weight(term) for term in element.terms}
        if len(weights) > 1:
            raise TruncationExceeded(f"Element {element.render()} is not homogeneous in conformal weight")
        return weights.pop() if weights else 0

    def element_charge(self, element: FieldElement) -> int:
        charges = {self.term_charge(term) for term in element.terms}
        return charges.pop() if len(charges) == 1 else 0

    def zero_mode(self, element: FieldElement) -> "BlockOperator":
        """The (0)-mode of a weight one element as a block operator."""
        weight = self.element_weight(element)
        if element.terms and weight != 1:
            raise TruncationExceeded(f"Zero mode preserves the weight only for weight one elements, got {weight}")
        return BlockOperator(self, element, 0)

    def products(self, x: FieldElement, y: FieldElement) -> dict[int, State]:
        """Nonzero ``x_(n) y`` for ``n >= 0``."""
        target = self.state_of(y)
        result = {}
        for n in range(0, self.element_weight(x) + self.element_weight(y) + 1):
            value = self.element_mode(x, n, target)
            if value:
                result[n] = value
        return result

    def ope_check(self, x: FieldElement, y: FieldElement, expected: Mapping[int, FieldElement]) -> bool:
        """Compares every pole ``x_(n) y``, ``n >= 0``, with ``expected[n]`` (missing means zero)."""
        computed = self.products(x, y)
        for n in set(computed) | set(expected):
            wanted = self.state_of(expected[n]) if n in expected else {}
            if computed.get(n, {}) != wanted:
                logger.info(f"Pole of order {n + 1} differs: {x.render()} with {y.render()}")
                return False
        return True


class BlockOperator:
    """The ``n``-mode of an element, applied lazily to basis monomials."""

    def __init__(self, calculus: ModeCalculus, element: FieldElement, n: int):
        self.calculus = calculus
        self.element = element
        self.n = n

    def apply(self, state: State) -> State:
        return self.calculus.element_mode(self.element, self.n, state)

    def on_monomial(self, monomial: Monomial) -> State:
        return self.apply({monomial: LEVEL_RING.one})

    def columns(self, source: list[Monomial], target: list[Monomial]) -> list[dict[int, Scalar]]:
        """Matrix columns over the target basis; images must stay in the target span."""
        position = {m: k for k, m in enumerate(target)}
        columns = []
        for monomial in source:
            column = {}
            for image, value in self.on_monomial(monomial).items():
                if image not in position:
                    raise TruncationExceeded(
                        f"{self.calculus.space.render(image)} is not in the target block of {self.calculus.space.render(monomial)}"
                    )
                column[position[image]] = value
            columns.append(column)
        return columns


@dataclass
class GradedDimensions:
    """Dimensions per (weight, charge): enumerated and predicted by the character."""

    enumerated: dict[tuple[int, int], int]
    predicted: dict[tuple[int, int], int]

    @property
    def agree(self) -> bool:
        return self.enumerated == self.predicted


def predicted_dimensions(space: FockSpace) -> dict[tuple[int, int], int]:
    """Coefficients of ``∏ (1 + y^c q^s)`` over odd creators and ``∏ 1/(1 - q^s)`` over even ones."""
    if space.has_unbounded_blocks():
        raise TruncationExceeded("The character is infinite in weight zero")
    series_ring, q, u, v = ring("q,u,v", QQ)
    W = space.max_weight
    total = series_ring.one
    for mode in space.creation_modes():
        shift = space.mode_shift(mode)
        charge = space.fields[mode[0]].charge
        marker = u ** charge if charge > 0 else v ** (-charge)
        if space.is_odd(mode):
            factor = series_ring.one + marker * q ** shift
        else:
            factor = sum((marker ** k * q ** (k * shift) for k in range(W // shift + 1)), series_ring.zero)
        total = _truncate(total * factor, W)
    result: dict[tuple[int, int], int] = {}
    for (dq, du, dv), coeff in total.terms():
        key = (dq, du - dv)
        result[key] = result.get(key, 0) + int(coeff)
    return {k: v for k, v in sorted(result.items()) if v}


def _truncate(series, max_degree: int):
    return series.ring({monom: c for monom, c in series.terms() if monom[0] <= max_degree})


def graded_dimensions(space: FockSpace) -> GradedDimensions:
    enumerated: dict[tuple[int, int], int] = {}
    for (weight, charge, _), basis in space.blocks().items():
        enumerated[(weight, charge)] = enumerated.get((weight, charge), 0) + len(basis)
    report = GradedDimensions(dict(sorted(enumerated.items())), predicted_dimensions(space))
    logger.info(f"Graded dimensions up to weight {space.max_weight}: {'agree' if report.agree else 'differ'}")
    return report
