"""Cochains of ``C·(g)`` (trivial coefficients) and of the shifted complex ``C̃·(g)``.

``C^i(g) = (Λ^i g)*``. ``C̃^i(g)`` holds maps ``Λ^{i-1} g -> g*`` for ``i >= 1`` and scalars for
``i = 0``. Both are stored on strictly increasing index tuples; every reordering goes through
:func:`cdo_workbench.helpers.signs.sort_with_sign`.
"""
import logging
from itertools import combinations
from typing import Mapping, Optional, Sequence, Union

from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, scalar
from cdo_workbench.helpers.signs import parity_sign, sort_with_sign
from cdo_workbench.lie.algebra import LieAlgebraPresentation


logger = logging.getLogger(__name__)

Indices = tuple[int, ...]


def _clean(coefficients: Mapping) -> dict:
    return {k: v for k, v in coefficients.items() if v}


class Cochain:
    """Alternating ``degree``-linear map on a ``dim``-dimensional algebra."""

    def __init__(self, dim: int, degree: int, coefficients: Optional[Mapping[Indices, Scalar]] = None):
        self.dim = dim
        self.degree = degree
        self.coefficients: dict[Indices, Scalar] = {}
        for indices, value in (coefficients or {}).items():
            sign, key = sort_with_sign(indices)
            if len(key) != degree or (key and not 0 <= key[0] <= key[-1] < dim):
                raise ValueError(f"Index tuple {indices} does not fit degree {degree} on dim {dim}")
            if sign:
                self.coefficients[key] = self.coefficients.get(key, LEVEL_RING.zero) + sign * scalar(value)
        self.coefficients = _clean(self.coefficients)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Cochain":
        return cls(dim, degree)

    def evaluate(self, indices: Sequence[int]) -> Scalar:
        sign, key = sort_with_sign(indices)
        if not sign:
            return LEVEL_RING.zero
        return sign * self.coefficients.get(key, LEVEL_RING.zero)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.dim, self.degree, self.coefficients) == (other.dim, other.degree, other.coefficients)

    def __add__(self, other: "Cochain") -> "Cochain":
        coefficients = dict(self.coefficients)
        for k, v in other.coefficients.items():
            coefficients[k] = coefficients.get(k, LEVEL_RING.zero) + v
        return Cochain(self.dim, self.degree, _clean(coefficients))

    def scale(self, factor: Union[Scalar, int]) -> "Cochain":
        return Cochain(self.dim, self.degree, {k: v * factor for k, v in self.coefficients.items()})

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, terms={len(self.coefficients)})"


class TildeCochain:
    """Element of ``C̃^degree(g)``.

    For ``degree >= 1`` the key ``(indices, target)`` stores ``<τ_target, h(τ_indices)>`` with
    ``indices`` strictly increasing of length ``degree - 1``. Degree 0 is a single scalar.
    """

    def __init__(
        self,
        dim: int,
        degree: int,
        coefficients: Optional[Mapping[tuple[Indices, int], Scalar]] = None,
        constant: Union[Scalar, int] = 0,
    ):
        self.dim = dim
        self.degree = degree
        self.constant = scalar(constant) if degree == 0 else LEVEL_RING.zero
        self.coefficients: dict[tuple[Indices, int], Scalar] = {}
        for (indices, target), value in (coefficients or {}).items():
            sign, key = sort_with_sign(indices)
            if len(key) != degree - 1 or not 0 <= target < dim:
                raise ValueError(f"Key {(indices, target)} does not fit degree {degree} on dim {dim}")
            if sign:
                k = (key, target)
                self.coefficients[k] = self.coefficients.get(k, LEVEL_RING.zero) + sign * scalar(value)
        self.coefficients = _clean(self.coefficients)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "TildeCochain":
        return cls(dim, degree)

    def pair(self, target: int, indices: Sequence[int]) -> Scalar:
        """``<τ_target, h(τ_indices)>``."""
        sign, key = sort_with_sign(indices)
        if not sign:
            return LEVEL_RING.zero
        return sign * self.coefficients.get((key, target), LEVEL_RING.zero)

    def is_zero(self) -> bool:
        return not self.coefficients and not self.constant

    def __eq__(self, other) -> bool:
        if not isinstance(other, TildeCochain):
            return NotImplemented
        return (self.dim, self.degree, self.coefficients, self.constant) == (
            other.dim, other.degree, other.coefficients, other.constant
        )

    def __add__(self, other: "TildeCochain") -> "TildeCochain":
        coefficients = dict(self.coefficients)
        for k, v in other.coefficients.items():
            coefficients[k] = coefficients.get(k, LEVEL_RING.zero) + v
        return TildeCochain(self.dim, self.degree, _clean(coefficients), self.constant + other.constant)

    def scale(self, factor: Union[Scalar, int]) -> "TildeCochain":
        return TildeCochain(
            self.dim, self.degree, {k: v * factor for k, v in self.coefficients.items()}, self.constant * factor
        )

    def __neg__(self) -> "TildeCochain":
        return self.scale(-1)

    def __sub__(self, other: "TildeCochain") -> "TildeCochain":
        return self + (-other)

    def __repr__(self) -> str:
        return f"TildeCochain(degree={self.degree}, terms={len(self.coefficients)})"


def _bracket_substituted(
    algebra: LieAlgebraPresentation, indices: Indices, p: int, q: int
) -> list[tuple[Scalar, Indices]]:
    """Terms of ``([τ_p, τ_q], τ_rest...)`` expanded in the basis."""
    rest = tuple(x for k, x in enumerate(indices) if k not in (p, q))
    return [(c, (s,) + rest) for s, c in algebra.bracket_of(indices[p], indices[q]).items()]


def d_trivial(algebra: LieAlgebraPresentation, f: Cochain) -> Cochain:
    """``(df)(τ_1..τ_i) = Σ_{p<q} (-1)^{p+q} f([τ_p, τ_q], τ_1..τ̂_p..τ̂_q..τ_i)``."""
    degree = f.degree + 1
    result = {}
    if degree > algebra.dim or f.is_zero():
        return Cochain(algebra.dim, degree)
    for indices in combinations(range(algebra.dim), degree):
        value = LEVEL_RING.zero
        for p in range(degree):
            for q in range(p + 1, degree):
                sign = parity_sign(p + q)
                for c, arguments in _bracket_substituted(algebra, indices, p, q):
                    value += sign * c * f.evaluate(arguments)
        if value:
            result[indices] = value
    return Cochain(algebra.dim, degree, result)


def coadjoint_pair(algebra: LieAlgebraPresentation, target: int, x: int, functional: Mapping[int, Scalar]) -> Scalar:
    """``<τ_target, ρ(τ_x) ξ> = -ξ([τ_x, τ_target])``."""
    value = LEVEL_RING.zero
    for s, c in algebra.bracket_of(x, target).items():
        value -= c * functional.get(s, LEVEL_RING.zero)
    return value


def d_tilde(algebra: LieAlgebraPresentation, h: TildeCochain) -> TildeCochain:
    """Differential of ``C̃·(g)``; zero on degree 0.

    ``<τ_a, dh(τ_1..τ_i)> = Σ_p (-1)^p <τ_a, ρ(τ_p) h(..τ̂_p..)>
    + Σ_{p<q} (-1)^{p+q+1} <τ_a, h([τ_p, τ_q], ..τ̂_p..τ̂_q..)>`` with 1-based ``p, q``.
    """
    degree = h.degree + 1
    if h.degree == 0 or h.is_zero() or degree - 1 > algebra.dim:
        return TildeCochain(algebra.dim, degree)
    result = {}
    for indices in combinations(range(algebra.dim), degree - 1):
        for p in range(len(indices)):
            rest = indices[:p] + indices[p + 1:]
            functional = {s: h.pair(s, rest) for s in range(algebra.dim)}
            functional = {s: v for s, v in functional.items() if v}
            if not functional:
                continue
            sign = parity_sign(p + 1)
            for a in range(algebra.dim):
                value = coadjoint_pair(algebra, a, indices[p], functional)
                if value:
                    key = (indices, a)
                    result[key] = result.get(key, LEVEL_RING.zero) + sign * value
        for p in range(len(indices)):
            for q in range(p + 1, len(indices)):
                sign = parity_sign(p + q + 1)
                for c, arguments in _bracket_substituted(algebra, indices, p, q):
                    for a in range(algebra.dim):
                        value = h.pair(a, arguments)
                        if value:
                            key = (indices, a)
                            result[key] = result.get(key, LEVEL_RING.zero) + sign * c * value
    return TildeCochain(algebra.dim, degree, _clean(result))


def embed_trivial(f: Cochain) -> TildeCochain:
    """``<τ_1, f̃(τ_2..τ_i)> = f(τ_1..τ_i)``."""
    if f.degree < 1:
        raise ValueError("Only cochains of degree >= 1 embed into C̃")
    result = {}
    for indices, value in f.coefficients.items():
        for k, first in enumerate(indices):
            rest = indices[:k] + indices[k + 1:]
            result[(rest, first)] = parity_sign(k) * value
    return TildeCochain(f.dim, f.degree, result)


def restrict_first_slot(h: TildeCochain) -> Cochain:
    """Reads an embedded cochain back: ``f(τ_1..τ_i) = <τ_1, h(τ_2..τ_i)>``."""
    result = {}
    for (rest, first), value in h.coefficients.items():
        if first in rest:
            continue
        result[(first,) + rest] = value
    return Cochain(h.dim, h.degree, _merge_consistent(result))


def _merge_consistent(values: dict[Indices, Scalar]) -> dict[Indices, Scalar]:
    merged: dict[Indices, Scalar] = {}
    for indices, value in values.items():
        sign, key = sort_with_sign(indices)
        merged.setdefault(key, sign * value)
    return merged
