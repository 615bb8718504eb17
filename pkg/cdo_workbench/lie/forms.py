"""Symmetric bilinear forms on a Lie algebra: Killing, levels, dual and critical levels."""
import logging
from typing import Mapping, Optional, Sequence, Union

from sympy import QQ

from cdo_workbench._errors import InputError
from cdo_workbench.helpers.linalg import build_matrix, nullspace, rank, span_rank
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, rational, render_scalar, scalar, t
from cdo_workbench.lie.algebra import LieAlgebraPresentation, Vector, add_into


logger = logging.getLogger(__name__)


class NotInvariant(InputError):
    pass


class BilinearForm:
    """Symmetric matrix over scalars, stored sparsely on ``(i, j)`` with ``i <= j``."""

    def __init__(self, dim: int, entries: Optional[Mapping[tuple[int, int], Scalar]] = None, invariant: bool = False):
        self.dim = dim
        self.invariant = invariant
        self._entries: dict[tuple[int, int], Scalar] = {}
        for (i, j), v in (entries or {}).items():
            v = scalar(v)
            key = (i, j) if i <= j else (j, i)
            if key in self._entries and self._entries[key] != v:
                raise InputError(f"Form is not symmetric at ({i}, {j})")
            if v:
                self._entries[key] = v

    @classmethod
    def zero(cls, dim: int) -> "BilinearForm":
        return cls(dim, invariant=True)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[Scalar, int, str]]], invariant: bool = False) -> "BilinearForm":
        dim = len(rows)
        for i in range(dim):
            for j in range(i + 1, dim):
                if scalar(rows[i][j]) != scalar(rows[j][i]):
                    raise InputError(f"Form is not symmetric at ({i}, {j})")
        entries = {(i, j): rows[i][j] for i in range(dim) for j in range(i, dim)}
        return cls(dim, entries, invariant)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self._entries.get((i, j) if i <= j else (j, i), LEVEL_RING.zero)

    def entries(self) -> dict[tuple[int, int], Scalar]:
        return dict(self._entries)

    def rows(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self._entries.items(), key=lambda kv: kv[0]))))

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        entries = dict(self._entries)
        for key, v in other._entries.items():
            entries[key] = entries.get(key, LEVEL_RING.zero) + v
        return BilinearForm(self.dim, entries, self.invariant and other.invariant)

    def __neg__(self) -> "BilinearForm":
        return BilinearForm(self.dim, {k: -v for k, v in self._entries.items()}, self.invariant)

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        return self + (-other)

    def scale(self, factor: Union[Scalar, int, str]) -> "BilinearForm":
        factor = scalar(factor)
        return BilinearForm(self.dim, {k: factor * v for k, v in self._entries.items()}, self.invariant)

    def __rmul__(self, factor) -> "BilinearForm":
        return self.scale(factor)

    def evaluate(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        total = LEVEL_RING.zero
        for i, xi in x.items():
            for j, yj in y.items():
                total += xi * yj * self[i, j]
        return total

    def rendered_rows(self) -> list[list[str]]:
        return [[render_scalar(v) for v in row] for row in self.rows()]

    def __repr__(self) -> str:
        return f"BilinearForm({self.rendered_rows()})"


class SubalgebraSpec:
    """A subalgebra together with its inclusion into the parent.

    :param inclusion: image of each subalgebra basis vector in parent coordinates
    """

    def __init__(self, parent: LieAlgebraPresentation, algebra: LieAlgebraPresentation, inclusion: Sequence[Vector]):
        if len(inclusion) != algebra.dim:
            raise InputError(f"Inclusion of {algebra.name} lists {len(inclusion)} vectors for dim {algebra.dim}")
        self.parent = parent
        self.algebra = algebra
        self.inclusion = [dict(v) for v in inclusion]
        for a in range(algebra.dim):
            for b in range(algebra.dim):
                image = {}
                for p, v in algebra.bracket_of(a, b).items():
                    add_into(image, self.inclusion[p], v)
                if image != parent.bracket(self.inclusion[a], self.inclusion[b]):
                    raise InputError(
                        f"{algebra.name} is not a subalgebra of {parent.name}: "
                        f"bracket {algebra.triple_name(a, b)} is not preserved"
                    )

    @property
    def name(self) -> str:
        return self.algebra.name


def invariance_residuals(algebra: LieAlgebraPresentation, form: BilinearForm) -> dict[tuple[int, int, int], Scalar]:
    """Nonzero values of ``([x,y],z) + (y,[x,z])`` on basis triples."""
    residuals = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for k in range(j, algebra.dim):
                value = LEVEL_RING.zero
                for p, c in algebra.bracket_of(i, j).items():
                    value += c * form[p, k]
                for p, c in algebra.bracket_of(i, k).items():
                    value += c * form[j, p]
                if value:
                    residuals[(i, j, k)] = value
    return residuals


def is_invariant(algebra: LieAlgebraPresentation, form: BilinearForm) -> bool:
    return form.dim == algebra.dim and not invariance_residuals(algebra, form)


def require_invariant(algebra: LieAlgebraPresentation, form: BilinearForm) -> BilinearForm:
    if form.dim != algebra.dim:
        raise NotInvariant(f"Form of size {form.dim} does not fit {algebra.name} of dim {algebra.dim}")
    residuals = invariance_residuals(algebra, form)
    if residuals:
        (i, j, k), value = next(iter(residuals.items()))
        raise NotInvariant(
            f"Form is not ad-invariant on {algebra.name}: triple {algebra.triple_name(i, j, k)} "
            f"gives {render_scalar(value)}"
        )
    form.invariant = True
    return form


def killing_form(algebra: LieAlgebraPresentation) -> BilinearForm:
    """``(τ_i, τ_j) = c^{ip}_q c^{jq}_p``."""
    entries = {}
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            value = LEVEL_RING.zero
            for p in range(algebra.dim):
                for q, c_ip in algebra.bracket_of(i, p).items():
                    value += c_ip * algebra.c(j, q, p)
            if value:
                entries[(i, j)] = value
    return BilinearForm(algebra.dim, entries, invariant=True)


def _pair_index(dim: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(dim) for b in range(a, dim)]


def invariant_form_space(algebra: LieAlgebraPresentation) -> list[BilinearForm]:
    """Basis of ``(S²g*)^g``, solved by exact row reduction of the invariance system."""
    pairs = _pair_index(algebra.dim)
    position = {pair: m for m, pair in enumerate(pairs)}

    def unknown(a: int, b: int) -> int:
        return position[(a, b) if a <= b else (b, a)]

    rows: dict[int, dict[int, object]] = {}
    n_rows = 0
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for k in range(j, algebra.dim):
                row: dict[int, object] = {}
                for p, c in algebra.bracket_of(i, j).items():
                    m = unknown(p, k)
                    row[m] = row.get(m, QQ.zero) + rational(c)
                for p, c in algebra.bracket_of(i, k).items():
                    m = unknown(j, p)
                    row[m] = row.get(m, QQ.zero) + rational(c)
                row = {m: v for m, v in row.items() if v}
                if row:
                    rows[n_rows] = row
                    n_rows += 1
    system = build_matrix(rows, (n_rows, len(pairs)))
    basis = []
    for vector in nullspace(system):
        entries = {pairs[m]: scalar(QQ.to_sympy(v)) for m, v in enumerate(vector) if v}
        basis.append(BilinearForm(algebra.dim, entries, invariant=True))
    logger.debug(f"(S²g*)^g of {algebra.name} has dimension {len(basis)}")
    return basis


def dual_level(algebra: LieAlgebraPresentation, form: BilinearForm) -> BilinearForm:
    """``(,)^o = -(,)_K - (,)``."""
    return -killing_form(algebra) - form


def critical_level(algebra: LieAlgebraPresentation) -> BilinearForm:
    return killing_form(algebra).scale(QQ(-1, 2))


def symbolic_level(algebra: LieAlgebraPresentation) -> BilinearForm:
    """``t`` times the Killing form, or times the first invariant form when Killing vanishes."""
    killing = killing_form(algebra)
    if not killing.is_zero():
        return killing.scale(t)
    basis = invariant_form_space(algebra)
    if not basis:
        return BilinearForm.zero(algebra.dim)
    return basis[0].scale(t)


def restrict_form(sub: SubalgebraSpec, form: BilinearForm) -> BilinearForm:
    """Pullback of a parent form along the inclusion."""
    entries = {}
    for a in range(sub.algebra.dim):
        for b in range(a, sub.algebra.dim):
            value = form.evaluate(sub.inclusion[a], sub.inclusion[b])
            if value:
                entries[(a, b)] = value
    return BilinearForm(sub.algebra.dim, entries, invariant=form.invariant)


def form_vector(form: BilinearForm) -> dict[int, object]:
    """Rational coordinates of a constant form on the ``i <= j`` entries."""
    pairs = _pair_index(form.dim)
    return {m: rational(form[pair]) for m, pair in enumerate(pairs) if form[pair]}


def _span_dimension(algebra: LieAlgebraPresentation, vectors: list[Vector]) -> int:
    return span_rank([{p: rational(v) for p, v in vec.items()} for vec in vectors], algebra.dim)


def is_nilpotent(algebra: LieAlgebraPresentation) -> bool:
    """Lower central series ``g ⊃ [g,g] ⊃ [g,[g,g]] ⊃ …`` reaches zero."""
    current = [{i: LEVEL_RING.one} for i in range(algebra.dim)]
    dimension = algebra.dim
    while dimension:
        following = []
        for i in range(algebra.dim):
            for vector in current:
                image = algebra.bracket({i: LEVEL_RING.one}, vector)
                if image:
                    following.append(image)
        new_dimension = _span_dimension(algebra, following) if following else 0
        if new_dimension == dimension:
            return False
        current, dimension = following, new_dimension
    return True


def is_semisimple(algebra: LieAlgebraPresentation) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    killing = killing_form(algebra)
    rows = {i: {j: rational(v) for j, v in enumerate(row) if v} for i, row in enumerate(killing.rows())}
    return rank(build_matrix(rows, (algebra.dim, algebra.dim))) == algebra.dim
