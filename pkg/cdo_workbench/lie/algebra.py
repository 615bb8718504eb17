import json
import logging
from os import PathLike
from typing import Any, Mapping, Optional, Sequence, Union

from cdo_workbench._errors import InputError
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar, ScalarParseError, is_rational, scalar


logger = logging.getLogger(__name__)

Vector = dict[int, Scalar]
BracketTable = dict[tuple[int, int], Vector]


class AntisymmetryViolation(InputError):
    pass


class JacobiViolation(InputError):
    pass


class PresentationFormatError(InputError):
    pass


def add_into(target: Vector, vector: Mapping[int, Scalar], factor: Union[Scalar, int] = 1) -> Vector:
    for p, v in vector.items():
        value = target.get(p, LEVEL_RING.zero) + factor * v
        if value:
            target[p] = value
        else:
            target.pop(p, None)
    return target


class LieAlgebraPresentation:
    """Finite-dimensional Lie algebra given by structure constants ``[τ_i, τ_j] = Σ_p c^{ij}_p τ_p``.

    Instances are immutable once validated; use :func:`validate_presentation` to build one.
    """

    def __init__(
        self,
        name: str,
        basis_names: Sequence[str],
        brackets: BracketTable,
        weights: Optional[Sequence[tuple[int, ...]]] = None,
        realization: Any = None,
    ):
        self.name = name
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        self._brackets: BracketTable = {
            key: dict(row) for key, row in brackets.items() if any(row.values())
        }
        # h*-weights of basis vectors in simple-root coordinates, known for the sl(n) family
        self.weights = tuple(tuple(w) for w in weights) if weights is not None else None
        self.realization = realization

    def __repr__(self) -> str:
        return f"LieAlgebraPresentation({self.name!r}, dim={self.dim})"

    def bracket_of(self, i: int, j: int) -> Vector:
        return self._brackets.get((i, j), {})

    def c(self, i: int, j: int, p: int) -> Scalar:
        return self._brackets.get((i, j), {}).get(p, LEVEL_RING.zero)

    def bracket(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, xi in x.items():
            for j, yj in y.items():
                row = self._brackets.get((i, j))
                if row:
                    add_into(result, row, xi * yj)
        return result

    def nonzero_brackets(self) -> BracketTable:
        return dict(self._brackets)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise InputError(f"{name!r} is not a basis element of {self.name}") from None

    @property
    def is_abelian(self) -> bool:
        return not self._brackets

    def triple_name(self, *indices: int) -> str:
        return "(" + ", ".join(self.basis_names[i] for i in indices) + ")"


def validate_presentation(
    basis_names: Sequence[str],
    table: Mapping[tuple[int, int], Mapping[int, Any]],
    name: str = "",
    weights: Optional[Sequence[tuple[int, ...]]] = None,
    realization: Any = None,
) -> LieAlgebraPresentation:
    """Checks antisymmetry and the Jacobi identity of a structure-constant table.

    :param table: ``(i, j) -> {p: c^{ij}_p}``; both orders of a pair must be present when nonzero
    :return: the validated presentation
    """
    dim = len(basis_names)
    if len(set(basis_names)) != dim:
        raise PresentationFormatError(f"Basis names of {name or 'algebra'} are not distinct")
    brackets: BracketTable = {}
    for (i, j), row in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise PresentationFormatError(f"Bracket index ({i}, {j}) out of range for dim {dim}")
        clean = {}
        for p, v in row.items():
            if not 0 <= p < dim:
                raise PresentationFormatError(f"Coefficient index {p} out of range for dim {dim}")
            value = scalar(v)
            if not is_rational(value):
                raise PresentationFormatError(f"Structure constants must be rational, got {value} at ({i}, {j}, {p})")
            if value:
                clean[p] = value
        if clean:
            brackets[(i, j)] = clean

    algebra = LieAlgebraPresentation(name, basis_names, brackets, weights, realization)

    for i in range(dim):
        for j in range(i, dim):
            forward, backward = algebra.bracket_of(i, j), algebra.bracket_of(j, i)
            for p in set(forward) | set(backward):
                if forward.get(p, LEVEL_RING.zero) + backward.get(p, LEVEL_RING.zero):
                    raise AntisymmetryViolation(
                        f"c^{{ij}}_p != -c^{{ji}}_p for (i, j, p) = {algebra.triple_name(i, j, p)}"
                    )

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                total: Vector = {}
                add_into(total, algebra.bracket(algebra.bracket_of(i, j), {k: LEVEL_RING.one}))
                add_into(total, algebra.bracket(algebra.bracket_of(j, k), {i: LEVEL_RING.one}))
                add_into(total, algebra.bracket(algebra.bracket_of(k, i), {j: LEVEL_RING.one}))
                if total:
                    raise JacobiViolation(f"Jacobi identity fails on {algebra.triple_name(i, j, k)}")

    logger.debug(f"Validated {name or 'algebra'} of dim {dim} with {len(brackets)} nonzero brackets")
    return algebra


def presentation_from_mapping(raw: Mapping[str, Any]) -> LieAlgebraPresentation:
    """Reads the JSON presentation format.

    A bracket ``[i, j, coefficients]`` implies ``[j, i, -coefficients]`` unless the reverse
    pair is listed too, in which case the two must agree.
    """
    try:
        basis = list(raw["basis"])
        dim = int(raw.get("dim", len(basis)))
        entries = raw.get("brackets", [])
    except (KeyError, TypeError, ValueError) as e:
        raise PresentationFormatError(f"Malformed presentation: {e}") from e
    if dim != len(basis):
        raise PresentationFormatError(f"dim is {dim} but {len(basis)} basis names were given")

    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for entry in entries:
        try:
            i, j, coefficients = entry
            i, j = int(i), int(j)
        except (TypeError, ValueError) as e:
            raise PresentationFormatError(f"Malformed bracket entry {entry!r}") from e
        if len(coefficients) != dim:
            raise PresentationFormatError(f"Bracket [{i}, {j}] must list {dim} coefficients")
        if (i, j) in table:
            raise PresentationFormatError(f"Bracket [{i}, {j}] is listed twice")
        try:
            table[(i, j)] = {p: scalar(str(v)) for p, v in enumerate(coefficients)}
        except ScalarParseError as e:
            raise PresentationFormatError(f"Bracket [{i}, {j}]: {e}") from e

    listed = set(table)
    for (i, j) in listed:
        if (j, i) not in listed:
            table[(j, i)] = {p: -v for p, v in table[(i, j)].items()}
    return validate_presentation(basis, table, name=str(raw.get("name", "")))


def load_presentation(path: Union[str, PathLike]) -> LieAlgebraPresentation:
    try:
        with open(path, encoding="utf8") as f:
            raw = json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise PresentationFormatError(f"{path} is not valid JSON: {e}") from e
    except UnicodeDecodeError as e:
        raise PresentationFormatError(f"{path} is not UTF-8 text: {e}") from e
    return presentation_from_mapping(raw)
