"""Exact sparse linear algebra over QQ on top of sympy's DomainMatrix."""
import logging
from typing import Any, Iterable, Optional

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from cdo_workbench.helpers.scalars import Scalar, from_t_coefficients, t_coefficients


logger = logging.getLogger(__name__)

SparseRows = dict[int, dict[int, Any]]


def build_matrix(rows: SparseRows, shape: tuple[int, int]) -> DomainMatrix:
    """Sparse matrix over QQ; zero entries are dropped."""
    clean: SparseRows = {}
    for i, row in rows.items():
        converted = {j: QQ.convert(v) for j, v in row.items() if v}
        if converted:
            clean[i] = converted
    return DomainMatrix(clean, shape, QQ)


def from_columns(columns: list[dict[int, Any]], nrows: int) -> DomainMatrix:
    rows: SparseRows = {}
    for j, column in enumerate(columns):
        for i, v in column.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return build_matrix(rows, (nrows, len(columns)))


def rank(matrix: DomainMatrix) -> int:
    if 0 in matrix.shape:
        return 0
    _, _, pivots = matrix.rref_den()
    return len(pivots)


def nullspace(matrix: DomainMatrix) -> list[list[Any]]:
    """Basis of the kernel as lists of QQ elements."""
    nrows, ncols = matrix.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [[QQ.one if i == j else QQ.zero for j in range(ncols)] for i in range(ncols)]
    return matrix.nullspace().to_list()


def solve(matrix: DomainMatrix, rhs: dict[int, Any]) -> Optional[dict[int, Any]]:
    """One solution of ``matrix @ x = rhs`` or None when the system is inconsistent.

    :param rhs: sparse right-hand side, row index -> QQ
    :return: sparse solution, column index -> QQ
    """
    nrows, ncols = matrix.shape
    rhs = {i: QQ.convert(v) for i, v in rhs.items() if v}
    if not rhs:
        return {}
    if ncols == 0 or nrows == 0:
        return None
    augmented = matrix.hstack(build_matrix({i: {0: v} for i, v in rhs.items()}, (nrows, 1)))
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        return None
    table = reduced.to_dod()
    solution = {}
    for row, column in enumerate(pivots):
        value = table.get(row, {}).get(ncols)
        if value:
            solution[column] = value
    return solution


def solve_polynomial(matrix: DomainMatrix, rhs: dict[int, Scalar]) -> Optional[dict[int, Scalar]]:
    """Like :func:`solve` for a rational matrix and a right-hand side polynomial in ``t``.

    The system splits by powers of ``t``; each power is solved on its own.
    """
    by_power: dict[int, dict[int, Any]] = {}
    for i, value in rhs.items():
        for power, coeff in t_coefficients(value).items():
            by_power.setdefault(power, {})[i] = coeff
    parts: dict[int, dict[int, Any]] = {}
    for power, part in by_power.items():
        solution = solve(matrix, part)
        if solution is None:
            logger.debug(f"No solution in t-degree {power}")
            return None
        parts[power] = solution
    result: dict[int, Scalar] = {}
    for power, solution in parts.items():
        for j, v in solution.items():
            result.setdefault(j, {})[power] = v
    return {j: from_t_coefficients(coefficients) for j, coefficients in result.items()}


def span_rank(vectors: Iterable[dict[int, Any]], length: int) -> int:
    """Rank of a family of sparse rational vectors of the given length."""
    return rank(from_columns(list(vectors), length))


def in_span(vectors: list[dict[int, Any]], vector: dict[int, Any], length: int) -> bool:
    return span_rank(vectors + [vector], length) == span_rank(vectors, length)
