"""Builtin presentations: sl(n), its Borel, nilradical and parabolic subalgebras, Heisenberg and abelian algebras.

Basis of sl(n): positive root vectors ``E_ab`` (a < b) ordered by height then row, the Cartan
elements ``H_k = E_kk - E_{k+1,k+1}``, then negative root vectors ``E_ba`` in the same order.
For n = 2 the names are ``e, h, f``.
"""
import logging
import re
from os import path
from typing import Any, Mapping, Optional, Sequence

from cdo_workbench._errors import InputError
from cdo_workbench.helpers.scalars import LEVEL_RING
from cdo_workbench.helpers.suggest import unknown_name_message
from cdo_workbench.lie.algebra import LieAlgebraPresentation, load_presentation, validate_presentation
from cdo_workbench.lie.forms import SubalgebraSpec


logger = logging.getLogger(__name__)

KNOWN_NAMES = (
    "sl2", "sl3", "sl4",
    "borel(sl2)", "borel(sl3)", "nilradical(sl2)", "nilradical(sl3)", "parabolic(sl3;2)",
    "heisenberg3", "heisenberg5", "abelian1", "abelian2", "abelian3",
)

MatrixEntries = dict[tuple[int, int], Any]


class UnknownAlgebra(InputError):
    pass


def _sl_labels(n: int) -> list[tuple]:
    positives = sorted(((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)), key=lambda ab: (ab[1] - ab[0], ab[0]))
    labels: list[tuple] = [("E", a, b) for a, b in positives]
    labels += [("H", k) for k in range(1, n)]
    labels += [("E", b, a) for a, b in positives]
    return labels


def _label_name(label: tuple, n: int) -> str:
    if n == 2:
        return {("E", 1, 2): "e", ("H", 1): "h", ("E", 2, 1): "f"}[label]
    if label[0] == "H":
        return f"H{label[1]}"
    return f"E{label[1]}{label[2]}"


def _label_matrix(label: tuple) -> MatrixEntries:
    if label[0] == "H":
        k = label[1]
        return {(k - 1, k - 1): 1, (k, k): -1}
    return {(label[1] - 1, label[2] - 1): 1}


def _label_weight(label: tuple, n: int) -> tuple[int, ...]:
    weight = [0] * (n - 1)
    if label[0] == "E":
        a, b = label[1], label[2]
        low, high, sign = (a, b, 1) if a < b else (b, a, -1)
        for k in range(low, high):
            weight[k - 1] = sign
    return tuple(weight)


def matrix_product(x: MatrixEntries, y: MatrixEntries) -> MatrixEntries:
    result: MatrixEntries = {}
    for (r, k), xv in x.items():
        for (k2, c), yv in y.items():
            if k == k2:
                value = result.get((r, c), 0) + xv * yv
                if value:
                    result[(r, c)] = value
                else:
                    result.pop((r, c), None)
    return result


def matrix_commutator(x: MatrixEntries, y: MatrixEntries) -> MatrixEntries:
    result = matrix_product(x, y)
    for key, v in matrix_product(y, x).items():
        value = result.get(key, 0) - v
        if value:
            result[key] = value
        else:
            result.pop(key, None)
    return result


class MatrixRealization:
    """Basis vectors of a subalgebra of sl(n) as n×n matrices.

    :param positions: position of each basis vector in the sl(n) basis
    """

    def __init__(self, size: int, positions: Sequence[int]):
        self.size = size
        self.positions = list(positions)
        self._labels = _sl_labels(size)
        self.matrices = [_label_matrix(self._labels[p]) for p in self.positions]
        self._index_of_label = {label: i for i, label in enumerate(self._labels)}

    @property
    def is_unipotent(self) -> bool:
        """Only strictly upper triangular matrices."""
        return all(self._labels[p][0] == "E" and self._labels[p][1] < self._labels[p][2] for p in self.positions)

    @property
    def is_full(self) -> bool:
        return len(self.positions) == len(self._labels)

    def coordinates(self, matrix: Mapping[tuple[int, int], Any]) -> Optional[dict[int, Any]]:
        """Coefficients of a matrix in this basis, or None if it lies outside the span.

        Entries may be any ring elements; the decomposition is linear.
        """
        n = self.size
        sl_coordinates: dict[int, Any] = {}
        diagonal = [0] * n
        for (r, c), v in matrix.items():
            if not v:
                continue
            if r == c:
                diagonal[r] = v
            else:
                sl_coordinates[self._index_of_label[("E", r + 1, c + 1)]] = v
        running = 0
        for k in range(1, n):
            running = running + diagonal[k - 1]
            if running:
                sl_coordinates[self._index_of_label[("H", k)]] = running
        if running + diagonal[n - 1]:
            return None
        result = {}
        lookup = {p: i for i, p in enumerate(self.positions)}
        for p, v in sl_coordinates.items():
            if p not in lookup:
                return None
            result[lookup[p]] = v
        return result


def _from_labels(n: int, positions: Sequence[int], name: str) -> LieAlgebraPresentation:
    realization = MatrixRealization(n, positions)
    labels = _sl_labels(n)
    table = {}
    for a, pa in enumerate(positions):
        for b, pb in enumerate(positions):
            commutator = matrix_commutator(realization.matrices[a], realization.matrices[b])
            coordinates = realization.coordinates(commutator)
            if coordinates is None:
                raise InputError(f"{name} is not closed under the bracket")
            if coordinates:
                table[(a, b)] = coordinates
    return validate_presentation(
        [_label_name(labels[p], n) for p in positions],
        table,
        name=name,
        weights=[_label_weight(labels[p], n) for p in positions],
        realization=realization,
    )


def _sl_positions(n: int, kind: str, subset: Sequence[int] = ()) -> list[int]:
    labels = _sl_labels(n)
    positives = [i for i, label in enumerate(labels) if label[0] == "E" and label[1] < label[2]]
    cartan = [i for i, label in enumerate(labels) if label[0] == "H"]
    negatives = [i for i, label in enumerate(labels) if label[0] == "E" and label[1] > label[2]]
    if kind == "sl":
        return list(range(len(labels)))
    if kind == "nilradical":
        return positives
    if kind == "borel":
        return positives + cartan
    if kind == "parabolic":
        allowed = set(subset)
        levi = [i for i in negatives if set(range(labels[i][2], labels[i][1])) <= allowed]
        return positives + cartan + levi
    raise UnknownAlgebra(f"Unknown subalgebra kind {kind!r}")


def _subset_label(subset: Sequence[int]) -> str:
    return ",".join(str(s) for s in sorted(subset))


def sl(n: int) -> LieAlgebraPresentation:
    if n < 2:
        raise UnknownAlgebra(f"sl{n} is not supported, n must be at least 2")
    return _from_labels(n, _sl_positions(n, "sl"), f"sl{n}")


def heisenberg(dim: int) -> LieAlgebraPresentation:
    if dim < 3 or dim % 2 == 0:
        raise UnknownAlgebra(f"heisenberg{dim}: the dimension must be odd and at least 3")
    k = (dim - 1) // 2
    if k == 1:
        names = ["x", "y", "z"]
    else:
        names = [f"x{i}" for i in range(1, k + 1)] + [f"y{i}" for i in range(1, k + 1)] + ["z"]
    table = {}
    for i in range(k):
        table[(i, k + i)] = {dim - 1: LEVEL_RING.one}
        table[(k + i, i)] = {dim - 1: -LEVEL_RING.one}
    return validate_presentation(names, table, name=f"heisenberg{dim}")


def abelian(n: int) -> LieAlgebraPresentation:
    return validate_presentation([f"a{i}" for i in range(1, n + 1)], {}, name=f"abelian{n}")


def builtin_subalgebra(parent: LieAlgebraPresentation, kind: str, subset: Sequence[int] = ()) -> SubalgebraSpec:
    """Borel, nilradical or parabolic subalgebra of a builtin sl(n), with its inclusion.

    :param subset: simple roots (1-based) whose negative root vectors join a parabolic
    """
    realization = parent.realization
    if realization is None or not realization.is_full:
        raise UnknownAlgebra(f"Subalgebras are available for builtin sl(n) only, not {parent.name}")
    n = realization.size
    for s in subset:
        if not 1 <= s < n:
            raise InputError(f"Simple root index {s} out of range for sl{n}")
    positions = _sl_positions(n, kind, subset)
    suffix = f";{_subset_label(subset)}" if kind == "parabolic" else ""
    algebra = _from_labels(n, positions, f"{kind}(sl{n}{suffix})")
    lookup = {p: i for i, p in enumerate(realization.positions)}
    inclusion = [{lookup[p]: LEVEL_RING.one} for p in positions]
    return SubalgebraSpec(parent, algebra, inclusion)


def parent_inclusion(algebra: LieAlgebraPresentation) -> Optional[SubalgebraSpec]:
    """The inclusion of a builtin proper subalgebra into its sl(n); None for anything else."""
    realization = algebra.realization
    if realization is None or realization.is_full:
        return None
    parent = sl(realization.size)
    lookup = {p: i for i, p in enumerate(parent.realization.positions)}
    return SubalgebraSpec(parent, algebra, [{lookup[p]: LEVEL_RING.one} for p in realization.positions])


_SL = re.compile(r"^sl(\d+)$")
_SUB = re.compile(r"^(borel|nilradical)\(sl(\d+)\)$")
_PARABOLIC = re.compile(r"^parabolic\(sl(\d+);([\d,]*)\)$")
_HEISENBERG = re.compile(r"^heisenberg(\d+)$")
_ABELIAN = re.compile(r"^abelian(\d+)$")


def builtin_algebra(name: str) -> LieAlgebraPresentation:
    """Builds a presentation from a name such as ``sl3``, ``borel(sl2)``, ``parabolic(sl3;2)``."""
    key = name.replace(" ", "").lower()
    if m := _SL.match(key):
        return sl(int(m.group(1)))
    if m := _SUB.match(key):
        return builtin_subalgebra(sl(int(m.group(2))), m.group(1)).algebra
    if m := _PARABOLIC.match(key):
        subset = [int(s) for s in m.group(2).split(",") if s]
        return builtin_subalgebra(sl(int(m.group(1))), "parabolic", subset).algebra
    if m := _HEISENBERG.match(key):
        return heisenberg(int(m.group(1)))
    if m := _ABELIAN.match(key):
        return abelian(int(m.group(1)))
    raise UnknownAlgebra(unknown_name_message("algebra", name, KNOWN_NAMES))


def resolve_algebra(name_or_path: str) -> LieAlgebraPresentation:
    """A builtin name, or a path to a JSON presentation."""
    if name_or_path.endswith(".json") or path.isfile(name_or_path):
        return load_presentation(name_or_path)
    return builtin_algebra(name_or_path)
