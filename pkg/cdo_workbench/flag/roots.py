"""Root systems of types A, B, C, D and G2 in simple-root coordinates, with their Weyl groups."""
import logging
import re
from collections import deque
from enum import Enum
from typing import Optional, Sequence

from cdo_workbench._errors import InputError
from cdo_workbench.helpers.suggest import unknown_name_message


logger = logging.getLogger(__name__)

Root = tuple[int, ...]
WeylElement = tuple[tuple[int, ...], ...]


class UnsupportedType(InputError):
    pass


class RootType(Enum):
    def __new__(cls, value: str, min_rank: int, fixed_rank: Optional[int] = None):
        obj = object.__new__(cls)
        obj._value_ = value
        obj.min_rank = min_rank
        obj.fixed_rank = fixed_rank
        return obj

    def __str__(self) -> str:
        return self._value_

    A = "A", 1
    B = "B", 2
    C = "C", 2
    D = "D", 4
    G = "G", 2, 2


def _chain(rank: int) -> list[list[int]]:
    gram = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = 2
        if i + 1 < rank:
            gram[i][i + 1] = gram[i + 1][i] = -1
    return gram


def _gram(kind: RootType, rank: int) -> list[list[int]]:
    """``(α_i, α_j)``, scaled to stay integral."""
    if kind is RootType.A:
        return _chain(rank)
    if kind is RootType.B:
        gram = [[2 * v for v in row] for row in _chain(rank)]
        gram[rank - 1][rank - 1] = 2
        return gram
    if kind is RootType.C:
        gram = _chain(rank)
        gram[rank - 1][rank - 1] = 4
        gram[rank - 2][rank - 1] = gram[rank - 1][rank - 2] = -2
        return gram
    if kind is RootType.D:
        gram = _chain(rank - 1) + [[0] * (rank - 1)]
        for row in gram:
            row.append(0)
        gram[rank - 1][rank - 1] = 2
        gram[rank - 3][rank - 1] = gram[rank - 1][rank - 3] = -1
        return gram
    return [[2, -3], [-3, 6]]


class RootSystem:
    """Roots as integer coordinate vectors over the simple roots ``α_1 … α_r``.

    Indices of simple roots are 1-based wherever they are exposed.
    """

    def __init__(self, kind: RootType, rank: int):
        if rank < kind.min_rank or (kind.fixed_rank and rank != kind.fixed_rank):
            raise UnsupportedType(f"Type {kind}{rank} is not supported")
        self.kind = kind
        self.rank = rank
        self.gram = _gram(kind, rank)
        self.cartan = [[2 * self.gram[i][j] // self.gram[j][j] for j in range(rank)] for i in range(rank)]
        self.roots = self._close_roots()
        self.positive_roots = sorted((r for r in self.roots if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
        self.negative_roots = [tuple(-c for c in r) for r in self.positive_roots]
        logger.debug(f"{self.name}: {len(self.positive_roots)} positive roots")

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def simple_roots(self) -> list[Root]:
        return [tuple(int(i == k) for i in range(self.rank)) for k in range(self.rank)]

    def pairing(self, root: Sequence[int], k: int) -> int:
        """``<β, α_k^∨>`` for a 0-based simple root index."""
        return sum(b * self.cartan[i][k] for i, b in enumerate(root))

    def reflect(self, root: Sequence[int], k: int) -> Root:
        n = self.pairing(root, k)
        return tuple(b - n * int(i == k) for i, b in enumerate(root))

    def _close_roots(self) -> set[Root]:
        found = set(self.simple_roots)
        queue = deque(found)
        while queue:
            root = queue.popleft()
            for k in range(self.rank):
                image = self.reflect(root, k)
                if image not in found:
                    found.add(image)
                    queue.append(image)
        return found

    def reflection_matrix(self, k: int) -> WeylElement:
        """``s_k`` on simple-root coordinates; column ``j`` is ``s_k(α_j)``."""
        columns = [self.reflect(simple, k) for simple in self.simple_roots]
        return tuple(tuple(columns[j][i] for j in range(self.rank)) for i in range(self.rank))

    def levi_roots(self, subset: Sequence[int]) -> list[Root]:
        """Positive roots supported on the 1-based simple roots of ``subset``."""
        allowed = {s - 1 for s in subset}
        return [r for r in self.positive_roots if all(c == 0 or i in allowed for i, c in enumerate(r))]

    def check_subset(self, subset: Sequence[int]):
        for s in subset:
            if not 1 <= s <= self.rank:
                raise InputError(f"Simple root index {s} out of range for {self.name}")

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"


_NAME = re.compile(r"^([A-Za-z])(\d+)$")
KNOWN_TYPES = ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2")


def build_root_system(kind: str, rank: Optional[int] = None) -> RootSystem:
    """``build_root_system("A", 2)`` or ``build_root_system("G2")``."""
    if rank is None:
        m = _NAME.match(kind.strip())
        if not m:
            raise UnsupportedType(unknown_name_message("root system", kind, KNOWN_TYPES))
        kind, rank = m.group(1), int(m.group(2))
    try:
        root_type = RootType(kind.strip().upper())
    except ValueError:
        raise UnsupportedType(unknown_name_message("root system", f"{kind}{rank}", KNOWN_TYPES))
    return RootSystem(root_type, rank)


def _multiply(x: WeylElement, y: WeylElement) -> WeylElement:
    size = len(x)
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(size)) for j in range(size)) for i in range(size))


def weyl_group(rs: RootSystem, subset: Optional[Sequence[int]] = None) -> list[WeylElement]:
    """Elements generated by the simple reflections in ``subset`` (1-based, all when None), by closure."""
    if subset is None:
        subset = range(1, rs.rank + 1)
    rs.check_subset(subset)
    generators = [rs.reflection_matrix(s - 1) for s in subset]
    identity = tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank))
    elements = {identity}
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for generator in generators:
            product = _multiply(generator, element)
            if product not in elements:
                elements.add(product)
                queue.append(product)
    logger.debug(f"Weyl group of {rs.name} on {list(subset)} has order {len(elements)}")
    return sorted(elements)
