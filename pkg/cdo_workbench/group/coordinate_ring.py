"""Coordinate rings of SL(n) and of its unipotent upper triangular subgroup.

Generators are the level parameter ``t`` and matrix entries ``x_ab`` (row-major), graded
lexicographic order. For SL(n) the relation ``det(x) = 1`` is used as a rewrite rule on its
leading term ``x_11 x_22 … x_nn``; the unipotent ring is free in ``x_ab``, ``a < b``.
"""
import logging
import re
from typing import Optional

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from cdo_workbench._errors import InputError
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar
from cdo_workbench.helpers.suggest import unknown_name_message


logger = logging.getLogger(__name__)

KNOWN_GROUPS = ("SL2", "SL3", "N2", "N3")


class UnknownGroup(InputError):
    pass


class CoordinateRing:
    def __init__(self, size: int, unipotent: bool = False):
        if not 2 <= size <= 9:
            raise UnknownGroup(f"Matrix size {size} is not supported, use 2..9")
        self.size = size
        self.unipotent = unipotent
        entries = [
            (a, b) for a in range(size) for b in range(size) if not unipotent or a < b
        ]
        names = ["t"] + [f"x{a + 1}{b + 1}" for a, b in entries]
        self.ring, self.t, *generators = ring(names, QQ, grlex)
        self.generators: dict[tuple[int, int], PolyElement] = dict(zip(entries, generators))
        self.relation: Optional[PolyElement] = None
        if not unipotent:
            self.relation = self.determinant(self.matrix()) - 1
        logger.debug(f"Coordinate ring of {'N' if unipotent else 'SL'}({size}) with {len(entries)} entries")

    @property
    def name(self) -> str:
        return f"{'N' if self.unipotent else 'SL'}{self.size}"

    def matrix(self) -> dict[tuple[int, int], PolyElement]:
        """The generic group element ``X``."""
        result = {}
        for a in range(self.size):
            for b in range(self.size):
                if (a, b) in self.generators:
                    result[(a, b)] = self.generators[(a, b)]
                elif a == b:
                    result[(a, b)] = self.ring.one
        return result

    def determinant(self, matrix: dict[tuple[int, int], PolyElement]) -> PolyElement:
        return _determinant(matrix, list(range(self.size)), list(range(self.size)), self.ring)

    def adjugate(self, matrix: dict[tuple[int, int], PolyElement]) -> dict[tuple[int, int], PolyElement]:
        """``adj(X)``, equal to ``X^{-1}`` on the group."""
        n = self.size
        result = {}
        for a in range(n):
            for b in range(n):
                rows = [r for r in range(n) if r != b]
                cols = [c for c in range(n) if c != a]
                minor = _determinant(matrix, rows, cols, self.ring)
                value = minor if (a + b) % 2 == 0 else -minor
                if value:
                    result[(a, b)] = self.reduce(value)
        return result

    def reduce(self, p: PolyElement) -> PolyElement:
        if self.relation is None or not p:
            return p
        return p.rem(self.relation)

    def lift(self, value: Scalar) -> PolyElement:
        return value.set_ring(self.ring)

    def at_identity(self, p: PolyElement) -> Scalar:
        """Evaluation at the identity matrix, a polynomial in ``t``."""
        substitution = [(g, 1 if a == b else 0) for (a, b), g in self.generators.items()]
        if not substitution:
            return p.set_ring(LEVEL_RING)
        return p.evaluate(substitution).set_ring(LEVEL_RING)

    def is_constant(self, p: PolyElement) -> bool:
        """No matrix entry occurs in ``p``."""
        return all(not any(monom[1:]) for monom in p.monoms())

    def derivative(self, p: PolyElement, entry: tuple[int, int]) -> PolyElement:
        return p.diff(self.generators[entry])


def _determinant(matrix: dict, rows: list[int], cols: list[int], poly_ring) -> PolyElement:
    if not rows:
        return poly_ring.one
    first, rest = rows[0], rows[1:]
    total = poly_ring.zero
    for k, c in enumerate(cols):
        entry = matrix.get((first, c))
        if not entry:
            continue
        minor = _determinant(matrix, rest, cols[:k] + cols[k + 1:], poly_ring)
        total += entry * minor if k % 2 == 0 else -entry * minor
    return total


_SL = re.compile(r"^sl\(?(\d+)\)?$")
_N = re.compile(r"^n\(?(\d+)\)?$")


def parse_group_name(name: str) -> tuple[int, bool]:
    """``SL2`` -> ``(2, False)``, ``N3`` -> ``(3, True)``."""
    key = name.replace(" ", "").lower()
    if m := _SL.match(key):
        return int(m.group(1)), False
    if m := _N.match(key):
        return int(m.group(1)), True
    raise UnknownGroup(unknown_name_message("group", name, KNOWN_GROUPS))
