"""Mode algebra and normally ordered states of a free-field vertex superalgebra.

Every field uses ``x(z) = Σ_n x_(n) z^{-n-1}``; modes with ``n <= -1`` create, the others
annihilate the vacuum. ``x_(n)`` shifts the conformal weight by ``weight(x) - n - 1``. A state is a
sparse map from monomials (tuples of creation modes in canonical order, read left to right as
operators applied to the vacuum) to scalars.
"""
import logging
from itertools import product
from typing import Iterator, Optional, Sequence

from cdo_workbench._errors import InputError
from cdo_workbench.fock.fields import CurrentSector, FieldKind, FieldSpec, Torus
from cdo_workbench.helpers.scalars import LEVEL_RING, Scalar
from cdo_workbench.helpers.suggest import unknown_name_message


logger = logging.getLogger(__name__)

Mode = tuple[int, int]
Monomial = tuple[Mode, ...]
State = dict[Monomial, Scalar]
BlockKey = tuple[int, int, Torus]

FERMI = -1
BOSE = 1


class TruncationExceeded(InputError):
    pass


class UnknownField(InputError):
    pass


def add_state(target: State, state: State, factor=1) -> State:
    for monomial, value in state.items():
        total = target.get(monomial, LEVEL_RING.zero) + factor * value
        if total:
            target[monomial] = total
        else:
            target.pop(monomial, None)
    return target


class FockSpace:
    """Vacuum module of a list of generating fields, truncated at ``max_weight``.

    :param sectors: current sectors referred to by ``FieldSpec.sector``
    """

    max_weight = 2
    # extra room for intermediate states of composite modes
    headroom = 2

    def __init__(self, fields: Sequence[FieldSpec], sectors: Sequence[CurrentSector] = (), max_weight: Optional[int] = None):
        if max_weight is not None:
            self.max_weight = max_weight
        if self.max_weight < 0:
            raise InputError(f"Maximal weight must be nonnegative, got {self.max_weight}")
        self.sectors = list(sectors)
        length = max((len(f.torus) for f in fields), default=0)
        self.fields = [
            FieldSpec(f.name, f.kind, f.partner, tuple(f.torus) + (0,) * (length - len(f.torus)), f.sector, f.basis_index)
            for f in fields
        ]
        self.torus_length = length
        self._index = {f.name: i for i, f in enumerate(self.fields)}
        if len(self._index) != len(self.fields):
            raise InputError("Field names must be distinct")
        self._currents = {
            (f.sector, f.basis_index): i for i, f in enumerate(self.fields) if f.kind is FieldKind.CURRENT
        }
        self._cache: dict[tuple[Mode, Monomial], State] = {}
        logger.debug(f"Fock space on {len(self.fields)} fields up to weight {self.max_weight}")

    def field_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownField(unknown_name_message("field", name, self._index)) from None

    def field(self, name: str) -> FieldSpec:
        return self.fields[self.field_index(name)]

    def mode(self, name: str, n: int) -> Mode:
        return self.field_index(name), n

    def mode_shift(self, mode: Mode) -> int:
        return self.fields[mode[0]].weight - mode[1] - 1

    def is_odd(self, mode: Mode) -> bool:
        return self.fields[mode[0]].odd

    def weight(self, monomial: Monomial) -> int:
        return sum(self.mode_shift(m) for m in monomial)

    def charge(self, monomial: Monomial) -> int:
        return sum(self.fields[i].charge for i, _ in monomial)

    def torus(self, monomial: Monomial) -> Torus:
        total = [0] * self.torus_length
        for i, _ in monomial:
            for k, x in enumerate(self.fields[i].torus):
                total[k] += x
        return tuple(total)

    def block_key(self, monomial: Monomial) -> BlockKey:
        return self.weight(monomial), self.charge(monomial), self.torus(monomial)

    def render(self, monomial: Monomial) -> str:
        if not monomial:
            return "|0>"
        return " ".join(f"{self.fields[i].name}({n})" for i, n in monomial) + " |0>"

    def bracket(self, x: Mode, y: Mode) -> tuple[Scalar, dict[Mode, Scalar]]:
        """Supercommutator ``[x, y}`` as a central scalar plus a combination of modes."""
        (i, m), (j, n) = x, y
        fx, fy = self.fields[i], self.fields[j]
        zero = LEVEL_RING.zero
        if fx.partner == fy.name:
            if m + n != -1:
                return zero, {}
            if fx.kind is FieldKind.GAMMA:
                return -LEVEL_RING.one, {}
            return LEVEL_RING.one, {}
        if fx.kind is FieldKind.CURRENT and fy.kind is FieldKind.CURRENT and fx.sector == fy.sector:
            sector = self.sectors[fx.sector]
            a, b = fx.basis_index, fy.basis_index
            central = m * sector.level[a, b] if m + n == 0 else zero
            modes = {
                (self._currents[(fx.sector, p)], m + n): c for p, c in sector.algebra.bracket_of(a, b).items()
            }
            return central, modes
        return zero, {}

    def apply_to_monomial(self, mode: Mode, monomial: Monomial) -> State:
        cached = self._cache.get((mode, monomial))
        if cached is not None:
            return cached
        result = self._apply_uncached(mode, monomial)
        self._cache[(mode, monomial)] = result
        return result

    def _apply_uncached(self, mode: Mode, monomial: Monomial) -> State:
        creation = mode[1] <= -1
        if not monomial:
            return {(mode,): LEVEL_RING.one} if creation else {}
        first, rest = monomial[0], monomial[1:]
        if creation and mode <= first:
            if mode == first and self.is_odd(mode):
                return {}
            created = (mode,) + monomial
            if self.weight(created) > self.max_weight + self.headroom:
                raise TruncationExceeded(f"{self.render(created)} exceeds weight {self.max_weight}")
            return {created: LEVEL_RING.one}
        # x y R|0> = ±y (x R|0>) + [x, y} R|0>
        sign = FERMI if self.is_odd(mode) and self.is_odd(first) else BOSE
        result: State = {}
        for moved, c in self.apply_to_monomial(mode, rest).items():
            add_state(result, self.apply_to_monomial(first, moved), sign * c)
        central, modes = self.bracket(mode, first)
        if central:
            add_state(result, {rest: central})
        for other, c in modes.items():
            add_state(result, self.apply_to_monomial(other, rest), c)
        return result

    def apply_mode(self, mode: Mode, state: State) -> State:
        """``x_(n)`` on a state, normally ordered."""
        result: State = {}
        for monomial, c in state.items():
            add_state(result, self.apply_to_monomial(mode, monomial), c)
        self.require_within(result)
        return result

    def require_within(self, state: State):
        for monomial in state:
            if self.weight(monomial) > self.max_weight:
                raise TruncationExceeded(f"{self.render(monomial)} exceeds weight {self.max_weight}")

    def creation_modes(self) -> list[Mode]:
        modes = []
        for i, f in enumerate(self.fields):
            n = -1
            while f.weight - n - 1 <= self.max_weight:
                modes.append((i, n))
                n -= 1
        return sorted(modes)

    def has_unbounded_blocks(self) -> bool:
        """Even creators of weight zero make graded pieces infinite without a torus weight."""
        return any(not f.odd and f.weight == 0 for f in self.fields)

    def monomials(self, torus: Optional[Torus] = None) -> Iterator[Monomial]:
        """Canonical monomials of weight at most ``max_weight``, of the given torus weight if any."""
        if torus is None and self.has_unbounded_blocks():
            raise TruncationExceeded("Weight zero bosonic creators need a torus weight to bound the blocks")
        zero_cap = self.max_weight + 1 + sum(abs(x) for x in (torus or ()))
        modes = self.creation_modes()
        choices = []
        for mode in modes:
            shift = self.mode_shift(mode)
            if self.is_odd(mode):
                choices.append(range(2))
            elif shift == 0:
                choices.append(range(zero_cap + 1))
            else:
                choices.append(range(self.max_weight // shift + 1))
        yield from self._combinations(modes, choices, 0, (), 0, torus)

    def _combinations(self, modes, choices, position, prefix, weight, torus) -> Iterator[Monomial]:
        if position == len(modes):
            if torus is None or self.torus(prefix) == tuple(torus):
                yield prefix
            return
        mode = modes[position]
        shift = self.mode_shift(mode)
        for count in choices[position]:
            total = weight + count * shift
            if total > self.max_weight:
                break
            yield from self._combinations(modes, choices, position + 1, prefix + (mode,) * count, total, torus)

    def blocks(self, torus: Optional[Torus] = None) -> dict[BlockKey, list[Monomial]]:
        """Canonical basis of every (weight, charge, torus) piece up to ``max_weight``."""
        result: dict[BlockKey, list[Monomial]] = {}
        for monomial in self.monomials(torus):
            result.setdefault(self.block_key(monomial), []).append(monomial)
        return dict(sorted(result.items()))

    def torus_window(self, radius: int) -> list[Torus]:
        """All torus weights with entries in ``[-radius, radius]``."""
        return [tuple(t) for t in product(range(-radius, radius + 1), repeat=self.torus_length)]
