"""Conformal weight one part of the chiral differential operators on a matrix group.

A weight one element is ``Σ f_i*τ_i + Σ g_j ω_j`` with ``f*τ`` the (-1)-product of a function
and a left invariant field and ``ω_j`` the left invariant 1-forms dual to ``τ_j``. Products
are exact in the coordinate ring and the level parameter.
"""
import logging
from typing import Mapping, Optional

from sympy.polys.rings import PolyElement

from cdo_workbench.group.fields import MatrixGroup
from cdo_workbench.lie.forms import BilinearForm, dual_level, require_invariant


logger = logging.getLogger(__name__)

Coefficients = dict[int, PolyElement]


def _clean(part: Optional[Mapping[int, PolyElement]]) -> Coefficients:
    return {k: v for k, v in (part or {}).items() if v}


class WeightOneElement:
    """``t_part`` holds the coefficients of ``τ_j``, ``w_part`` those of ``ω_j``."""

    def __init__(self, t_part: Optional[Mapping[int, PolyElement]] = None, w_part: Optional[Mapping[int, PolyElement]] = None):
        self.t_part = _clean(t_part)
        self.w_part = _clean(w_part)

    def is_zero(self) -> bool:
        return not self.t_part and not self.w_part

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightOneElement):
            return NotImplemented
        return self.t_part == other.t_part and self.w_part == other.w_part

    def __add__(self, other: "WeightOneElement") -> "WeightOneElement":
        t_part, w_part = dict(self.t_part), dict(self.w_part)
        for k, v in other.t_part.items():
            t_part[k] = t_part[k] + v if k in t_part else v
        for k, v in other.w_part.items():
            w_part[k] = w_part[k] + v if k in w_part else v
        return WeightOneElement(t_part, w_part)

    def __neg__(self) -> "WeightOneElement":
        return WeightOneElement({k: -v for k, v in self.t_part.items()}, {k: -v for k, v in self.w_part.items()})

    def __sub__(self, other: "WeightOneElement") -> "WeightOneElement":
        return self + (-other)

    def scale(self, factor) -> "WeightOneElement":
        """Multiplication by a constant."""
        return WeightOneElement(
            {k: v * factor for k, v in self.t_part.items()}, {k: v * factor for k, v in self.w_part.items()}
        )

    def __repr__(self) -> str:
        return f"WeightOneElement(t={len(self.t_part)} terms, ω={len(self.w_part)} terms)"


class _Accumulator:
    """Collects a product; ``∂`` of a function is applied once per distinct function at the end."""

    def __init__(self, group: MatrixGroup):
        self.group = group
        self.t_part: Coefficients = {}
        self.w_part: Coefficients = {}
        self.derivatives: dict[PolyElement, PolyElement] = {}

    def add_t(self, index: int, value: PolyElement):
        if value:
            self.t_part[index] = self.t_part.get(index, self.group.zero) + value

    def add_w(self, index: int, value: PolyElement):
        if value:
            self.w_part[index] = self.w_part.get(index, self.group.zero) + value

    def add_d(self, function: PolyElement, coefficient: PolyElement):
        """Adds ``coefficient · ∂function``."""
        if function and coefficient and not self.group.coordinate_ring.is_constant(function):
            function = self.group.reduce(function)
            self.derivatives[function] = self.derivatives.get(function, self.group.zero) + coefficient

    def add(self, element: WeightOneElement, sign: int = 1):
        for k, v in element.t_part.items():
            self.add_t(k, sign * v)
        for k, v in element.w_part.items():
            self.add_w(k, sign * v)

    def result(self) -> WeightOneElement:
        for function, coefficient in self.derivatives.items():
            if not coefficient:
                continue
            for s in range(self.group.algebra.dim):
                self.add_w(s, coefficient * self.group.tau(s, function))
        reduce = self.group.reduce
        return WeightOneElement(
            {k: reduce(v) for k, v in self.t_part.items()}, {k: reduce(v) for k, v in self.w_part.items()}
        )


class WeightOneSector:
    """Weight ≤ 1 products of the chiral differential operators on ``group`` at a level.

    :param level: symmetric form ``(,)`` with ``τ_{i(1)}τ_j = (τ_i, τ_j)``
    """

    def __init__(self, group: MatrixGroup, level: BilinearForm):
        self.group = group
        self.level = level
        algebra = group.algebra
        self.dim = algebra.dim
        lift = group.coordinate_ring.lift
        self._level = {(p, q): lift(level[p, q]) for p in range(self.dim) for q in range(self.dim) if level[p, q]}
        self._brackets = {
            (p, q): {s: lift(c) for s, c in algebra.bracket_of(p, q).items()}
            for p in range(self.dim)
            for q in range(self.dim)
            if algebra.bracket_of(p, q)
        }

    def _b(self, p: int, q: int) -> PolyElement:
        return self._level.get((p, q), self.group.zero)

    def _bracket(self, p: int, q: int) -> Coefficients:
        return self._brackets.get((p, q), {})

    def tau(self, i: int) -> WeightOneElement:
        return WeightOneElement({i: self.group.one})

    def omega(self, j: int) -> WeightOneElement:
        return WeightOneElement(w_part={j: self.group.one})

    def right_field(self, i: int) -> WeightOneElement:
        """``τ_i^R = Σ_p a^{ip} τ_p``."""
        return WeightOneElement(self.group.transport_matrix().row(i))

    def d(self, function: PolyElement) -> WeightOneElement:
        """``∂a = Σ_s τ_s(a) ω_s``."""
        return WeightOneElement(w_part={s: self.group.tau(s, function) for s in range(self.dim)})

    def _product1_fields(self, f: PolyElement, p: int, g: PolyElement, q: int) -> PolyElement:
        tau = self.group.tau
        return f * g * self._b(p, q) - f * tau(q, tau(p, g)) - g * tau(p, tau(q, f)) - tau(p, g) * tau(q, f)

    def product1(self, u: WeightOneElement, v: WeightOneElement) -> PolyElement:
        """``u_{(1)} v``; the τ×Ω pairing is ``⟨τ_i, ω_j⟩ = δ_ij`` and Ω×Ω pairs to zero."""
        total = self.group.zero
        for p, f in u.t_part.items():
            for q, g in v.t_part.items():
                total += self._product1_fields(f, p, g, q)
            if p in v.w_part:
                total += f * v.w_part[p]
        for r, h in u.w_part.items():
            if r in v.t_part:
                total += h * v.t_part[r]
        return self.group.reduce(total)

    def _field_product0(self, f: PolyElement, p: int, v: WeightOneElement, out: _Accumulator, sign: int = 1):
        """Adds ``sign · (f*τ_p)_{(0)} v``."""
        tau = self.group.tau
        derivative_f = self.group.zero
        collapsed = self.group.zero
        for q, g in v.t_part.items():
            tau_p_g = tau(p, g)
            tau_q_f = tau(q, f)
            out.add_t(q, sign * f * tau_p_g)
            out.add_t(p, -sign * g * tau_q_f)
            out.add_d(tau_p_g, sign * tau_q_f)
            for s, c in self._bracket(p, q).items():
                out.add_t(s, sign * c * f * g)
                out.add_d(g, sign * c * tau(s, f))
                derivative_f += c * tau(s, g)
            derivative_f += g * self._b(p, q)
            collapsed += g * tau_q_f
        if collapsed:
            out.add_d(tau(p, collapsed), -sign * self.group.one)
        for r, k in v.w_part.items():
            out.add_w(r, sign * f * tau(p, k))
            for s in range(self.dim):
                c = self._bracket(s, p).get(r)
                if c:
                    out.add_w(s, sign * c * f * k)
            if r == p:
                derivative_f += k
        out.add_d(f, sign * derivative_f)

    def product0(self, u: WeightOneElement, v: WeightOneElement) -> WeightOneElement:
        """``u_{(0)} v``; 1-form summands of ``u`` go through ``x_{(0)}y = -y_{(0)}x + ∂(x_{(1)}y)``."""
        out = _Accumulator(self.group)
        for p, f in u.t_part.items():
            self._field_product0(f, p, v, out)
        for r, h in u.w_part.items():
            form = WeightOneElement(w_part={r: h})
            for q, g in v.t_part.items():
                self._field_product0(g, q, form, out, sign=-1)
            if r in v.t_part:
                out.add_d(v.t_part[r] * h, self.group.one)
        return out.result()

    def dual_embedding(self) -> list[WeightOneElement]:
        """``j_R(τ_i) = τ_i^R + (τ_p, τ_q)^o a^{ip} ω_q``."""
        require_invariant(self.group.algebra, self.level)
        dual = dual_level(self.group.algebra, self.level)
        lift = self.group.coordinate_ring.lift
        transport = self.group.transport_matrix()
        result = []
        for i in range(self.dim):
            row = transport.row(i)
            w_part = {}
            for q in range(self.dim):
                value = self.group.zero
                for p, a in row.items():
                    if dual[p, q]:
                        value += lift(dual[p, q]) * a
                if value:
                    w_part[q] = self.group.reduce(value)
            result.append(WeightOneElement(row, w_part))
        logger.info(f"{self.group.name}: dual embedding built on {self.dim} generators")
        return result


def dual_embedding(group: MatrixGroup, level: BilinearForm) -> list[WeightOneElement]:
    return WeightOneSector(group, level).dual_embedding()
