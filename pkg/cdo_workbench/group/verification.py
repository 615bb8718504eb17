"""Exact checks of the identities behind the embedding of right invariant currents at the dual level."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from cdo_workbench._errors import VerificationFailure
from cdo_workbench.group.cdo import WeightOneElement, WeightOneSector
from cdo_workbench.group.fields import MatrixGroup
from cdo_workbench.helpers.scalars import render_scalar
from cdo_workbench.lie.forms import BilinearForm, dual_level, symbolic_level


logger = logging.getLogger(__name__)


@dataclass
class IdentityCheck:
    name: str
    description: str
    instances: int = 0


@dataclass
class DualEmbeddingReport:
    group: str
    level: list[list[str]]
    dual_level: list[list[str]]
    checks: list[IdentityCheck] = field(default_factory=list)
    pairing_at_identity: list[list[str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.instances for check in self.checks)


class _Checker:
    def __init__(self, group: MatrixGroup):
        self.group = group
        self.checks: list[IdentityCheck] = []

    def run(self, name: str, description: str, instances: Iterable[tuple[str, Callable[[], bool]]]) -> IdentityCheck:
        check = IdentityCheck(name, description)
        for label, holds in instances:
            if not holds():
                raise VerificationFailure(f"{self.group.name}: identity {name} ({description}) fails at {label}")
            check.instances += 1
        logger.debug(f"{self.group.name}: {name} holds on {check.instances} instances")
        self.checks.append(check)
        return check


def _pairs(dim: int):
    return ((i, j) for i in range(dim) for j in range(dim))


def _triples(dim: int):
    return ((i, j, s) for i in range(dim) for j in range(dim) for s in range(dim))


def _transport_checks(group: MatrixGroup, checker: _Checker):
    algebra = group.algebra
    dim = algebra.dim
    names = algebra.basis_names
    lift = group.coordinate_ring.lift
    a = group.transport_matrix()

    def brackets_to(fields, i, j):
        expected = group.combination(fields, {p: lift(c) for p, c in algebra.bracket_of(i, j).items()})
        return group.commutator(fields[i], fields[j]) == expected

    checker.run("left-homomorphism", "[τ_i, τ_j] = τ_[i,j]", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: brackets_to(group.left, i, j)) for i, j in _pairs(dim)
    ))
    checker.run("fields-commute", "[τ_i, τ_j^R] = 0", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: not group.commutator(group.left[i], group.right[j]))
        for i, j in _pairs(dim)
    ))
    checker.run("right-homomorphism", "[τ_i^R, τ_j^R] = τ^R_[i,j]", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: brackets_to(group.right, i, j)) for i, j in _pairs(dim)
    ))
    checker.run("transport-expansion", "τ_i^R = a^{ij} τ_j", (
        (names[i], lambda i=i: group.combination(group.left, a.row(i)) == group.right[i].images) for i in range(dim)
    ))

    def transport_derivative(i, j, s):
        value = group.tau(i, a[j, s])
        for p in range(dim):
            c = algebra.c(i, p, s)
            if c:
                value += lift(c) * a[j, p]
        return not group.reduce(value)

    checker.run("transport-derivative", "τ_i(a^{js}) + c^{ip}_s a^{jp} = 0", (
        (algebra.triple_name(i, j, s), lambda i=i, j=j, s=s: transport_derivative(i, j, s)) for i, j, s in _triples(dim)
    ))

    def transport_bracket(i, j, s):
        value = group.zero
        for p, a_ip in a.row(i).items():
            value += a_ip * group.tau(p, a[j, s])
        for q, c in algebra.bracket_of(i, j).items():
            value -= lift(c) * a[q, s]
        return not group.reduce(value)

    checker.run("transport-bracket", "a^{ip} τ_p(a^{js}) = c^{ij}_q a^{qs}", (
        (algebra.triple_name(i, j, s), lambda i=i, j=j, s=s: transport_bracket(i, j, s)) for i, j, s in _triples(dim)
    ))

    def at_identity(i, j):
        expected = -1 if i == j else 0
        value = group.coordinate_ring.at_identity(a[i, j])
        return value == value.ring(expected)

    checker.run("transport-at-identity", "a = -I at the identity", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: at_identity(i, j)) for i, j in _pairs(dim)
    ))


def check_transport_relations(group: MatrixGroup) -> list[IdentityCheck]:
    """Commutation of the invariant fields and the identities of the transport matrix.

    :raises VerificationFailure: on the first identity that does not reduce to zero
    """
    checker = _Checker(group)
    _transport_checks(group, checker)
    logger.info(f"{group.name}: transport relations hold")
    return checker.checks


def _lie_derivative_checks(group: MatrixGroup, checker: _Checker, sector: WeightOneSector):
    algebra = group.algebra
    dim = algebra.dim
    names = algebra.basis_names
    lift = group.coordinate_ring.lift
    a = group.transport_matrix()

    def left_derivative(i, j):
        # <τ_s, L_{τ_i} ω_j> = -ω_j([τ_i, τ_s])
        expected = {s: lift(algebra.c(s, i, j)) for s in range(dim) if algebra.c(s, i, j)}
        computed = {}
        for s in range(dim):
            value = -group.frame_coordinates(group.commutator(group.left[i], group.left[s])).get(j, group.zero)
            if value:
                computed[s] = value
        return computed == expected and sector.product0(sector.tau(i), sector.omega(j)) == WeightOneElement(w_part=expected)

    checker.run("left-lie-derivative", "τ_i acts on ω_j by c^{si}_j ω_s", (
        (f"({names[i]}, ω_{names[j]})", lambda i=i, j=j: left_derivative(i, j)) for i, j in _pairs(dim)
    ))

    def right_derivative(i, j):
        # L_{a τ_p} ω_j = a L_{τ_p} ω_j + ω_j(τ_p) ∂a
        for s in range(dim):
            value = group.tau(s, a[i, j])
            for p, a_ip in a.row(i).items():
                c = algebra.c(s, p, j)
                if c:
                    value += lift(c) * a_ip
            if group.reduce(value):
                return False
        return sector.product0(sector.right_field(i), sector.omega(j)).is_zero()

    checker.run("right-lie-derivative", "τ_i^R annihilates ω_j", (
        (f"({names[i]}, ω_{names[j]})", lambda i=i, j=j: right_derivative(i, j)) for i, j in _pairs(dim)
    ))


def check_lie_derivatives(group: MatrixGroup, level: Optional[BilinearForm] = None) -> list[IdentityCheck]:
    """Lie derivatives of the invariant 1-forms along left and right invariant fields."""
    checker = _Checker(group)
    sector = WeightOneSector(group, level if level is not None else BilinearForm.zero(group.algebra.dim))
    _lie_derivative_checks(group, checker, sector)
    logger.info(f"{group.name}: Lie derivatives of invariant forms hold")
    return checker.checks


def verify_dual_embedding(group: MatrixGroup, level: Optional[BilinearForm] = None) -> DualEmbeddingReport:
    """Checks that ``j_R`` embeds the currents at the dual level commuting with the left ones.

    :param level: symmetric invariant form, ``t`` times the Killing form when omitted
    :raises VerificationFailure: with the first failing identity
    """
    algebra = group.algebra
    dim = algebra.dim
    names = algebra.basis_names
    if level is None:
        level = symbolic_level(algebra)
    sector = WeightOneSector(group, level)
    dual = dual_level(algebra, level)
    lift = group.coordinate_ring.lift
    checker = _Checker(group)

    _transport_checks(group, checker)
    _lie_derivative_checks(group, checker, sector)

    taus = [sector.tau(i) for i in range(dim)]
    right = [sector.right_field(i) for i in range(dim)]
    j_r = sector.dual_embedding()
    a = group.transport_matrix()

    def bracket_combination(elements: list[WeightOneElement], i: int, j: int) -> WeightOneElement:
        result = WeightOneElement()
        for p, c in algebra.bracket_of(i, j).items():
            result = result + elements[p].scale(lift(c))
        return result

    checker.run("left-currents", "τ_i(1)τ_j = (τ_i, τ_j) and τ_i(0)τ_j = [τ_i, τ_j]", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: (
            sector.product1(taus[i], taus[j]) == lift(level[i, j])
            and sector.product0(taus[i], taus[j]) == bracket_combination(taus, i, j)
        )) for i, j in _pairs(dim)
    ))

    def right_pairing(i, j):
        expected = group.zero
        for p, a_ip in a.row(i).items():
            expected -= lift(dual[p, j]) * a_ip
        return sector.product1(right[i], taus[j]) == group.reduce(expected)

    checker.run("right-pairing", "τ_i^R(1)τ_j = -(τ_p, τ_j)^o a^{ip}", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: right_pairing(i, j)) for i, j in _pairs(dim)
    ))

    def dual_correction(s, i):
        if sector.product1(taus[s], j_r[i]):
            return False
        # the correction solving τ_s(1)(τ_i^R + b^{iq} ω_q) = 0 is unique: b^{is} = -τ_s(1)τ_i^R
        return -sector.product1(taus[s], right[i]) == j_r[i].w_part.get(s, group.zero)

    checker.run("dual-correction", "τ_s(1) j_R(τ_i) = 0 with a unique correction", (
        (f"({names[s]}, {names[i]})", lambda s=s, i=i: dual_correction(s, i)) for s, i in _pairs(dim)
    ))
    checker.run("left-zero-product", "τ_s(0) j_R(τ_i) = 0", (
        (f"({names[s]}, {names[i]})", lambda s=s, i=i: sector.product0(taus[s], j_r[i]).is_zero())
        for s, i in _pairs(dim)
    ))

    pairings = {(i, j): sector.product1(j_r[i], j_r[j]) for i, j in _pairs(dim)}
    checker.run("pairing-constant", "τ_s kills j_R(τ_i)(1)j_R(τ_j)", (
        (algebra.triple_name(s, i, j), lambda s=s, i=i, j=j: not group.tau(s, pairings[i, j]))
        for s, i, j in _triples(dim)
    ))
    checker.run("pairing-value", "j_R(τ_i)(1)j_R(τ_j) = (τ_i, τ_j)^o", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: group.coordinate_ring.at_identity(pairings[i, j]) == dual[i, j])
        for i, j in _pairs(dim)
    ))
    checker.run("dual-bracket", "j_R(τ_i)(0)j_R(τ_j) = j_R([τ_i, τ_j])", (
        (f"({names[i]}, {names[j]})", lambda i=i, j=j: sector.product0(j_r[i], j_r[j]) == bracket_combination(j_r, i, j))
        for i, j in _pairs(dim)
    ))

    report = DualEmbeddingReport(
        group=group.name,
        level=level.rendered_rows(),
        dual_level=dual.rendered_rows(),
        checks=checker.checks,
        pairing_at_identity=[
            [render_scalar(group.coordinate_ring.at_identity(pairings[i, j])) for j in range(dim)] for i in range(dim)
        ],
    )
    logger.info(f"{group.name}: dual embedding verified, {sum(c.instances for c in report.checks)} identities")
    return report
