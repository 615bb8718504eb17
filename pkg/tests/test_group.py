import pytest

from cdo_workbench.group.cdo import WeightOneElement, WeightOneSector, dual_embedding
from cdo_workbench.group.coordinate_ring import CoordinateRing, UnknownGroup, parse_group_name
from cdo_workbench.group.fields import MatrixGroup
from cdo_workbench.group.verification import check_lie_derivatives, check_transport_relations, verify_dual_embedding
from cdo_workbench.lie.forms import BilinearForm, critical_level, killing_form


@pytest.fixture(scope="module")
def sl2_group():
    return MatrixGroup("SL2")


@pytest.mark.parametrize("name, expected", [("SL2", (2, False)), ("sl(3)", (3, False)), ("N3", (3, True))])
def test_group_names(name, expected):
    assert parse_group_name(name) == expected


def test_unknown_group_suggests():
    with pytest.raises(UnknownGroup, match="did you mean 'SL2'"):
        parse_group_name("SK2")


def test_coordinate_ring_relation():
    ring = CoordinateRing(2)
    x = ring.generators
    determinant = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)]
    assert ring.reduce(determinant) == ring.ring.one
    assert ring.at_identity(x[(0, 0)] + x[(0, 1)]) == 1


def test_unipotent_ring_has_no_relation():
    ring = CoordinateRing(3, unipotent=True)
    assert ring.relation is None
    assert sorted(ring.generators) == [(0, 1), (0, 2), (1, 2)]


def test_fields_at_the_identity(sl2_group):
    ring = sl2_group.coordinate_ring
    e = sl2_group.algebra.index("e")
    # τ_e(x12) at the identity is the (1, 2) entry of e
    assert ring.at_identity(sl2_group.tau(e, ring.generators[(0, 1)])) == 1


def test_transport_relations_sl2(sl2_group):
    checks = check_transport_relations(sl2_group)
    by_name = {check.name: check.instances for check in checks}
    assert by_name["transport-derivative"] == 27
    assert by_name["transport-at-identity"] == 9
    assert all(by_name.values())


def test_lie_derivatives_sl2(sl2_group):
    assert all(check.instances == 9 for check in check_lie_derivatives(sl2_group))


def test_right_field_is_transported(sl2_group):
    sector = WeightOneSector(sl2_group, killing_form(sl2_group.algebra))
    a = sl2_group.transport_matrix()
    for i in range(3):
        assert sector.right_field(i) == WeightOneElement(a.row(i))


def test_dual_embedding_symbolic_sl2(sl2_group):
    report = verify_dual_embedding(sl2_group)
    assert report.passed
    assert report.group == "SL2"
    # (h, h)° = -8 - 8t for the level t·κ
    assert report.pairing_at_identity[1][1] == "-8*t - 8"


def test_dual_embedding_at_critical_level(sl2_group):
    algebra = sl2_group.algebra
    report = verify_dual_embedding(sl2_group, critical_level(algebra))
    assert report.passed
    assert report.dual_level == report.level


def test_dual_embedding_at_level_zero(sl2_group):
    j_r = dual_embedding(sl2_group, BilinearForm.zero(3))
    sector = WeightOneSector(sl2_group, BilinearForm.zero(3))
    h = sl2_group.algebra.index("h")
    value = sector.product1(j_r[h], j_r[h])
    assert sl2_group.coordinate_ring.at_identity(value) == -8


@pytest.mark.parametrize("name", ["N2", "N3"])
def test_unipotent_groups(name):
    group = MatrixGroup(name)
    report = verify_dual_embedding(group)
    assert report.passed
    # the Killing form of a nilpotent algebra vanishes, so the dual level is -t·κ = 0 on the level line
    assert all(entry == "0" for row in report.dual_level for entry in row)


def test_weight_one_arithmetic(sl2_group):
    one = sl2_group.one
    u = WeightOneElement({0: one}, {1: one})
    assert (u - u).is_zero()
    assert u.scale(2 * one) == u + u


@pytest.mark.slow
def test_dual_embedding_sl3_level_zero():
    group = MatrixGroup("SL3")
    report = verify_dual_embedding(group, BilinearForm.zero(8))
    assert report.passed


def test_symbolic_level_is_a_multiple_of_t(sl2_group):
    report = verify_dual_embedding(sl2_group)
    assert report.level[1][1] == "8*t"
