import pytest

from cdo_workbench._errors import InputError
from cdo_workbench.brst.charges import antighost, brst_charge, ghost_currents
from cdo_workbench.brst.complex import (
    BrstComplex, DifferentialNotSquareZero, ModuleKind, ModuleSpec, StabilityViolation, brst_square, minus_killing_module,
    module_differential, relative_cohomology, relative_subcomplex
)
from cdo_workbench.brst.levels import LevelVerdict, admissible_levels, killing_restriction_ratio
from cdo_workbench.brst.oracle import dense_cohomology_oracle, differentials_agree, first_order_pole
from cdo_workbench.fock.elements import FieldElement
from cdo_workbench.lie.builtins import abelian, builtin_algebra, builtin_subalgebra
from cdo_workbench.lie.forms import BilinearForm, critical_level


def test_brst_charge_of_abelian_is_zero():
    assert brst_charge(abelian(2)).is_zero()
    assert all(current.is_zero() for current in ghost_currents(abelian(2)))


def test_brst_charge_sl2(sl2):
    charge = brst_charge(sl2)
    # [e, f] = h gives -:φ_h φ*_e φ*_f:
    assert charge.terms[(("phi_h", 0), ("phi*_e", 0), ("phi*_f", 0))] == -1
    assert len(charge.terms) == 3


def test_square_matches_killing_operator_sl2(sl2):
    report = brst_square(sl2, 2)
    assert not report.vanishes
    assert report.blocks > 0


@pytest.mark.parametrize("name", ["heisenberg3", "abelian2", "nilradical(sl3)"])
def test_square_vanishes_without_killing_form(name):
    assert brst_square(builtin_algebra(name), 2).vanishes


def test_square_nonzero_on_borel(borel_sl2):
    # the Killing form of the Borel is nonzero on the Cartan
    assert not brst_square(borel_sl2, 1).vanishes
    assert not brst_square(borel_sl2, 2).vanishes


@pytest.mark.slow
def test_square_matches_killing_operator_sl3(sl3):
    report = brst_square(sl3, 1)
    assert not report.vanishes


def test_minus_killing_module_cancels_the_square(sl2):
    _, report = module_differential(sl2, minus_killing_module(sl2), 2)
    assert report.vanishes


def test_zero_level_module_keeps_the_square(sl2):
    _, report = module_differential(sl2, ModuleSpec(ModuleKind.CURRENTS, BilinearForm.zero(3)), 2)
    assert not report.vanishes


def test_cohomology_refuses_nonzero_square(sl2):
    with pytest.raises(DifferentialNotSquareZero):
        BrstComplex(sl2, max_weight=1).cohomology()


def test_current_module_needs_a_level(sl2):
    with pytest.raises(InputError):
        BrstComplex(sl2, ModuleSpec(ModuleKind.CURRENTS))


def test_betagamma_needs_abelian(sl2):
    with pytest.raises(InputError, match="abelian"):
        BrstComplex(sl2, ModuleSpec(ModuleKind.BETAGAMMA))


def test_ghosts_of_abelian_line():
    table = BrstComplex(abelian(1), max_weight=1).cohomology()
    assert table.dims == {0: {0: 1, 1: 1}, 1: {-1: 1, 0: 1, 1: 1, 2: 1}}
    assert table.dims == {w: {p: d for p, d in row.items() if d} for w, row in table.chain_dims.items()}


def test_betagamma_reduction_of_the_line():
    complex_ = BrstComplex(abelian(1), ModuleSpec(ModuleKind.BETAGAMMA), max_weight=2)
    table = complex_.cohomology()
    assert table.dims[0] == {0: 1}
    assert all(not row for weight, row in table.dims.items() if weight)
    assert table.total(0) == 1
    assert (0,) in table.torus_weights


@pytest.mark.slow
def test_betagamma_reduction_at_weight_three():
    table = BrstComplex(abelian(1), ModuleSpec(ModuleKind.BETAGAMMA), max_weight=3).cohomology()
    assert table.dims[0] == {0: 1}
    assert sum(sum(row.values()) for row in table.dims.values()) == 1


def test_euler_characteristics_agree(heisenberg3):
    table = BrstComplex(heisenberg3, max_weight=2).cohomology()
    assert table.euler_characteristics() == table.chain_euler_characteristics()


def test_heisenberg_weight_zero_is_lie_algebra_cohomology(heisenberg3):
    table = BrstComplex(heisenberg3, max_weight=1).cohomology()
    # weight zero states are the exterior algebra on the antighosts, with the Chevalley-Eilenberg differential
    assert table.dims[0] == {0: 1, 1: 2, 2: 2, 3: 1}


def test_dense_oracle_agrees(heisenberg3):
    complex_ = BrstComplex(heisenberg3, max_weight=1)
    assert differentials_agree(complex_)
    assert dense_cohomology_oracle(complex_).dims == complex_.cohomology().dims


def test_dense_oracle_agrees_with_currents(sl2):
    complex_ = BrstComplex(sl2, minus_killing_module(sl2), max_weight=1)
    assert differentials_agree(complex_)
    assert dense_cohomology_oracle(complex_).dims == complex_.cohomology().dims


def test_first_order_pole_of_the_ghost(sl2):
    complex_ = BrstComplex(sl2, max_weight=1)
    pole = first_order_pole(complex_, complex_.element, "phi*_e")
    assert not pole.is_zero()


def test_relative_subcomplex_of_borel(borel_sl2):
    complex_ = BrstComplex(borel_sl2, minus_killing_module(borel_sl2), max_weight=1)
    kept, report = relative_subcomplex(complex_)
    assert report.stable
    assert report.basis_size == sum(len(basis) for basis in kept.values())
    h = borel_sl2.index("h")
    cartan_antighost = complex_.space.mode(f"phi*_{borel_sl2.basis_names[h]}", -1)
    assert all(cartan_antighost not in m for basis in kept.values() for m in basis)


def test_relative_subcomplex_drops_nonzero_torus(borel_sl2):
    complex_ = BrstComplex(borel_sl2, minus_killing_module(borel_sl2), max_weight=1)
    kept, report = relative_subcomplex(complex_)
    current = (complex_.space.mode("J_e", -1),)
    assert complex_.space.torus(current) != (0,)
    assert all(current not in basis for basis in kept.values())
    assert report.excluded > 0


def test_relative_subcomplex_rejects_unstable_differential(borel_sl2, monkeypatch):
    complex_ = BrstComplex(borel_sl2, minus_killing_module(borel_sl2), max_weight=1)
    outside = (complex_.space.mode(antighost("h"), -1),)
    monkeypatch.setattr(complex_.differential, "on_monomial", lambda monomial: {outside: 1})
    with pytest.raises(StabilityViolation, match="outside the relative subcomplex"):
        relative_subcomplex(complex_)


def test_relative_cohomology_of_borel(borel_sl2):
    complex_ = BrstComplex(borel_sl2, minus_killing_module(borel_sl2), max_weight=1)
    table, _ = relative_cohomology(complex_)
    assert table.dims[0] == {0: 1}
    assert table.euler_characteristics() == table.chain_euler_characteristics()


def test_admissible_level_of_borel(sl2):
    levels = admissible_levels(builtin_subalgebra(sl2, "borel"))
    assert levels.verdict is LevelVerdict.UNIQUE
    assert levels.is_critical
    assert levels.level == critical_level(sl2)


def test_admissible_levels_of_nilradical(sl3):
    levels = admissible_levels(builtin_subalgebra(sl3, "nilradical"))
    assert levels.verdict is LevelVerdict.ALL


def test_no_admissible_level_for_parabolic(sl3):
    levels = admissible_levels(builtin_subalgebra(sl3, "parabolic", [2]))
    assert levels.verdict is LevelVerdict.NONE
    assert levels.level is None


def test_borel_of_sl3_is_critical(sl3):
    levels = admissible_levels(builtin_subalgebra(sl3, "borel"))
    assert levels.verdict is LevelVerdict.UNIQUE and levels.is_critical


def test_killing_restriction_ratio(sl2):
    assert killing_restriction_ratio(builtin_subalgebra(sl2, "borel")) == 2
    assert killing_restriction_ratio(builtin_subalgebra(sl2, "nilradical")) is None


def test_zero_element_differential():
    complex_ = BrstComplex(abelian(2), max_weight=1)
    assert complex_.element == FieldElement()
    assert complex_.square().vanishes
