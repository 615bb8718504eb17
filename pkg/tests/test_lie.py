from os import path

import pytest
from hypothesis import given, settings, strategies as st

from cdo_workbench.helpers.scalars import LEVEL_RING, scalar, t
from cdo_workbench.lie.algebra import (
    AntisymmetryViolation, JacobiViolation, PresentationFormatError, load_presentation, presentation_from_mapping,
    validate_presentation
)
from cdo_workbench.lie.builtins import (
    UnknownAlgebra, abelian, builtin_algebra, builtin_subalgebra, heisenberg, parent_inclusion, sl
)
from cdo_workbench.lie.forms import (
    BilinearForm, NotInvariant, critical_level, dual_level, invariant_form_space, is_invariant, is_nilpotent,
    is_semisimple, killing_form, require_invariant, restrict_form, symbolic_level
)
from tests.conftest import DATA


def test_sl2_from_json_matches_builtin(sl2):
    loaded = load_presentation(path.join(DATA, "sl2.json"))
    assert loaded.basis_names == ("e", "h", "f")
    assert loaded.nonzero_brackets() == sl2.nonzero_brackets()
    assert loaded.bracket_of(0, 1) == {0: LEVEL_RING(-2)}


def test_broken_json_is_rejected():
    with pytest.raises(AntisymmetryViolation):
        load_presentation(path.join(DATA, "broken.json"))


def test_undecodable_file_is_rejected(tmp_path):
    target = tmp_path / "latin1.json"
    target.write_bytes(b'{"name": "\xff\xfe", "dim": 1}')
    with pytest.raises(PresentationFormatError, match="UTF-8"):
        load_presentation(target)


def test_reverse_pair_is_implied():
    algebra = presentation_from_mapping({"basis": ["x", "y", "z"], "brackets": [[0, 1, ["0", "0", "1"]]]})
    assert algebra.bracket_of(1, 0) == {2: LEVEL_RING(-1)}


def test_abelian_accepted():
    assert abelian(2).is_abelian


def test_jacobi_violation_names_triple():
    table = {
        (0, 1): {1: 1}, (1, 0): {1: -1},
        (0, 2): {2: 1}, (2, 0): {2: -1},
        (1, 2): {0: 1}, (2, 1): {0: -1},
    }
    with pytest.raises(JacobiViolation, match=r"\(x, y, z\)"):
        validate_presentation(["x", "y", "z"], table, name="bad")


def test_killing_sl2(sl2):
    killing = killing_form(sl2)
    assert killing[1, 1] == 8
    assert killing[0, 2] == killing[2, 0] == 4
    assert killing[0, 0] == killing[0, 1] == killing[2, 2] == 0
    assert is_invariant(sl2, killing)


@pytest.mark.parametrize("algebra", [abelian(3), heisenberg(3), heisenberg(5), builtin_algebra("nilradical(sl3)")])
def test_killing_vanishes_on_nilpotent(algebra):
    assert is_nilpotent(algebra)
    assert killing_form(algebra).is_zero()


@pytest.mark.parametrize("algebra, dimension", [(sl(2), 1), (sl(3), 1), (abelian(2), 3), (abelian(3), 6), (heisenberg(3), 3)])
def test_invariant_form_space(algebra, dimension):
    basis = invariant_form_space(algebra)
    assert len(basis) == dimension
    assert all(is_invariant(algebra, form) for form in basis)


def test_sl2_forms_are_killing_multiples(sl2):
    (form,) = invariant_form_space(sl2)
    killing = killing_form(sl2)
    assert killing.scale(form[1, 1]) == form.scale(8)


BUILTINS = ["sl2", "sl3", "abelian2", "heisenberg3", "borel(sl2)", "borel(sl3)", "nilradical(sl3)"]

_form_spaces = {}


def _forms_of(name: str):
    if name not in _form_spaces:
        algebra = builtin_algebra(name)
        _form_spaces[name] = algebra, invariant_form_space(algebra)
    return _form_spaces[name]


@pytest.mark.parametrize("name", BUILTINS)
@settings(max_examples=100, deadline=None)
@given(coefficients=st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7), min_size=6, max_size=6))
def test_dual_level_is_involution(name, coefficients):
    algebra, basis = _forms_of(name)
    form = BilinearForm.zero(algebra.dim)
    for c, basis_form in zip(coefficients, basis):
        form = form + basis_form.scale(scalar(c))
    assert is_invariant(algebra, form)
    assert dual_level(algebra, dual_level(algebra, form)) == form


def test_dual_level_examples(sl2):
    killing = killing_form(sl2)
    assert dual_level(sl2, BilinearForm.zero(3)) == -killing
    assert dual_level(sl2, critical_level(sl2)) == critical_level(sl2)
    assert dual_level(sl2, killing) == killing.scale(-2)


def test_critical_level(sl2):
    critical = critical_level(sl2)
    assert critical[1, 1] == -4
    assert critical[0, 2] == -2
    assert critical_level(abelian(2)).is_zero()
    assert critical_level(heisenberg(3)).is_zero()


def test_critical_is_the_fixed_point_on_the_killing_line(sl2):
    level = symbolic_level(sl2)
    difference = dual_level(sl2, level) - level
    # -κ - 2tκ vanishes only at t = -1/2
    assert difference[1, 1] == -8 - 16 * t


def test_restrictions(sl2):
    killing = killing_form(sl2)
    nilradical = builtin_subalgebra(sl2, "nilradical")
    assert restrict_form(nilradical, killing).is_zero()
    borel = builtin_subalgebra(sl2, "borel")
    restricted = restrict_form(borel, killing)
    h = borel.algebra.index("h")
    assert restricted[h, h] == 8
    assert restricted == killing_form(borel.algebra).scale(2)


def test_identity_restriction(sl3):
    sub = builtin_subalgebra(sl3, "parabolic", [1, 2])
    assert sub.algebra.dim == 8
    assert restrict_form(sub, killing_form(sl3)) == killing_form(sl3)


def test_builtins():
    assert sl(3).dim == 8
    borel = builtin_algebra("borel(sl2)")
    assert borel.dim == 2
    e, h = borel.index("e"), borel.index("h")
    assert borel.bracket_of(h, e) == {e: LEVEL_RING(2)}
    nilradical = builtin_algebra("nilradical(sl3)")
    assert nilradical.dim == 3
    assert sum(1 for v in nilradical.nonzero_brackets().values() if v) == 2


def test_parent_inclusion(sl2):
    borel = builtin_algebra("borel(sl2)")
    sub = parent_inclusion(borel)
    assert sub.parent.name == "sl2"
    assert restrict_form(sub, critical_level(sub.parent)) == -killing_form(borel)
    assert parent_inclusion(sl2) is None
    assert parent_inclusion(heisenberg(3)) is None


def test_root_weights(sl2, sl3):
    assert sl2.weights == ((1,), (0,), (-1,))
    assert sl3.basis_names[:3] == ("E12", "E23", "E13")
    assert sl3.weights[:5] == ((1, 0), (0, 1), (1, 1), (0, 0), (0, 0))
    assert sl3.weights[5:] == ((-1, 0), (0, -1), (-1, -1))
    assert abelian(2).weights is None


def test_semisimplicity():
    assert is_semisimple(sl(2)) and is_semisimple(sl(3))
    for name in ("borel(sl2)", "heisenberg3", "abelian2"):
        assert not is_semisimple(builtin_algebra(name))


def test_unknown_algebra_suggests_a_name():
    with pytest.raises(UnknownAlgebra, match="did you mean 'heisenberg3'"):
        builtin_algebra("heisenbreg3")


def test_non_invariant_form_is_rejected(sl2):
    form = BilinearForm(3, {(0, 0): 1})
    with pytest.raises(NotInvariant):
        require_invariant(sl2, form)


def test_scalars_parse_levels():
    assert scalar("-1/2") * 2 == -1
    assert scalar("-4*t - 4") == -4 * t - 4
