from itertools import combinations

import pytest

from cdo_workbench.algebroid.algebroid import (
    AlgebraMismatch, AlgebroidMorphism, AxiomA4Violation, AxiomA5Violation, canonical_objects, check_axioms,
    check_morphism, compose_morphisms, find_morphism, half_form_map, identity_morphism, invert_morphism, pi0_report
)
from cdo_workbench.cohomology.cochains import Cochain, TildeCochain, d_trivial, embed_trivial
from cdo_workbench.cohomology.complexes import cocycle_from_form
from cdo_workbench.helpers.scalars import t
from cdo_workbench.lie.builtins import abelian
from cdo_workbench.lie.forms import BilinearForm, killing_form, symbolic_level


@pytest.fixture(scope="module")
def sl2_objects(sl2):
    return canonical_objects(sl2, killing_form(sl2))


def test_tilde_object_accepted(sl2):
    obj = check_axioms(sl2, killing_form(sl2), TildeCochain.zero(3, 3))
    assert obj.pairing == killing_form(sl2)


def test_cocycle_object_accepted(sl2):
    c = embed_trivial(cocycle_from_form(sl2, killing_form(sl2)))
    obj = check_axioms(sl2, BilinearForm.zero(3), c)
    assert obj.c == c


def test_non_invariant_pairing_rejected(sl2):
    with pytest.raises(AxiomA4Violation, match="pairing axiom"):
        check_axioms(sl2, BilinearForm(3, {(1, 1): 1}), TildeCochain.zero(3, 3))


def test_non_closed_c_rejected(sl3):
    # an embedded 3-cochain satisfies the pairing axiom for the zero pairing
    units = (Cochain(8, 3, {indices: 1}) for indices in combinations(range(8), 3))
    f = next(f for f in units if not d_trivial(sl3, f).is_zero())
    with pytest.raises(AxiomA5Violation):
        check_axioms(sl3, BilinearForm.zero(8), embed_trivial(f))


def test_canonical_sl2(sl2_objects):
    h = sl2_objects.connecting.h
    assert h.pair(1, (1,)) == 4
    assert h.pair(0, (2,)) == h.pair(2, (0,)) == 2
    assert sl2_objects.cocycle.c.pair(0, (1, 2)) == -8
    assert sl2_objects.currents.pairing == sl2_objects.tilde.pairing
    assert sl2_objects.currents.c.is_zero()


def test_canonical_zero_form(sl2):
    objects = canonical_objects(sl2, BilinearForm.zero(3))
    assert objects.tilde.pairing.is_zero() and objects.tilde.c.is_zero()
    assert objects.cocycle.c.is_zero()
    assert objects.connecting.h.is_zero()


def test_canonical_symbolic_level(sl2, sl2_objects):
    objects = canonical_objects(sl2, symbolic_level(sl2))
    assert objects.cocycle.c == sl2_objects.cocycle.c.scale(t)
    assert objects.connecting.h == sl2_objects.connecting.h.scale(t)


def test_connecting_map_is_a_morphism(sl2_objects):
    assert check_morphism(sl2_objects.connecting)


def test_zero_map_is_not_a_morphism(sl2_objects):
    morphism = AlgebroidMorphism(sl2_objects.tilde, sl2_objects.cocycle, TildeCochain.zero(3, 2))
    certificate = check_morphism(morphism)
    assert not certificate
    assert certificate.pairing_residuals[(1, 1)] == -8


def test_identity_is_a_morphism(sl2_objects):
    for obj in (sl2_objects.tilde, sl2_objects.cocycle):
        assert check_morphism(identity_morphism(obj))


def test_compose_and_invert(sl2_objects):
    forward = sl2_objects.connecting
    backward = invert_morphism(forward)
    assert check_morphism(backward)
    loop = compose_morphisms(forward, backward)
    assert loop.source is loop.target is sl2_objects.tilde
    assert loop.h.is_zero()
    with pytest.raises(AlgebraMismatch):
        compose_morphisms(forward, forward)


def test_find_morphism_to_half_cocycle(sl2, sl2_objects):
    target = sl2_objects.connecting.target
    h = find_morphism(sl2_objects.tilde, target)
    assert h is not None
    assert check_morphism(AlgebroidMorphism(sl2_objects.tilde, target, h))


def test_full_cocycle_is_not_reachable(sl2_objects):
    assert find_morphism(sl2_objects.tilde, sl2_objects.cocycle) is None


def test_nontrivial_class_is_not_trivial(sl2, sl2_objects):
    trivial = check_axioms(sl2, BilinearForm.zero(3), TildeCochain.zero(3, 3))
    assert find_morphism(sl2_objects.cocycle, trivial) is None


def test_self_morphism_found(sl2_objects):
    h = find_morphism(sl2_objects.cocycle, sl2_objects.cocycle)
    assert h is not None
    assert check_morphism(AlgebroidMorphism(sl2_objects.cocycle, sl2_objects.cocycle, h))


def test_half_form_map(sl2):
    h = half_form_map(sl2, killing_form(sl2))
    assert h.pair(1, (1,)) == 4


def test_pi0_sl2(sl2):
    report = pi0_report(sl2)
    assert report.h3_dimension == 1
    assert report.invariant_forms_dimension == 1
    assert report.agree


def test_pi0_abelian():
    report = pi0_report(abelian(3))
    assert report.h3_dimension == 1
    assert not report.semisimple
    assert report.agree is None


@pytest.mark.slow
def test_pi0_sl3(sl3):
    report = pi0_report(sl3)
    assert report.h3_dimension == 1
    assert report.agree
