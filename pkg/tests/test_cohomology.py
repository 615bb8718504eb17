from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from cdo_workbench.cohomology.cochains import Cochain, TildeCochain, d_tilde, d_trivial, embed_trivial, restrict_first_slot
from cdo_workbench.cohomology.complexes import (
    CochainComplex, ComplexKind, cocycle_from_form, cohomology_dims, cohomology_representatives, is_coboundary
)
from cdo_workbench.lie.builtins import abelian, builtin_algebra, heisenberg, sl
from cdo_workbench.lie.forms import BilinearForm, NotInvariant, killing_form


def cochains(dim: int, degree: int):
    keys = list(combinations(range(dim), degree))
    return st.lists(st.integers(-5, 5), min_size=len(keys), max_size=len(keys)).map(
        lambda values: Cochain(dim, degree, dict(zip(keys, values)))
    )


def tilde_cochains(dim: int, degree: int):
    keys = [(indices, a) for indices in combinations(range(dim), degree - 1) for a in range(dim)]
    return st.lists(st.integers(-3, 3), min_size=len(keys), max_size=len(keys)).map(
        lambda values: TildeCochain(dim, degree, dict(zip(keys, values)))
    )


def test_alternating_storage():
    f = Cochain(3, 2, {(1, 0): 5})
    assert f.evaluate((0, 1)) == -5
    assert f.evaluate((1, 0)) == 5
    assert f.evaluate((1, 1)) == 0


def test_d_trivial_on_e_star(sl2):
    df = d_trivial(sl2, Cochain(3, 1, {(0,): 1}))
    assert df.evaluate((0, 1)) == 2


def test_d_trivial_vanishes_on_abelian():
    algebra = abelian(3)
    assert d_trivial(algebra, Cochain(3, 2, {(0, 1): 1, (1, 2): -3})).is_zero()


def test_d_trivial_out_of_top_degree(sl2):
    result = d_trivial(sl2, Cochain(3, 3, {(0, 1, 2): 1}))
    assert result.degree == 4
    assert result.is_zero()


@given(cochains(3, 1))
def test_d_squared_sl2(f):
    algebra = sl(2)
    assert d_trivial(algebra, d_trivial(algebra, f)).is_zero()


@given(cochains(8, 1))
def test_d_squared_sl3(f):
    algebra = sl(3)
    assert d_trivial(algebra, d_trivial(algebra, f)).is_zero()


@given(tilde_cochains(3, 1))
def test_d_tilde_squared_sl2(h):
    algebra = sl(2)
    assert d_tilde(algebra, d_tilde(algebra, h)).is_zero()


@given(tilde_cochains(3, 2))
def test_d_tilde_squared_in_degree_two(h):
    algebra = sl(2)
    assert d_tilde(algebra, d_tilde(algebra, h)).is_zero()


SMALL_BUILTINS = ["sl2", "abelian3", "heisenberg3", "borel(sl2)", "nilradical(sl3)", "borel(sl3)"]


def _degrees(names, top):
    cases = []
    for name in names:
        dim = builtin_algebra(name).dim
        cases += [(name, degree) for degree in range(1, dim + top)]
    return cases


@pytest.mark.parametrize("name, degree", _degrees(SMALL_BUILTINS, 0))
@given(data=st.data())
def test_d_squared_in_every_degree(name, degree, data):
    algebra = builtin_algebra(name)
    f = data.draw(cochains(algebra.dim, degree))
    assert d_trivial(algebra, d_trivial(algebra, f)).is_zero()


@pytest.mark.parametrize("name, degree", _degrees(SMALL_BUILTINS, 1))
@given(data=st.data())
def test_d_tilde_squared_in_every_degree(name, degree, data):
    algebra = builtin_algebra(name)
    h = data.draw(tilde_cochains(algebra.dim, degree))
    assert d_tilde(algebra, d_tilde(algebra, h)).is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("degree", range(1, 8))
@given(data=st.data())
def test_d_squared_sl3_in_every_degree(degree, data):
    algebra = sl(3)
    f = data.draw(cochains(algebra.dim, degree))
    assert d_trivial(algebra, d_trivial(algebra, f)).is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("degree", range(1, 9))
@given(data=st.data())
def test_d_tilde_squared_sl3_in_every_degree(degree, data):
    algebra = sl(3)
    h = data.draw(tilde_cochains(algebra.dim, degree))
    assert d_tilde(algebra, d_tilde(algebra, h)).is_zero()


def test_d_tilde_zero_on_scalars(sl2):
    result = d_tilde(sl2, TildeCochain(3, 0, constant=5))
    assert result.degree == 1
    assert result.is_zero()


def test_d_tilde_vanishes_on_abelian():
    algebra = abelian(2)
    assert d_tilde(algebra, TildeCochain(2, 2, {((0,), 1): 1, ((1,), 1): 4})).is_zero()


@given(cochains(3, 2))
def test_embedding_reads_back(f):
    assert restrict_first_slot(embed_trivial(f)) == f


@given(cochains(3, 1))
def test_embedding_is_a_chain_map(f):
    algebra = sl(2)
    assert d_tilde(algebra, embed_trivial(f)) == embed_trivial(d_trivial(algebra, f))


@given(cochains(3, 2))
def test_embedding_is_a_chain_map_in_degree_two(f):
    algebra = sl(2)
    assert d_tilde(algebra, embed_trivial(f)) == embed_trivial(d_trivial(algebra, f))


def test_embedding_of_zero():
    assert embed_trivial(Cochain.zero(3, 2)).is_zero()


def test_embedding_rejects_scalars():
    with pytest.raises(ValueError):
        embed_trivial(Cochain(3, 0, {(): 1}))


def test_sl2_dims(sl2):
    assert cohomology_dims(sl2) == [1, 0, 0, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_abelian_dims_are_binomials(n):
    assert cohomology_dims(abelian(n)) == [comb(n, i) for i in range(n + 1)]


def test_heisenberg_dims(heisenberg3):
    assert cohomology_dims(heisenberg3) == [1, 2, 2, 1]


def test_borel_dims(borel_sl2):
    assert cohomology_dims(borel_sl2) == [1, 1, 0]


def test_nilradical_sl3_dims():
    assert cohomology_dims(builtin_algebra("nilradical(sl3)")) == [1, 2, 2, 1]


@pytest.mark.slow
def test_sl3_dims(sl3):
    assert cohomology_dims(sl3) == [1, 0, 0, 1, 0, 1, 0, 0, 1]


def test_tilde_dims_abelian():
    # the differential vanishes, so every cochain space survives
    assert cohomology_dims(abelian(1), ComplexKind.TILDE) == [1, 1, 1]


def test_euler_characteristic_of_tilde_complex(sl2):
    complex_ = CochainComplex(sl2, ComplexKind.TILDE)
    dims = complex_.dims()
    sizes = [len(complex_.basis(d)) for d in range(complex_.top_degree + 1)]
    assert sum((-1) ** d * n for d, n in enumerate(dims)) == sum((-1) ** d * n for d, n in enumerate(sizes))


def test_killing_cocycle(sl2):
    c = cocycle_from_form(sl2, killing_form(sl2))
    assert c.evaluate((0, 1, 2)) == -8
    assert d_trivial(sl2, c).is_zero()
    assert not is_coboundary(sl2, c)


def test_killing_cocycle_sl3_is_closed(sl3):
    c = cocycle_from_form(sl3, killing_form(sl3))
    assert not c.is_zero()
    assert d_trivial(sl3, c).is_zero()


def test_zero_form_gives_zero_cocycle(sl2):
    assert cocycle_from_form(sl2, BilinearForm.zero(3)).is_zero()


def test_cocycle_requires_invariant_form(sl2):
    with pytest.raises(NotInvariant):
        cocycle_from_form(sl2, BilinearForm(3, {(0, 0): 1}))


def test_coboundaries(sl2):
    f = Cochain(3, 1, {(0,): 1, (2,): 3})
    assert is_coboundary(sl2, d_trivial(sl2, f))
    assert is_coboundary(sl2, Cochain.zero(3, 0))
    assert not is_coboundary(sl2, Cochain(3, 0, {(): 1}))


def test_representatives(heisenberg3):
    complex_ = CochainComplex(heisenberg3)
    for degree, dimension in enumerate(complex_.dims()):
        representatives = complex_.representatives(degree)
        assert len(representatives) == dimension
        assert all(complex_.differential(r).is_zero() for r in representatives)
        assert complex_.independent_modulo_boundaries(representatives)


def test_sl2_top_class(sl2):
    (representative,) = cohomology_representatives(sl2, 3)
    c = cocycle_from_form(sl2, killing_form(sl2))
    assert CochainComplex(sl2).independent_modulo_boundaries([c])
    assert representative.degree == 3


def test_rank_workers_give_the_same_dims(heisenberg3):
    assert CochainComplex(heisenberg(3), rank_workers=2).dims() == CochainComplex(heisenberg3).dims()
