import cmath

import pytest

from qsrg_verify import characters as ch
from qsrg_verify import groups
from qsrg_verify.corpus import group_from_spec
from qsrg_verify.errors import BadConnectionSet, NotAbelian
from qsrg_verify.spectrum import Spectrum


def test_decomposition_examples():
    assert list(ch.decompose_abelian(groups.cyclic_group(6)).cyclic_orders) == [6]
    assert list(ch.decompose_abelian(group_from_spec("Z4xZ2")).cyclic_orders) == [4, 2]
    with pytest.raises(NotAbelian):
        ch.decompose_abelian(groups.symmetric_group(3))


@pytest.mark.parametrize("name", ["Z2xZ6", "Z2xZ2xZ3", "Z4xZ4", "Z3xZ3", "Z2xZ2xZ2xZ2"])
def test_decomposition_is_isomorphism(name):
    g = group_from_spec(name)
    dec = ch.decompose_abelian(g)
    m = 1
    for x in dec.cyclic_orders:
        m *= x
    assert m == g.order
    coords = dec.coordinate_map
    assert len(set(map(tuple, coords))) == g.order
    for a in range(g.order):
        for b in range(g.order):
            want = tuple((x + y) % o for x, y, o in zip(coords[a], coords[b], dec.cyclic_orders))
            assert tuple(coords[g.mul(a, b)]) == want


def test_small_tables():
    z2 = ch.character_table(groups.cyclic_group(2))
    assert [[round(chi.value(g).real) for g in range(2)] for chi in z2] == [[1, 1], [1, -1]]
    z4 = ch.character_table(groups.cyclic_group(4))
    assert len(z4) == 4 and z4[0].is_trivial
    for chi in z4:
        a = chi.frequency[0]
        for x in range(4):
            assert abs(chi.value(x) - 1j ** (a * x)) < 1e-12


def test_characters_trivial_on_subgroup():
    z6 = groups.cyclic_group(6)
    # trivial on {0,2,4}: frequencies 0 and 3; the count equals the index 2
    h = groups.make_subgroup(z6, [0, 2, 4])
    assert sorted(chi.frequency[0] for chi in ch.characters_trivial_on(z6, h)) == [0, 3]
    # the even frequencies are the ones trivial on {0,3}
    h = groups.make_subgroup(z6, [0, 3])
    assert sorted(chi.frequency[0] for chi in ch.characters_trivial_on(z6, h)) == [0, 2, 4]


def test_char_sum_examples():
    z6 = groups.cyclic_group(6)
    table = ch.character_table(z6)
    by_freq = {chi.frequency[0]: chi for chi in table}
    assert ch.char_sum(by_freq[0], [0, 3]).to_int() == 2
    s = ch.char_sum(by_freq[1], [0, 3])
    assert s.is_zero and s.to_int() == 0
    assert ch.char_sum(by_freq[3], [0, 2, 4]).to_int() == 3
    assert ch.char_sum(by_freq[2], [0, 2, 4]).is_zero
    assert ch.char_sum(by_freq[2], [0, 3]).to_int() == 2


def test_cyclotomic_exactness():
    s = ch.CyclotomicSum.from_exponents(5, [1, 2, 3, 4])
    assert s.is_integer and s.to_int() == -1
    s = ch.CyclotomicSum.from_exponents(12, [1, 11])  # 2 cos(pi/6)
    assert not s.is_integer
    assert abs(complex(s) - 2 * cmath.cos(cmath.pi / 6)) < 1e-12
    with pytest.raises(ValueError):
        s.to_int()


def test_cyclotomic_polys():
    assert ch.cyclotomic_poly(1) == (-1, 1)
    assert ch.cyclotomic_poly(4) == (1, 0, 1)
    assert ch.cyclotomic_poly(6) == (1, -1, 1)
    assert len(ch.cyclotomic_poly(12)) == 5


def test_oracle_examples():
    z4, z5, z6 = (groups.cyclic_group(n) for n in (4, 5, 6))
    assert ch.abelian_cayley_spectrum(z4, [1, 3]) == Spectrum.from_dict({2: 1, 0: 2, -2: 1})
    assert ch.abelian_cayley_spectrum(z5, [1, 2, 3, 4]) == Spectrum.from_dict({4: 1, -1: 4})
    assert ch.abelian_cayley_spectrum(z6, [2, 4]) == Spectrum.from_dict({2: 2, -1: 4})
    with pytest.raises(BadConnectionSet):
        ch.abelian_cayley_spectrum(z6, [1])
    with pytest.raises(NotAbelian):
        ch.abelian_cayley_spectrum(groups.symmetric_group(3), [1])


def test_irrational_oracle():
    # C5: 2cos(2 pi k / 5) are irrational
    sp = ch.abelian_cayley_spectrum(groups.cyclic_group(5), [1, 4])
    assert sp.int_part == {2: 1}
    assert [m for _, m in sp.approx_part] == [2, 2]


@pytest.mark.parametrize("name", ["Z6", "Z8", "Z4xZ2", "Z2xZ6"])
def test_orthonormality(name):
    g = group_from_spec(name)
    table = ch.character_table(g)
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            assert ch.inner_product_times_order(a, b).to_int() == (g.order if i == j else 0)


def test_fixed_dim_examples():
    z6, z8 = groups.cyclic_group(6), groups.cyclic_group(8)
    assert ch.fixed_dim_sum_check(z6, groups.make_subgroup(z6, [0, 3])) == 9
    assert ch.fixed_dim_sum_check(z6, groups.make_subgroup(z6, [0, 2, 4])) == 8
    assert ch.fixed_dim_sum_check(z8, groups.make_subgroup(z8, [0, 4])) == 16


@pytest.mark.parametrize("name", ["Z12", "Z2xZ6", "Z4xZ4", "Z2xZ2xZ2xZ2", "Z15"])
def test_fixed_dim_all_subgroups(name):
    g = group_from_spec(name)
    for h in groups.proper_nontrivial_subgroups(g):
        assert ch.fixed_dim_sum_check(g, h) == h.ell * (g.order - h.ell)
