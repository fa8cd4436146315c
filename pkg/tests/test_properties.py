"""Property-based checks of the structural identities."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qsrg_verify import characters, closed_form, groups, spectrum
from qsrg_verify.cayley import cayley_graph
from qsrg_verify.corpus import VERIFY_GROUPS, group_from_spec
from qsrg_verify.spectrum import Approx, Spectrum

SMALL = [s for s in VERIFY_GROUPS if group_from_spec(s).order <= 12]
ABELIAN = [s for s in SMALL if group_from_spec(s).is_abelian]


@st.composite
def group_and_subset(draw, specs=SMALL):
    g = group_from_spec(draw(st.sampled_from(specs)))
    bits = draw(st.lists(st.booleans(), min_size=g.order, max_size=g.order))
    return g, np.array(bits, dtype=bool)


@settings(max_examples=200, deadline=None)
@given(group_and_subset())
def test_normal_set_complement_duality(data):
    g, mask = data
    assert groups.is_normal_set(g, mask) == groups.is_normal_set(g, ~mask)


@settings(max_examples=50, deadline=None)
@given(group_and_subset(ABELIAN))
def test_abelian_subsets_are_normal(data):
    g, mask = data
    assert groups.is_normal_set(g, mask)


@pytest.mark.parametrize("name", SMALL)
def test_atoms_partition(name):
    g = group_from_spec(name)
    atoms = groups.all_atoms(g)
    assert sum(len(a) for a in atoms) == g.order
    assert set().union(*atoms) == set(range(g.order))
    for a in atoms:
        x = next(iter(a))
        assert groups.atom(g, x) == a
        assert groups.is_eulerian(g, a)


@st.composite
def inverse_closed(draw, specs=ABELIAN):
    g = group_from_spec(draw(st.sampled_from(specs)))
    classes = sorted({tuple(sorted({x, g.inv(x)})) for x in range(g.order) if x != g.identity})
    pick = draw(st.lists(st.booleans(), min_size=len(classes), max_size=len(classes)))
    return g, sorted(x for c, p in zip(classes, pick) if p for x in c)


@settings(max_examples=80, deadline=None)
@given(inverse_closed())
def test_character_oracle_matches_exact_spectrum(data):
    g, s = data
    exact = spectrum.full_spectrum(cayley_graph(g, s).adjacency)
    assert spectrum.isospectral(characters.abelian_cayley_spectrum(g, s), exact)


@settings(max_examples=40, deadline=None)
@given(inverse_closed(SMALL))
def test_exact_spectrum_invariants(data):
    g, s = data
    a = cayley_graph(g, s).adjacency
    sp = spectrum.full_spectrum(a)
    assert sp.dimension == g.order
    assert abs(spectrum.spectral_moment(sp, 1)) < 1e-6
    assert abs(spectrum.spectral_moment(sp, 2) - len(s) * g.order) < 1e-6
    # exact part agrees with a direct Bareiss rank for every integer candidate
    for lam, m in sp.int_part.items():
        assert spectrum.integer_multiplicity(a, lam) == m


def _valid_nk():
    return st.tuples(st.integers(2, 40), st.integers(2, 40)).map(lambda t: (t[0] * t[1], t[1]))


@settings(max_examples=300, deadline=None)
@given(_valid_nk())
def test_closed_form_moments(nk):
    n, k = nk
    assume(k < n)
    p = closed_form.predicted_spectrum(n, k)
    s = p.spectrum
    assert s.dimension == n * n
    assert spectrum.spectral_moment(s, 1) == 0
    assert spectrum.spectral_moment(s, 2) == 3 * n * n * (n - k)
    assert s.max_entry() == (3 * (n - k), 1)


@settings(max_examples=300, deadline=None)
@given(_valid_nk())
def test_generic_table_reproduces_every_case(nk):
    n, k = nk
    assume(k < n)
    generic = Spectrum.from_entries(closed_form.generic_table(n, k))
    assert generic == closed_form.predicted_spectrum(n, k).spectrum


@settings(max_examples=300, deadline=None)
@given(_valid_nk())
def test_partial_bounds_consistent_with_closed_form(nk):
    n, k = nk
    assume(k < n)
    s = closed_form.predicted_spectrum(n, k).spectrum
    assert all(row["ok"] for row in closed_form.predicted_partial(n, k).check(s))


@settings(max_examples=300, deadline=None)
@given(_valid_nk())
def test_kappa_range_for_orders_at_least_5(nk):
    n, k = nk
    assume(k < n and n >= 5)
    assert closed_form.predicted_spectrum(n, k).kappa in (4, 5, 6)


entry = st.one_of(
    st.tuples(st.integers(-20, 20), st.integers(0, 5)),
    st.tuples(st.floats(-20, 20, allow_nan=False).map(lambda x: Approx(round(x, 3) + 0.0005)), st.integers(0, 5)),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(entry, max_size=12), st.randoms())
def test_spectrum_canonical_form(entries, rnd):
    s = Spectrum.from_entries(entries)
    shuffled = list(entries)
    rnd.shuffle(shuffled)
    # approximate values sit on a 0.001 grid, so merging is order independent
    assert Spectrum.from_entries(shuffled) == s
    assert Spectrum.from_entries(s.entries) == s
    assert s.dimension == sum(m for _, m in entries)
    assert spectrum.isospectral(s, Spectrum.from_json(s.to_json()))
