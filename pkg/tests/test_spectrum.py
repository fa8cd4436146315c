import math

import numpy as np
import pytest

from conftest import complete, cycle, gamma
from qsrg_verify import spectrum as sp
from qsrg_verify.spectrum import Approx, Spectrum


def test_integer_multiplicity_examples():
    c4 = cycle(4)
    assert sp.integer_multiplicity(c4, 0) == 2
    assert sp.integer_multiplicity(c4, 1) == 0
    _, _, g = gamma("Z6", [0, 3])
    assert sp.integer_multiplicity(g.adjacency, -2) == 18


def test_bareiss_rank_small():
    assert sp.bareiss_rank(np.array([[2, 4], [1, 2]], dtype=object)) == 1
    assert sp.bareiss_rank(np.eye(5, dtype=np.int64)) == 5
    assert sp.bareiss_rank(np.zeros((3, 3), dtype=np.int64)) == 0


def test_nullity_mod_p_bounds_true_multiplicity():
    _, _, g = gamma("S3", [0, 1])
    for lam in range(-12, 13):
        assert sp.nullity_mod_p(g.adjacency, lam) >= sp.integer_multiplicity(g.adjacency, lam)


def test_full_spectrum_normal_example():
    _, _, g = gamma("Z6", [0, 3])
    s = sp.full_spectrum(g.adjacency)
    assert s == Spectrum.from_dict({12: 1, 4: 9, 0: 6, -2: 18, -6: 2})
    assert s.approx_part == []


def test_full_spectrum_nonnormal_example():
    _, _, g = gamma("S3", [0, 1])
    s = sp.full_spectrum(g.adjacency)
    assert s.int_part == {12: 1, 4: 7, 0: 4, -2: 16}
    (hi, m1), (lo, m2) = sorted(s.approx_part, reverse=True)
    assert m1 == m2 == 4
    assert abs(hi - (-1 + math.sqrt(13))) < 1e-9
    assert abs(lo - (-1 - math.sqrt(13))) < 1e-9


def test_k5():
    assert sp.full_spectrum(complete(5)) == Spectrum.from_dict({4: 1, -1: 4})


def test_integrality_reports():
    _, _, g = gamma("Z6", [0, 3])
    r = sp.is_integral(sp.full_spectrum(g.adjacency))
    assert r.is_integral and r.residual_dimension == 0
    _, _, g = gamma("S3", [0, 1])
    r = sp.is_integral(sp.full_spectrum(g.adjacency))
    assert not r.is_integral and r.residual_dimension == 8
    r = sp.is_integral(sp.full_spectrum(np.zeros((7, 7), dtype=np.uint8)))
    assert r.is_integral and r.integer_mass == 7


def test_isospectral_examples():
    a = sp.full_spectrum(gamma("Z8", [0, 2, 4, 6])[2].adjacency)
    b = sp.full_spectrum(gamma("Z4xZ2", [0, 1, 4, 5])[2].adjacency)
    assert sp.isospectral(a, b)
    c = sp.full_spectrum(gamma("Z6", [0, 3])[2].adjacency)
    d = sp.full_spectrum(gamma("S3", [0, 1])[2].adjacency)
    assert not sp.isospectral(c, d)
    assert sp.isospectral(d, d)


def test_moments():
    s = sp.full_spectrum(gamma("Z6", [0, 3])[2].adjacency)
    assert sp.spectral_moment(s, 2) == 432
    assert sp.spectral_moment(s, 1) == 0
    assert sp.spectral_moment(s, 0) == 36
    with pytest.raises(ValueError):
        sp.spectral_moment(s, 3)


def test_approx_never_promoted():
    # 2cos(2pi/5) - the golden-ratio pair of C5 stays approximate
    s = sp.full_spectrum(cycle(5))
    assert s.int_part == {2: 1}
    assert len(s.approx_part) == 2


def test_json_round_trip_and_format():
    s = sp.full_spectrum(gamma("S3", [0, 1])[2].adjacency)
    d = s.to_dict()
    assert d["dimension"] == 36
    assert d["entries"][0] == {"value": "12", "kind": "int", "mult": 1}
    assert any(row["kind"] == "approx" and row["value"] == round(-1 + math.sqrt(13), 10) for row in d["entries"])
    back = Spectrum.from_json(s.to_json())
    assert sp.isospectral(back, s)
    assert back.to_json() == s.to_json()


def test_canonicalization():
    s = Spectrum.from_entries([(0, 2), (3, 1), (0, 1), (5, 0), (Approx(1.5), 1), (Approx(1.5 + 1e-9), 1)])
    assert s.int_part == {3: 1, 0: 3}
    assert s.approx_part[0][1] == 2 and s.dimension == 6
    assert [float(v) if isinstance(v, Approx) else v for v, _ in s.entries] == [3, pytest.approx(1.5), 0]
    with pytest.raises(ValueError):
        Spectrum(((0, 1), (3, 1)), 2)  # not descending
    with pytest.raises(ValueError):
        Spectrum(((3, 1),), 2)  # wrong dimension


def test_input_guards():
    with pytest.raises(ValueError):
        sp.full_spectrum(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        sp.full_spectrum(np.zeros((2, 3)))


def test_annihilator_route_used_for_integral_graphs():
    s = sp.full_spectrum(gamma("Z6", [0, 3])[2].adjacency)
    assert s.method == "annihilator"
    s = sp.full_spectrum(gamma("S3", [0, 1])[2].adjacency)
    assert s.method == "bareiss"
