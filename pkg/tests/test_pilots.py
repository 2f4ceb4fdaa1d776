"""Two-symbol pilot preamble structure and algebra."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from iqofdm.channel import effective_response
from iqofdm.iq import distort_freq, iq_params_from
from iqofdm.pilots import build_pilot_pair, mirrored_pilots
from iqofdm.spectral import mirror

from _oracles import random_cir


def _pair(n=128, seed=40, **kwargs):
    return build_pilot_pair(n, np.random.default_rng(seed), **kwargs)


def test_half_band_structure_n8():
    pair = _pair(n=8)
    assert np.flatnonzero(pair.s1 == 0).tolist() == [5, 6, 7]
    assert np.flatnonzero(pair.s2 == 0).tolist() == [1, 2, 3]


def test_inner_pilot_power_paper_rule():
    pair = _pair(power_rule="paper")
    assert np.sum(np.abs(pair.s_p) ** 2) == pytest.approx(127.0, abs=1e-12)


def test_inner_pilot_power_unit_rule():
    pair = _pair(power_rule="unit")
    assert np.sum(np.abs(pair.s_p) ** 2) == pytest.approx(63.0, abs=1e-12)


def test_tone_bins_of_second_symbol():
    pair = _pair()
    assert pair.s2[0] == pytest.approx(1j * np.sqrt(2.0))
    assert pair.s2[64] == pytest.approx(1j * np.sqrt(2.0))


def test_eta_rules():
    assert _pair(eta_rule="sqrt").eta == pytest.approx(np.sqrt(2.0))
    assert _pair(eta_rule="literal").eta == pytest.approx(2.0)


def test_pilot_symbol_energy_tracks_full_band():
    # eta tones add 2 * 2 * p_avg on top of the (n-1) boosted inner power.
    pair = _pair(n=128)
    energy = np.sum(np.abs(pair.s1) ** 2)
    assert energy == pytest.approx(131.0, abs=1e-12)
    big = _pair(n=512)
    assert np.sum(np.abs(big.s1) ** 2) == pytest.approx(512.0, rel=0.02)
    assert np.sum(np.abs(big.s2) ** 2) == pytest.approx(512.0, rel=0.02)


def test_all_inner_pilots_nonzero():
    pair = _pair()
    assert np.all(pair.s_p != 0)
    assert np.all(pair.template != 0)


def test_template_layout():
    pair = _pair(n=16)
    t = pair.template
    assert t[0] == pair.eta and t[8] == pair.eta
    assert np.array_equal(t[1:8], pair.s_p)
    assert np.array_equal(t[9:], pair.s_p)


def test_mirrored_pilots_is_conjugate_reversal():
    pair = _pair(n=8)
    got = mirrored_pilots(pair)
    expected = np.conj(pair.s_p[::-1])
    assert_allclose(got, expected, atol=0)


def test_mirrored_pilots_round_trip():
    pair = _pair(n=64)
    assert_allclose(np.conj(mirrored_pilots(pair)[::-1]), pair.s_p, atol=0)


def test_zero_interference_separation():
    # With zeroed half-bands the direct and image receive paths occupy
    # disjoint bins on each pilot symbol.
    rng = np.random.default_rng(41)
    n = 64
    pair = _pair(n=n, seed=42)
    p = iq_params_from(20.0, 4.0)
    g = effective_response(random_cir(rng, 8), n)

    z1 = distort_freq(g * pair.s1, p)
    direct1 = p.mu * g * pair.s1
    image1 = p.nu * mirror(g * pair.s1)
    assert np.max(np.abs(z1[1 : n // 2] - direct1[1 : n // 2])) < 1e-12
    assert np.max(np.abs(z1[n // 2 + 1 :] - image1[n // 2 + 1 :])) < 1e-12

    z2 = distort_freq(g * pair.s2, p)
    direct2 = p.mu * g * pair.s2
    image2 = p.nu * mirror(g * pair.s2)
    assert np.max(np.abs(z2[n // 2 + 1 :] - direct2[n // 2 + 1 :])) < 1e-12
    assert np.max(np.abs(z2[1 : n // 2] - image2[1 : n // 2])) < 1e-12


@pytest.mark.parametrize("kwargs", [dict(n=4), dict(eta_rule="x"), dict(power_rule="y")])
def test_build_rejects_bad_arguments(kwargs):
    n = kwargs.pop("n", 64)
    with pytest.raises(ValueError):
        build_pilot_pair(n, np.random.default_rng(0), **kwargs)
