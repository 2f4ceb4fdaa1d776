"""Unitary transform and mirror-operator algebra."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from iqofdm.spectral import dft, inverse_dft, mirror

from _oracles import brute_dft, brute_inverse_dft, brute_mirror, random_spectrum


def test_dft_of_zeros_is_zeros():
    assert_allclose(dft(np.zeros(8, complex)), np.zeros(8), atol=0)


def test_dft_of_unit_impulse_is_flat():
    x = np.zeros(4, complex)
    x[0] = 1.0
    assert_allclose(dft(x), np.full(4, 0.5 + 0j), atol=1e-15)


def test_dft_matches_matrix_oracle():
    rng = np.random.default_rng(1)
    x = random_spectrum(rng, 16)
    assert_allclose(dft(x), brute_dft(x), atol=1e-12)


def test_inverse_dft_of_zeros_is_zeros():
    assert_allclose(inverse_dft(np.zeros(8, complex)), np.zeros(8), atol=0)


def test_inverse_dft_matches_matrix_oracle():
    rng = np.random.default_rng(2)
    X = random_spectrum(rng, 16)
    assert_allclose(inverse_dft(X), brute_inverse_dft(X), atol=1e-12)


def test_round_trip_is_identity():
    rng = np.random.default_rng(3)
    for n in (8, 64, 128):
        x = random_spectrum(rng, n)
        assert_allclose(inverse_dft(dft(x)), x, rtol=1e-12, atol=1e-12)


def test_unitarity_preserves_norm():
    rng = np.random.default_rng(4)
    for n in (8, 64, 128):
        x = random_spectrum(rng, n)
        assert np.linalg.norm(dft(x)) == pytest.approx(np.linalg.norm(x), rel=1e-12)


def test_mirror_frozen_example():
    X = np.array([1 + 1j, 2, 3 - 1j, 4j])
    assert_allclose(mirror(X), np.array([1 - 1j, -4j, 3 + 1j, 2]), atol=0)


def test_mirror_matches_index_oracle():
    rng = np.random.default_rng(5)
    for n in (8, 16, 64):
        X = random_spectrum(rng, n)
        assert_allclose(mirror(X), brute_mirror(X), atol=0)


def test_mirror_is_exact_involution():
    rng = np.random.default_rng(6)
    for n in (8, 64, 128):
        X = random_spectrum(rng, n)
        assert np.array_equal(mirror(mirror(X)), X)


def test_mirror_fixes_real_even_spectra():
    rng = np.random.default_rng(7)
    n = 16
    X = np.zeros(n, complex)
    X[0] = rng.standard_normal()
    X[n // 2] = rng.standard_normal()
    half = rng.standard_normal(n // 2 - 1)
    X[1 : n // 2] = half
    X[n // 2 + 1 :] = half[::-1]
    assert np.array_equal(mirror(X), X)


def test_mirror_intertwines_with_conjugation():
    rng = np.random.default_rng(8)
    for n in (8, 64, 128):
        x = random_spectrum(rng, n)
        assert np.max(np.abs(mirror(dft(x)) - dft(np.conj(x)))) < 1e-12


def test_mirror_distributes_over_elementwise_product():
    rng = np.random.default_rng(9)
    H = random_spectrum(rng, 32)
    s = random_spectrum(rng, 32)
    assert_allclose(mirror(H * s), mirror(H) * mirror(s), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("bad", [np.zeros(0), np.zeros(1), np.zeros(12), np.zeros((4, 4))])
def test_non_radix2_sizes_rejected(bad):
    for op in (dft, inverse_dft, mirror):
        with pytest.raises(ValueError):
            op(bad)
