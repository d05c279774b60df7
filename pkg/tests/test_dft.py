import numpy as np
import pytest

from siegelscan.dft import bluestein, dft, idft, naive_dft


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7, 12, 97, 101, 250, 499])
def test_bluestein_matches_reference(n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ref = naive_dft(x)
    scale = np.linalg.norm(x) * np.sqrt(n)
    assert np.max(np.abs(bluestein(x) - ref)) <= 1e-13 * scale
    assert np.max(np.abs(dft(x) - ref)) <= 1e-13 * scale
    assert np.max(np.abs(dft(x, "bluestein") - np.fft.fft(x))) <= 1e-13 * scale


@pytest.mark.parametrize("backend", ["numpy", "bluestein"])
def test_round_trip(backend):
    x = np.random.default_rng(0).standard_normal(1009)
    assert np.allclose(idft(dft(x, backend), backend), x, rtol=0, atol=1e-14)


def test_length_four_is_exact():
    # all length-4 twiddles are exact, so small integers survive unchanged
    x = np.array([1.0, -2.0, 3.0, 5.0])
    assert dft(x).tolist() == [7, -2 + 7j, 1, -2 - 7j]
    assert np.array_equal(idft(dft(x)).real, x)


def test_unknown_backend():
    with pytest.raises(ValueError):
        dft([1.0, 2.0], "fftw")
    with pytest.raises(ValueError):
        idft([1.0, 2.0], "fftw")
