"""Discrete Fourier transforms of arbitrary length.

``dft`` uses numpy's pocketfft by default (mixed radix, with its own chirp-z
path for large prime factors).  ``bluestein`` is a standalone chirp-z
implementation on top of power-of-two transforms, selectable with
``backend="bluestein"``.

Convention: X[t] = sum_k x[k] exp(-2 pi i t k / N); the inverse carries 1/N.
"""
from __future__ import annotations

import numpy as np

BACKENDS = ("numpy", "bluestein")


def _chirp(n: int) -> np.ndarray:
    # exp(-i pi m^2 / n) with m^2 reduced mod 2n in integers, so the phase
    # never sees a large float argument
    m = np.arange(n, dtype=np.int64)
    r = (m * m) % (2 * n)
    return np.exp(-1j * np.pi * (r / n))


def bluestein(x, inverse: bool = False) -> np.ndarray:
    """Chirp-z DFT of any length via a power-of-two circular convolution."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if n <= 1:
        return x.copy()
    w = _chirp(n)
    if inverse:
        w = w.conj()
    size = 1 << (2 * n - 1).bit_length()
    a = np.zeros(size, dtype=np.complex128)
    a[:n] = x * w
    b = np.zeros(size, dtype=np.complex128)
    b[:n] = w.conj()
    b[size - n + 1 :] = w[1:][::-1].conj()
    y = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))[:n] * w
    if inverse:
        y /= n
    return y


def dft(x, backend: str = "numpy") -> np.ndarray:
    if backend == "numpy":
        return np.fft.fft(x)
    if backend == "bluestein":
        return bluestein(x)
    raise ValueError(f"unknown FFT backend {backend!r}; choose from {BACKENDS}")


def idft(x, backend: str = "numpy") -> np.ndarray:
    if backend == "numpy":
        return np.fft.ifft(x)
    if backend == "bluestein":
        return bluestein(x, inverse=True)
    raise ValueError(f"unknown FFT backend {backend!r}; choose from {BACKENDS}")


def naive_dft(x) -> np.ndarray:
    """O(N^2) reference transform with exactly reduced phases."""
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    k = np.arange(n, dtype=np.int64)
    phase = np.outer(k, k) % n
    return np.exp(-2j * np.pi * (phase / n)) @ x
