import math

import mpmath
import numpy as np
import pytest

from siegelscan.arith import PrimeContext, build_power_sequence, legendre_symbol, primes_in_range
from siegelscan.errors import InvalidModulusError, MismatchError
from siegelscan.fftcheck import EPS_EXTENDED
from siegelscan.golden import load_fixtures
from siegelscan.lfun import (
    METHODS,
    estimate_err_bound,
    extract_quadratic,
    fft_sequence_errors,
    l1,
    l1_alternating,
    l1_direct,
    l1_fft_spectrum,
)
from siegelscan.special import KernelFn

GOLDEN = load_fixtures()


def table(q):
    return float(GOLDEN[q]["L"])


def digamma_l1(q, j):
    """|L(1, chi)| for chi(g^k) = e(jk/(q-1)), from -(1/q) sum chi(a) psi(a/q)."""
    mpmath.mp.dps = 30
    g = PrimeContext.for_prime(q).g
    total = mpmath.mpc(0)
    a = 1
    for k in range(q - 1):
        chi = mpmath.expjpi(mpmath.mpf(2 * j * k) / (q - 1))
        total += chi * mpmath.digamma(mpmath.mpf(a) / q)
        a = a * g % q
    return float(abs(total) / q)


@pytest.mark.parametrize("q,prefix", [(3, 0.60459978807807), (5, 0.43040894096400),
                                      (23, 1.96520205410785), (17, 1.01608483384284),
                                      (7, 1.18741041172372), (13, 0.66273539107184)])
def test_table_examples(q, prefix, contexts):
    ctx, seq = contexts(q)
    for v in (l1_direct(q), l1_alternating(ctx, seq), l1(q, "fft")):
        assert v.value == pytest.approx(prefix, abs=1e-14)
        assert v.value == pytest.approx(table(q), rel=1e-14)


def test_alternating_matches_direct_q7(contexts):
    ctx, seq = contexts(7)
    assert abs(l1_alternating(ctx, seq).value - l1_direct(7).value) <= 1e-12


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 17, 19, 23, 29, 101])
def test_direct_against_digamma_oracle(q):
    assert l1_direct(q).value == pytest.approx(digamma_l1(q, (q - 1) // 2), rel=1e-13)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 29, 31])
def test_full_spectrum_against_digamma_oracle(q, contexts):
    ctx, seq = contexts(q)
    mags = l1_fft_spectrum(ctx, seq).magnitudes
    assert math.isnan(mags[0])
    for j in range(1, q - 1):
        assert mags[j] == pytest.approx(digamma_l1(q, j), rel=1e-12), j


def test_spectrum_kernel_choices(contexts):
    ctx, seq = contexts(13)
    sin_spec = l1_fft_spectrum(ctx, seq, KernelFn.LOG_SIN_NEG)
    gamma_spec = l1_fft_spectrum(ctx, seq, KernelFn.LOG_GAMMA)
    odd_spec = l1_fft_spectrum(ctx, seq, KernelFn.IDENTITY)
    assert extract_quadratic(sin_spec).value == pytest.approx(table(13), rel=1e-14)
    assert np.allclose(sin_spec.magnitudes[2::2], gamma_spec.magnitudes[2::2], rtol=1e-13)
    assert np.all(np.isnan(sin_spec.magnitudes[1::2]))
    assert np.all(np.isnan(odd_spec.magnitudes[0::2]))
    with pytest.raises(ValueError):
        extract_quadratic(odd_spec)
    ctx7, seq7 = contexts(7)
    spec7 = l1_fft_spectrum(ctx7, seq7, KernelFn.IDENTITY)
    assert abs(spec7.magnitudes[3] - l1_direct(7).value) <= 1e-10


def test_bluestein_backend(contexts):
    for q in (101, 103, 1009):
        ctx, seq = contexts(q)
        a = l1_fft_spectrum(ctx, seq, backend="numpy").magnitudes
        b = l1_fft_spectrum(ctx, seq, backend="bluestein").magnitudes
        assert np.allclose(a[1:], b[1:], rtol=0, atol=1e-12)


@pytest.mark.parametrize("q", [3, 5, 7, 13, 499, 101, 103])
def test_conjugate_symmetry(q, contexts):
    ctx, seq = contexts(q)
    m = l1_fft_spectrum(ctx, seq).magnitudes
    assert np.max(np.abs(m[1:] - m[1:][::-1])) <= 1e-10


def test_three_way_agreement_within_bounds(contexts):
    worst = 0.0
    for q in primes_in_range(3, 10**4):
        ctx, seq = contexts(q)
        d, a, f = l1_direct(q), l1_alternating(ctx, seq), l1(q, "fft", ctx, seq)
        for x, y in ((d, a), (a, f), (d, f)):
            gap = abs(x.value - y.value)
            assert gap <= x.err_bound + y.err_bound, (q, x.method, y.method, gap)
            worst = max(worst, gap)
        assert min(d.value, a.value, f.value) > 0
        assert d.even == a.even == f.even == (legendre_symbol(q - 1, q) == 1)
    assert worst <= 1e-10


def test_err_bound_examples():
    for m in METHODS:
        b = estimate_err_bound(3, m)
        assert 0 <= b < 1e-13
    ex, _ = fft_sequence_errors(9999991, EPS_EXTENDED)
    assert ex < 1.99e-16
    bound = estimate_err_bound(9999991, "fft", EPS_EXTENDED)
    assert math.isfinite(bound) and bound >= math.pi / math.sqrt(9999991) * ex


@pytest.mark.parametrize("method", METHODS)
def test_err_bound_monotone(method):
    qs = primes_in_range(3, 20000) + [99991, 999983, 9999991]
    bounds = [estimate_err_bound(q, method) for q in qs]
    assert all(a <= b for a, b in zip(bounds, bounds[1:]))


def test_errors(contexts):
    with pytest.raises(InvalidModulusError):
        l1_direct(9)
    with pytest.raises(MismatchError):
        l1_alternating(contexts(7)[0], contexts(11)[1])
    with pytest.raises(MismatchError):
        l1_fft_spectrum(contexts(7)[0], contexts(11)[1])
    with pytest.raises(ValueError):
        l1(7, "magic")
    with pytest.raises(ValueError):
        estimate_err_bound(7, "magic")
