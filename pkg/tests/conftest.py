"""Shared helpers for the test suite."""

import numpy as np
import pytest

from shiftwave import Grid1D, SampledSignal1D, SampledSignal2D


def random_real_signal(rng, grid, zero_self_conjugate=False):
    """Real white-noise signal; optionally with DC and Nyquist removed
    (the fHT group laws hold exactly only away from those bins)."""
    V = np.fft.fft(rng.standard_normal(grid.n))
    if zero_self_conjugate:
        V[0] = V[grid.n // 2] = 0.0
    return SampledSignal1D(grid, np.fft.ifft(V))


def random_bandlimited(rng, grid, kbins):
    """Real signal with spectrum confined to the ``kbins`` lowest
    nonnegative-frequency bins."""
    V = np.zeros(grid.n, dtype=complex)
    V[:kbins] = rng.standard_normal(kbins) + 1j * rng.standard_normal(kbins)
    return SampledSignal1D(grid, np.fft.ifft(V).real.astype(complex))


def random_bandlimited_2d(rng, grid_x, grid_y, kbins):
    V = np.zeros((grid_y.n, grid_x.n), dtype=complex)
    V[:kbins, :kbins] = (rng.standard_normal((kbins, kbins))
                         + 1j * rng.standard_normal((kbins, kbins)))
    return SampledSignal2D(grid_x, grid_y,
                           np.fft.ifft2(V).real.astype(complex))


def rel_err(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
