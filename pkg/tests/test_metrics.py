"""rho / kappa quality metrics and the metrics table."""

import numpy as np
import pytest

from shiftwave import (
    Genus,
    Grid1D,
    SampledSignal1D,
    SplineSpec,
    SpectrumS,
    hilbert,
    kappa,
    metrics_table,
    one_sided_leakage,
    centroid,
    rho,
    spectrum_S,
    synthesize_wavelet,
    translate,
    wavelet_pair_from_lowpass_taps,
)
from shiftwave.fracspline import synthesize_from_fourier, wavelet_fourier

GRID = Grid1D(4096, -64.0, 1 / 32)


def _pair(genus, alpha):
    spec = SplineSpec(genus, alpha, 0.0)
    p1 = synthesize_wavelet(spec, GRID, None)
    p2 = synthesize_wavelet(spec.shifted(0.5), GRID, None)
    return p1, p2


# ---------------------------------------------------------------------------
# rho

def test_rho_exact_hilbert_pair(rng):
    V = np.fft.fft(rng.standard_normal(GRID.n))
    V[0] = V[GRID.n // 2] = 0.0
    f = SampledSignal1D(GRID, np.fft.ifft(V))
    assert rho(f, hilbert(f)) == pytest.approx(1.0, abs=1e-12)


def test_rho_zero_for_self():
    p1, _ = _pair(Genus.ORTHONORMAL, 3.0)
    # <psi, H psi> = 0 up to rounding; negative values clamp to zero
    assert rho(p1, p1) < 1e-12


def test_rho_spline_pairs_unity():
    for genus in (Genus.BSPLINE_SEMIORTHOGONAL, Genus.ORTHONORMAL):
        for alpha in (1.0, 3.0, 6.0):
            p1, p2 = _pair(genus, alpha)
            assert rho(p1, p2) >= 1 - 1e-9


# ---------------------------------------------------------------------------
# kappa

def test_kappa_zero_for_symmetric_bump():
    w = np.linspace(0.0, 10.0, 2001)
    S = SpectrumS(w, np.exp(-((w - 5.0) ** 2)).astype(complex))
    assert kappa(S) < 1e-10


def test_kappa_positive_for_skewed_bump():
    w = np.linspace(0.0, 10.0, 2001)
    v = np.exp(-((w - 5.0) ** 2)) * (1 + 0.5 * np.tanh(w - 5.0))
    assert kappa(SpectrumS(w, v.astype(complex))) > 0.01


def test_kappa_invariant_under_translation():
    p1, p2 = _pair(Genus.ORTHONORMAL, 3.0)
    k0 = kappa(spectrum_S(p1, p2))
    kt = kappa(spectrum_S(translate(p1, 37), translate(p2, 37)))
    assert abs(kt - k0) < 1e-8


def test_metrics_invariant_under_scale_and_shift():
    spec = SplineSpec(Genus.ORTHONORMAL, 3.0, 0.0)
    p1, p2 = _pair(Genus.ORTHONORMAL, 3.0)
    r0, k0 = rho(p1, p2), kappa(spectrum_S(p1, p2))
    for s, a in ((2.0, 0.0), (0.5, 3.7), (4.0, -11.0)):
        f1 = synthesize_from_fourier(
            lambda w: np.exp(-1j * w * a) * wavelet_fourier(spec, s * w)
            / np.sqrt(s), GRID, None)
        f2 = synthesize_from_fourier(
            lambda w: np.exp(-1j * w * a)
            * wavelet_fourier(spec.shifted(0.5), s * w) / np.sqrt(s),
            GRID, None)
        assert abs(rho(f1, f2) - r0) < 1e-10
        # the reflection integral is re-discretized at the new effective
        # resolution; identity holds to grid accuracy
        assert abs(kappa(spectrum_S(f1, f2)) - k0) < 5e-3


def test_kappa_decreases_with_degree():
    for genus in (Genus.BSPLINE_SEMIORTHOGONAL, Genus.ORTHONORMAL):
        ks = [kappa(spectrum_S(*_pair(genus, a))) for a in (1.0, 3.0, 6.0)]
        assert ks[0] > ks[1] > ks[2]


def test_one_sided_leakage_small_for_good_pairs():
    p1, p2 = _pair(Genus.ORTHONORMAL, 6.0)
    S = spectrum_S(p1, p2)
    assert one_sided_leakage(S) < 1e-6
    assert centroid(S) > 0


# ---------------------------------------------------------------------------
# table

def test_metrics_table_frozen_values():
    # regression freeze of the implementation's canonical table
    entries = [("shannon", SplineSpec(Genus.SHANNON))]
    for genus in (Genus.BSPLINE_SEMIORTHOGONAL, Genus.ORTHONORMAL):
        for alpha in (1.0, 3.0, 6.0):
            entries.append((f"{genus.value}-{alpha:g}",
                            SplineSpec(genus, alpha, 0.0)))
    rows = {r.label: r for r in metrics_table(entries)}
    frozen = {
        "shannon": 0.0,
        "bspline-1": 0.940314,
        "bspline-3": 0.112999,
        "bspline-6": 0.014626,
        "orthonormal-1": 0.920926,
        "orthonormal-3": 0.143153,
        "orthonormal-6": 0.063499,
    }
    for label, k in frozen.items():
        assert rows[label].rho == pytest.approx(1.0, abs=1e-6)
        assert rows[label].kappa == pytest.approx(k, abs=1e-4)


def test_metrics_table_error_row_still_emitted():
    p1, _ = _pair(Genus.ORTHONORMAL, 3.0)
    other = synthesize_wavelet(SplineSpec(Genus.ORTHONORMAL, 3.0, 0.5),
                               Grid1D(2048, -32.0, 1 / 32), None)
    rows = metrics_table([("bad", p1, other), ("ok", SplineSpec(Genus.SHANNON))])
    assert rows[0].error != "" and np.isnan(rows[0].rho)
    assert rows[1].error == "" and rows[1].rho == pytest.approx(1.0, abs=1e-9)


# ---------------------------------------------------------------------------
# user-supplied filterbank taps

def test_haar_taps_give_degenerate_pair(tmp_path):
    # identical trees: psi2 == psi1, and <psi, H psi> == 0 => rho == 0
    h = np.array([1.0, 1.0]) / np.sqrt(2)
    psi1, psi2 = wavelet_pair_from_lowpass_taps(
        np.array([0, 1]), h, h, GRID)
    assert np.allclose(psi1.values, psi2.values)
    assert rho(psi1, psi2) < 1e-12


def test_taps_pair_metrics_run():
    # Daubechies-2 vs itself shifted provides a nontrivial, valid pair
    d2 = np.array([0.48296291314469025, 0.836516303737469,
                   0.22414386804185735, -0.12940952255092145])
    psi1, psi2 = wavelet_pair_from_lowpass_taps(
        np.arange(4), d2, d2[::-1], GRID)
    r = rho(psi1, psi2)
    k = kappa(spectrum_S(psi1, psi2))
    assert 0.0 <= r <= 1.0
    assert k >= 0.0
