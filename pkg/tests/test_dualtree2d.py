"""2D directional dual-tree transform: bank, analysis, both synthesis paths."""

import numpy as np
import pytest

from shiftwave import (
    MU,
    ORIENTATIONS,
    Direction2D,
    Genus,
    Grid1D,
    SampledSignal2D,
    SplineSpec,
    analyze2d,
    build_directional_bank,
    coeffs2d_from_json,
    coeffs2d_to_json,
    complex_wavelet,
    directional_shift_residual,
    fdht_apply,
    real_wavelet_shifted,
    reconstruct2d,
)

from conftest import random_bandlimited_2d, rel_err

GRID = Grid1D(64, -16.0, 0.5)
SPEC_O = SplineSpec(Genus.ORTHONORMAL, 3.0, 0.0)
SPEC_B = SplineSpec(Genus.BSPLINE_SEMIORTHOGONAL, 3.0, 0.0)


@pytest.fixture(scope="module")
def bank_o():
    return build_directional_bank(SPEC_O, 3, GRID, GRID)


@pytest.fixture(scope="module")
def bank_b():
    return build_directional_bank(SPEC_B, 3, GRID, GRID)


def _fft2_centered(values, dx):
    return np.fft.fftshift(np.fft.fft2(values)) * dx * dx


# ---------------------------------------------------------------------------
# channel geometry

def test_orientation_constants():
    assert ORIENTATIONS == (0.0, 0.0, np.pi / 2, np.pi / 2,
                            np.pi / 4, 3 * np.pi / 4)
    assert MU[:4] == (1.0, 1.0, 1.0, 1.0)
    assert MU[4] == pytest.approx(1 / np.sqrt(2))
    assert MU[5] == pytest.approx(1 / np.sqrt(2))


@pytest.mark.parametrize("ell,tol", [(5, 1e-10), (6, 1e-10)])
def test_diagonal_channels_single_quadrant(bank_o, ell, tol):
    # diagonal channel spectra live in two opposite quadrants only
    w = complex_wavelet(bank_o, ell, 1)
    spec = np.abs(_fft2_centered(w.values, GRID.dx)) ** 2
    half = GRID.n // 2
    q_pp = spec[half + 1:, half + 1:].sum()  # wx>0, wy>0
    q_mp = spec[half + 1:, :half].sum()      # wx<0, wy>0
    total = spec.sum()
    if ell == 5:
        assert q_mp / total < tol
        assert q_pp / total > 0.4
    else:
        assert q_pp / total < tol
        assert q_mp / total > 0.4


def test_diagonal_leakage_splines_small(bank_b):
    w = complex_wavelet(bank_b, 5, 1)
    spec = np.abs(_fft2_centered(w.values, GRID.dx)) ** 2
    half = GRID.n // 2
    assert spec[:half, half + 1:].sum() / spec.sum() < 1e-3


def test_orientation_sweep_peaks_at_45_degrees(bank_o):
    # the channel-5 response to oriented plane waves peaks along the diagonal
    x = GRID.x
    X, Y = np.meshgrid(x, x)
    w = complex_wavelet(bank_o, 5, 1)
    k = 2.0
    best_theta, best = None, -1.0
    for theta in np.linspace(0, np.pi, 37):
        wave = np.cos(k * (np.cos(theta) * X + np.sin(theta) * Y))
        resp = abs(np.vdot(w.values, wave)) * GRID.dx ** 2
        if resp > best:
            best_theta, best = theta, resp
    assert best_theta == pytest.approx(np.pi / 4, abs=np.pi / 36)


# ---------------------------------------------------------------------------
# perfect reconstruction and path equality

@pytest.mark.parametrize("which,tol", [("orthonormal", 1e-5), ("bspline", 1e-5)])
def test_perfect_reconstruction_2d(which, tol, bank_o, bank_b, rng):
    bank = bank_o if which == "orthonormal" else bank_b
    worst = 0.0
    for _ in range(5):
        f = random_bandlimited_2d(rng, GRID, GRID, 3)
        rec = reconstruct2d(analyze2d(f, bank), bank)
        worst = max(worst, rel_err(rec.values, f.values))
    assert worst < tol


def test_synthesis_paths_agree(bank_b, rng):
    f = random_bandlimited_2d(rng, GRID, GRID, 3)
    co = analyze2d(f, bank_b)
    a = reconstruct2d(co, bank_b, path="amp_phase")
    b = reconstruct2d(co, bank_b, path="separable")
    assert rel_err(a.values, b.values) < 1e-10


def test_reconstruct2d_rejects_unknown_path(bank_o, rng):
    f = random_bandlimited_2d(rng, GRID, GRID, 2)
    with pytest.raises(ValueError):
        reconstruct2d(analyze2d(f, bank_o), bank_o, path="nope")


# ---------------------------------------------------------------------------
# directional shiftability

BIG = Grid1D(256, -16.0, 0.125)


@pytest.fixture(scope="module")
def bank_shift():
    return build_directional_bank(SPEC_B, 2, BIG, BIG)


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5, 6])
def test_directional_shift_residual(ell):
    assert directional_shift_residual(SPEC_B, ell, 0.3, BIG, BIG) < 1e-6


def test_directional_shift_matches_explicit_rebuild():
    # applying the directional fHT along the channel orientation equals
    # rebuilding the real wavelet with per-axis fractional shifts
    ell, tau_bar = 5, 0.25
    theta = ORIENTATIONS[ell - 1]
    base = real_wavelet_shifted(SPEC_B, ell, 0.0, 0.0, BIG, BIG)
    moved = fdht_apply(base, Direction2D(theta), tau_bar)
    mu = MU[ell - 1]
    tx = -tau_bar * mu * np.cos(theta)
    ty = -tau_bar * mu * np.sin(theta)
    target = real_wavelet_shifted(SPEC_B, ell, tx, ty, BIG, BIG)
    assert rel_err(moved.values.real, target.values.real) < 1e-6


# ---------------------------------------------------------------------------
# coefficient structure

def test_single_channel_wavelet_roundtrip(bank_o):
    # a level-1 channel wavelet analyzed with its own bank concentrates in
    # that channel; its coefficient there is mu/2 scaled by the framing
    w = complex_wavelet(bank_o, 1, 1)
    f = SampledSignal2D(GRID, GRID, w.values.real.astype(complex))
    co = analyze2d(f, bank_o)
    peak = np.unravel_index(np.argmax(np.abs(co.bands[0][0])),
                            co.bands[0][0].shape)
    mags = [np.max(np.abs(co.bands[0][q])) for q in range(6)]
    assert mags[0] == max(mags)
    assert np.abs(co.bands[0][0][peak]) > 0.1


def test_coeffs2d_json_round_trip(bank_o, rng):
    f = random_bandlimited_2d(rng, GRID, GRID, 2)
    co = analyze2d(f, bank_o)
    back = coeffs2d_from_json(coeffs2d_to_json(co))
    assert back.levels == co.levels
    assert back.grid_x == co.grid_x
    assert back.grid_y == co.grid_y
    assert back.spec == co.spec
    for j in range(co.levels):
        assert np.array_equal(back.bands[j], co.bands[j])
    assert np.array_equal(back.coarse, co.coarse)
