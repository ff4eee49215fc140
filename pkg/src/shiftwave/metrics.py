"""Quality metrics for dual-tree wavelet pairs.

Two numbers summarize how good a pair (psi1, psi2) is for a dual-tree
transform:

* ``rho``: normalized correlation between psi2 and the Hilbert transform
  of psi1 (1 means the trees form an exact quadrature pair);
* ``kappa``: asymmetry of the one-sided spectrum ``S = psihat1 + j*psihat2``
  about its centroid (0 means the pair is a modulated symmetric window,
  i.e. Gabor-like).

``kappa`` as a bare integral is not translation invariant: moving the
wavelet by ``c`` multiplies S by a linear phase ``exp(-j*w*c)`` and changes
the integral.  We therefore canonically align S first — remove the linear
phase corresponding to the envelope centroid and the constant phase at the
spectral centroid — which makes kappa a function of the wavelet *shape*
only.  The alignment is computed from S itself, so the result is invariant
under translation and dilation of the synthesized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fht import hilbert
from .fracspline import (
    Genus,
    SplineSpec,
    SynthesisError,
    wavelet_fourier,
    synthesize_from_fourier,
)
from .signal import Grid1D, SampledSignal1D, inner_product, l2_norm

__all__ = [
    "SpectrumS",
    "rho",
    "spectrum_S",
    "one_sided_leakage",
    "centroid",
    "kappa",
    "metrics_table",
    "TableRow",
    "wavelet_pair_from_lowpass_taps",
    "read_taps_csv",
]


@dataclass
class SpectrumS:
    """Complex spectrum S on a uniform frequency grid symmetric about 0."""

    omega: np.ndarray
    values: np.ndarray


def rho(psi1: SampledSignal1D, psi2: SampledSignal1D) -> float:
    """Quadrature-correspondence metric, clamped to [0, 1]."""
    n1 = l2_norm(psi1)
    n2 = l2_norm(psi2)
    if n1 == 0 or n2 == 0:
        raise ValueError("zero-norm input")
    v = inner_product(psi2, hilbert(psi1)).real / (n1 * n2)
    return max(v, 0.0)


def spectrum_S(psi1: SampledSignal1D, psi2: SampledSignal1D,
               W: float | None = None, pad: int = 8) -> SpectrumS:
    """Sample S(w) = psihat1(w) + j*psihat2(w) on a fine frequency grid.

    Zero-pads by ``pad`` for denser bins; keeps |w| <= W (defaults to the
    full grid band).
    """
    if psi1.grid != psi2.grid:
        raise ValueError("signals must share a grid")
    g = psi1.grid
    n = g.n * pad
    vals = np.fft.fft(psi1.values, n) + 1j * np.fft.fft(psi2.values, n)
    w = 2 * np.pi * np.fft.fftfreq(n, d=g.dx)
    S = g.dx * np.exp(-1j * w * g.x0) * vals
    order = np.argsort(w)
    w, S = w[order], S[order]
    if W is not None:
        keep = np.abs(w) <= W
        w, S = w[keep], S[keep]
    return SpectrumS(w, S)


def one_sided_leakage(S: SpectrumS) -> float:
    """max |S| on the closed negative half-line, relative to peak |S|."""
    m = np.abs(S.values)
    peak = m.max()
    neg = S.omega <= 0
    return float(m[neg].max() / peak) if peak > 0 else 0.0


def centroid(S: SpectrumS) -> float:
    m = np.abs(S.values)
    tot = np.trapezoid(m, S.omega)
    if tot == 0:
        raise ValueError("zero spectrum")
    return float(np.trapezoid(S.omega * m, S.omega) / tot)


def _align(S: SpectrumS) -> np.ndarray:
    """Remove the linear phase of the envelope centroid and the constant
    phase at the spectral centroid."""
    w, v = S.omega, S.values
    if not np.any(v):
        raise ValueError("zero spectrum")
    # envelope-centroid linear phase from a one-bin autocorrelation lag:
    # P(u) = int S(w) conj(S(w-u)) dw is the transform of the squared
    # envelope, so its phase slope at 0 is minus the envelope centroid.
    # A finite lag avoids differentiating S (robust to band edges).
    du = w[1] - w[0]
    P = np.trapezoid(v[1:] * np.conj(v[:-1]), w[1:])
    t_star = -float(np.angle(P)) / du
    v = v * np.exp(1j * w * t_star)
    wb = centroid(S)
    s_wb = np.interp(wb, w, v.real) + 1j * np.interp(wb, w, v.imag)
    if abs(s_wb) > 0:
        v = v * np.exp(-1j * np.angle(s_wb))
    return v


def kappa(S: SpectrumS) -> float:
    """Asymmetry of the canonically aligned S about its centroid."""
    w = S.omega
    v = _align(S)
    m = np.abs(v)
    tot = np.trapezoid(m, w)
    wb = float(np.trapezoid(w * m, w) / tot)
    o = np.linspace(0.0, (w[-1] - w[0]) / 2 + abs(wb), len(w))
    Sp = np.interp(wb + o, w, v.real, left=0, right=0) + 1j * np.interp(
        wb + o, w, v.imag, left=0, right=0
    )
    Sm = np.interp(wb - o, w, v.real, left=0, right=0) + 1j * np.interp(
        wb - o, w, v.imag, left=0, right=0
    )
    num = np.trapezoid(np.abs(np.conj(Sp) - Sm), o)
    return float(num / tot)


@dataclass
class TableRow:
    label: str
    rho: float
    kappa: float
    error: str = ""


def _pair_from_spec(spec: SplineSpec, grid: Grid1D):
    if spec.genus == Genus.SHANNON:
        # periodized synthesis keeps the pair spectrally exact on the grid
        p1 = synthesize_from_fourier(lambda w: wavelet_fourier(spec, w), grid, None)
        p2 = synthesize_from_fourier(
            lambda w: wavelet_fourier(spec.shifted(0.5), w), grid, None
        )
        return p1, p2
    p1 = synthesize_wavelet_checked(spec, grid)
    p2 = synthesize_wavelet_checked(spec.shifted(0.5), grid)
    return p1, p2


def synthesize_wavelet_checked(spec: SplineSpec, grid: Grid1D) -> SampledSignal1D:
    # low-degree wavelets decay too slowly for the strict boundary gate on
    # desk-size grids; the metric integrals are insensitive at this level
    from .fracspline import synthesize_wavelet

    return synthesize_wavelet(spec, grid, boundary_tol=None)


def metrics_table(entries, grid: Grid1D | None = None) -> list[TableRow]:
    """Compute (rho, kappa) rows.

    ``entries`` is a list of ``(label, SplineSpec)`` or
    ``(label, psi1, psi2)`` items; signal pairs are used as given.
    """
    if grid is None:
        grid = Grid1D(4096, -64.0, 1 / 32)
    rows = []
    for entry in entries:
        label = entry[0]
        try:
            pad = 8
            if len(entry) == 2:
                psi1, psi2 = _pair_from_spec(entry[1], grid)
                if entry[1].genus == Genus.SHANNON:
                    # periodized band-limited samples don't decay at the
                    # boundary; zero-padding would ring their spectrum
                    pad = 1
            else:
                psi1, psi2 = entry[1], entry[2]
            S = spectrum_S(psi1, psi2, pad=pad)
            rows.append(TableRow(label, rho(psi1, psi2), kappa(S)))
        except (SynthesisError, ValueError) as exc:
            rows.append(TableRow(label, np.nan, np.nan, error=str(exc)))
    return rows


# ---------------------------------------------------------------------------
# user-supplied filterbank pairs

def read_taps_csv(path):
    """Read ``k,h1,h2`` rows: per-tree lowpass filter taps."""
    ks, h1, h2 = [], [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("k,"):
                continue
            a, b, c = line.split(",")
            ks.append(int(a))
            h1.append(float(b))
            h2.append(float(c))
    if not ks:
        raise ValueError(f"{path}: no taps")
    return np.asarray(ks), np.asarray(h1), np.asarray(h2)


def _cascade_hat(ks, h, levels):
    """Frequency response of an iterated two-channel cascade.

    ``h`` is the lowpass; the highpass is its alternating flip.  Returns a
    function of omega evaluating the depth-``levels`` wavelet transform.
    """
    h = np.asarray(h, float)
    h = h / h.sum()  # H(0) = 1
    g = ((-1.0) ** np.arange(len(h))) * h[::-1]
    kg = -(ks[::-1])  # flipped tap positions

    def H(w):
        return np.sum(h[:, None] * np.exp(-1j * np.outer(ks, w)), axis=0)

    def G(w):
        return np.sum(g[:, None] * np.exp(-1j * np.outer(kg, w)), axis=0)

    def hat(w):
        w = np.asarray(w, float)
        out = G(w / 2).astype(complex)
        for j in range(2, levels + 1):
            out = out * H(w / 2**j)
        return out

    return hat


def wavelet_pair_from_lowpass_taps(ks, h1, h2, grid: Grid1D | None = None,
                                   levels: int = 8):
    """Synthesize the two trees' wavelets from lowpass taps by an
    ``levels``-deep cascade; returns (psi1, psi2)."""
    if grid is None:
        grid = Grid1D(4096, -64.0, 1 / 32)
    p1 = synthesize_from_fourier(_cascade_hat(ks, h1, levels), grid, None)
    p2 = synthesize_from_fourier(_cascade_hat(ks, h2, levels), grid, None)
    return p1, p2
