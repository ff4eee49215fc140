"""Fractional B-splines, wavelet filters, and frequency-domain synthesis.

The fractional B-spline of degree ``alpha >= 0`` and shift ``tau`` is
defined through its Fourier transform

    bhat(w) = ((1 - e^{-jw})/(jw))^{(alpha+1)/2 + tau}
              * ((1 - e^{jw})/(-jw))^{(alpha+1)/2 - tau}

with principal-branch fractional powers taken factor by factor.  Each
genus (semi-orthogonal B-spline, orthonormal, dual) pairs a scaling
function built from ``bhat`` with a wavelet filter ``G``; the wavelet is
synthesized on a periodic grid by evaluating

    psihat(w) = G(e^{jw/2}) * scalinghat(w/2)

on the DFT frequencies and inverse transforming.  The key structural fact
driving the whole library: applying the fractional Hilbert transform with
shift ``tau_bar`` to any such wavelet gives back the wavelet of the same
genus and degree with shift ``tau - tau_bar``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import curve_fit
from scipy.special import zeta

from .fht import fht_apply
from .signal import Grid1D, SampledSignal1D, l2_norm

__all__ = [
    "Genus",
    "SplineSpec",
    "SpectralFilter",
    "SynthesisError",
    "bspline_fourier",
    "autocorrelation",
    "refinement_filter",
    "autocorrelation_filter",
    "wavelet_filter",
    "scaling_fourier",
    "wavelet_fourier",
    "synthesize_wavelet",
    "synthesize_scaling",
    "synthesize_from_fourier",
    "fd_filter",
    "spline_shift_residual",
    "wavelet_shift_residual",
    "gabor_atom",
    "fit_gabor",
    "write_filter_csv",
]


class SynthesisError(RuntimeError):
    """Synthesized function does not decay enough inside the grid."""


class Genus(str, enum.Enum):
    BSPLINE_SEMIORTHOGONAL = "bspline"
    ORTHONORMAL = "orthonormal"
    DUAL_BSPLINE = "dual"
    SHANNON = "shannon"
    GABOR_REFERENCE = "gabor"


_SPLINE_GENERA = (
    Genus.BSPLINE_SEMIORTHOGONAL,
    Genus.ORTHONORMAL,
    Genus.DUAL_BSPLINE,
)


@dataclass(frozen=True)
class SplineSpec:
    """Wavelet family selector: genus, degree ``alpha``, shift ``tau``."""

    genus: Genus
    alpha: float = 3.0
    tau: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "genus", Genus(self.genus))
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")

    def shifted(self, dtau: float) -> "SplineSpec":
        return replace(self, tau=self.tau + dtau)


@dataclass(frozen=True)
class SpectralFilter:
    """A 2pi-periodic transfer function, evaluated on arrays of omega."""

    fn: object
    label: str = ""

    def __call__(self, omega):
        return self.fn(np.asarray(omega, dtype=float))

    def impulse_response(self, n: int) -> np.ndarray:
        """n taps from the inverse DFT of the sampled transfer function,
        FFT tap order (tap k at index k mod n)."""
        w = 2 * np.pi * np.arange(n) / n
        return np.fft.ifft(self(w))


def bspline_fourier(alpha: float, tau: float, omega) -> np.ndarray:
    """Fourier transform of the fractional B-spline; 1 at omega = 0."""
    w = np.asarray(omega, dtype=float)
    h = (alpha + 1) / 2
    out = np.ones(w.shape, dtype=complex)
    nz = w != 0
    wn = w[nz]
    z1 = (1 - np.exp(-1j * wn)) / (1j * wn)
    out[nz] = z1 ** (h + tau) * np.conj(z1) ** (h - tau)
    return out


def autocorrelation(alpha: float, omega) -> np.ndarray:
    """A(w) = sum_k |bhat(w + 2 pi k)|^2, summed in closed form.

    The lattice sum reduces to a pair of Hurwitz zeta values, which gives
    full double precision for every degree (direct truncation would need
    astronomically many terms for small ``alpha``).  Independent of tau.
    """
    w = np.asarray(omega, dtype=float)
    s = 2 * alpha + 2
    wr = np.mod(w, 2 * np.pi)
    a = wr / (2 * np.pi)
    out = np.ones(w.shape)
    interior = (a > 1e-12) & (a < 1 - 1e-12)
    ai = a[interior]
    out[interior] = (
        np.abs(2 * np.sin(wr[interior] / 2)) ** s
        * (2 * np.pi) ** (-s)
        * (zeta(s, ai) + zeta(s, 1 - ai))
    )
    return out


def _refinement(alpha, tau, w):
    h = (alpha + 1) / 2
    return (
        2.0 ** (-(alpha + 1))
        * (1 + np.exp(-1j * w)) ** (h + tau)
        * (1 + np.exp(1j * w)) ** (h - tau)
    )


def refinement_filter(alpha: float, tau: float) -> SpectralFilter:
    """Two-scale filter H with H(1) = 1 and bhat(2w) = H(e^{jw}) bhat(w)."""
    return SpectralFilter(
        lambda w: _refinement(alpha, tau, w),
        label=f"H[alpha={alpha},tau={tau}]",
    )


def autocorrelation_filter(alpha: float) -> SpectralFilter:
    return SpectralFilter(
        lambda w: autocorrelation(alpha, w), label=f"A[alpha={alpha}]"
    )


def _G(genus: Genus, alpha, tau, w):
    """Wavelet filter G(e^{jw}) = e^{jw} Q(-e^{-jw}) H(-e^{-jw}).

    Evaluating a transfer function at -e^{-jw} is evaluating it at
    e^{j(pi - w)}, so both Q and H are sampled at nu = pi - w.
    """
    nu = np.pi - w
    if genus == Genus.BSPLINE_SEMIORTHOGONAL:
        Q = autocorrelation(alpha, nu)
        H = _refinement(alpha, tau, nu)
    elif genus == Genus.ORTHONORMAL:
        Q = 1.0
        H = _refinement(alpha, tau, nu) * np.sqrt(
            autocorrelation(alpha, nu) / autocorrelation(alpha, 2 * nu)
        )
    elif genus == Genus.DUAL_BSPLINE:
        s = 2 * alpha + 2
        An = autocorrelation(alpha, nu)
        Anp = autocorrelation(alpha, nu + np.pi)
        a2 = (
            Anp**2 * np.abs(np.sin(nu / 2)) ** s * An
            + An**2 * np.abs(np.cos(nu / 2)) ** s * Anp
        )
        Q = An * autocorrelation(alpha, 2 * nu) / a2
        H = (
            _refinement(alpha, tau, nu)
            * autocorrelation(alpha, nu)
            / autocorrelation(alpha, 2 * nu)
        )
    else:
        raise ValueError(f"unsupported genus for wavelet filter: {genus}")
    return np.exp(1j * w) * Q * H


def wavelet_filter(spec: SplineSpec) -> SpectralFilter:
    if spec.genus not in _SPLINE_GENERA:
        raise ValueError(f"unsupported genus for wavelet filter: {spec.genus}")
    return SpectralFilter(
        lambda w: _G(spec.genus, spec.alpha, spec.tau, w),
        label=f"G[{spec.genus.value},alpha={spec.alpha},tau={spec.tau}]",
    )


def scaling_fourier(spec: SplineSpec, omega) -> np.ndarray:
    """Fourier transform of the genus's scaling function."""
    w = np.asarray(omega, dtype=float)
    if spec.genus == Genus.SHANNON:
        out = np.where(np.abs(w) < np.pi, 1.0, 0.0).astype(complex)
        out[np.isclose(np.abs(w), np.pi)] = 1 / np.sqrt(2)
        return out * np.exp(-1j * w * spec.tau)
    b = bspline_fourier(spec.alpha, spec.tau, w)
    if spec.genus == Genus.ORTHONORMAL:
        return b / np.sqrt(autocorrelation(spec.alpha, w))
    if spec.genus == Genus.DUAL_BSPLINE:
        return b / autocorrelation(spec.alpha, w)
    if spec.genus == Genus.BSPLINE_SEMIORTHOGONAL:
        return b
    raise ValueError(f"unsupported genus for scaling function: {spec.genus}")


def wavelet_fourier(spec: SplineSpec, omega) -> np.ndarray:
    """Fourier transform of the genus's wavelet."""
    w = np.asarray(omega, dtype=float)
    if spec.genus == Genus.SHANNON:
        aw = np.abs(w)
        out = np.where((aw > np.pi) & (aw < 2 * np.pi), 1.0, 0.0).astype(complex)
        out[np.isclose(aw, np.pi) | np.isclose(aw, 2 * np.pi)] = 1 / np.sqrt(2)
        return out * np.exp(-1j * w / 2) * np.exp(-1j * np.pi * spec.tau * np.sign(w))
    if spec.genus not in _SPLINE_GENERA:
        raise ValueError(f"unsupported genus for wavelet synthesis: {spec.genus}")
    return _G(spec.genus, spec.alpha, spec.tau, w / 2) * scaling_fourier(
        spec, w / 2
    )


def synthesize_from_fourier(hat_fn, grid: Grid1D,
                            boundary_tol: float | None = 1e-8,
                            what: str = "function") -> SampledSignal1D:
    """Sample a function from its Fourier transform on the periodic grid.

    The samples are those of the periodization of the function over the
    grid length; ``boundary_tol`` bounds the allowed relative magnitude at
    the two boundary samples (pass ``None`` to skip the check on identities
    that hold for the periodization itself).
    """
    w = grid.omega
    vals = np.fft.ifft(hat_fn(w) * np.exp(1j * w * grid.x0)) * (grid.n / grid.length)
    f = SampledSignal1D(grid, vals)
    if boundary_tol is not None:
        peak = np.max(np.abs(vals))
        edge = max(abs(vals[0]), abs(vals[-1]))
        if peak == 0 or edge > boundary_tol * peak:
            ratio = edge / peak if peak else np.inf
            raise SynthesisError(
                f"{what} boundary magnitude {ratio:.2e} exceeds "
                f"{boundary_tol:.0e}; enlarge the grid length "
                f"(currently {grid.length}) at fixed dx"
            )
    return f


def synthesize_wavelet(spec: SplineSpec, grid: Grid1D,
                       boundary_tol: float | None = 1e-8) -> SampledSignal1D:
    if spec.genus == Genus.SHANNON:
        x = grid.x
        vals = np.sinc((x - 0.5) / 2) * np.cos(
            3 * np.pi * (x - 0.5) / 2 - np.pi * spec.tau
        )
        return SampledSignal1D(grid, vals.astype(complex))
    if spec.genus == Genus.GABOR_REFERENCE:
        ref = synthesize_wavelet(
            replace(spec, genus=Genus.BSPLINE_SEMIORTHOGONAL), grid, boundary_tol
        )
        _, fitted, _ = fit_gabor(ref)
        return fitted
    return synthesize_from_fourier(
        lambda w: wavelet_fourier(spec, w), grid, boundary_tol, what="wavelet"
    )


def synthesize_scaling(spec: SplineSpec, grid: Grid1D,
                       boundary_tol: float | None = 1e-8) -> SampledSignal1D:
    if spec.genus == Genus.SHANNON:
        vals = np.sinc(grid.x - spec.tau)
        return SampledSignal1D(grid, vals.astype(complex))
    if spec.genus not in _SPLINE_GENERA:
        raise ValueError(f"unsupported genus for scaling function: {spec.genus}")
    return synthesize_from_fourier(
        lambda w: scaling_fourier(spec, w), grid, boundary_tol, what="scaling function"
    )


def fd_filter(tau: float) -> SpectralFilter:
    """All-pass fractional finite-difference filter
    D(e^{jw}) = (1 - e^{-jw})^tau (1 - e^{jw})^{-tau}; cos(pi*tau) at w=0."""

    def evaluate(w):
        wr = np.mod(w, 2 * np.pi)
        out = np.full(wr.shape, np.cos(np.pi * tau), dtype=complex)
        nz = (wr > 1e-12) & (wr < 2 * np.pi - 1e-12)
        z = np.exp(-1j * wr[nz])
        out[nz] = (1 - z) ** tau * (1 - np.conj(z)) ** (-tau)
        return out

    return SpectralFilter(evaluate, label=f"D[tau={tau}]")


def spline_shift_residual(alpha: float, tau: float, tau_bar: float,
                          grid: Grid1D) -> float:
    """Relative residual of the digital-filter form of the fHT of a
    B-spline: fht(beta[tau], tau_bar) == FD(tau_bar) * beta[tau - tau_bar]."""
    spec = SplineSpec(Genus.BSPLINE_SEMIORTHOGONAL, alpha, tau)
    lhs = fht_apply(synthesize_scaling(spec, grid, None), tau_bar)
    D = fd_filter(tau_bar)
    rhs = synthesize_from_fourier(
        lambda w: D(w) * bspline_fourier(alpha, tau - tau_bar, w), grid, None
    )
    ref = l2_norm(lhs)
    return l2_norm(SampledSignal1D(grid, lhs.values - rhs.values)) / ref


def wavelet_shift_residual(spec: SplineSpec, tau_bar: float,
                           grid: Grid1D) -> float:
    """Relative residual of the wavelet shift identity
    fht(psi[tau], tau_bar) == psi[tau - tau_bar] (same genus and degree)."""
    psi = synthesize_wavelet(spec, grid, None)
    lhs = fht_apply(psi, tau_bar)
    rhs = synthesize_wavelet(spec.shifted(-tau_bar), grid, None)
    return l2_norm(SampledSignal1D(grid, lhs.values - rhs.values)) / l2_norm(psi)


# ---------------------------------------------------------------------------
# Gabor reference

def gabor_atom(grid: Grid1D, amp: float, x_c: float, sigma: float,
               omega0: float, phase: float) -> SampledSignal1D:
    """Gaussian-windowed cosine."""
    x = grid.x
    vals = amp * np.exp(-((x - x_c) ** 2) / (2 * sigma**2)) * np.cos(
        omega0 * (x - x_c) + phase
    )
    return SampledSignal1D(grid, vals.astype(complex))


def fit_gabor(psi: SampledSignal1D):
    """Least-squares Gabor fit; returns (params, fitted signal, correlation).

    correlation is the normalized inner product between the input and the
    fitted atom, in [0, 1] for a successful fit.
    """
    x = psi.grid.x
    y = psi.values.real
    env = np.abs(y)
    x_c0 = float(np.sum(x * env**2) / np.sum(env**2))
    sigma0 = float(np.sqrt(np.sum((x - x_c0) ** 2 * env**2) / np.sum(env**2)))
    # crude frequency estimate from the magnitude-spectrum centroid
    F = np.abs(np.fft.fft(y))
    w = psi.grid.omega
    pos = w > 0
    omega00 = float(np.sum(w[pos] * F[pos]) / np.sum(F[pos]))
    p0 = [float(np.max(env)), x_c0, sigma0, omega00, 0.0]

    def model(xv, amp, x_c, sigma, omega0, phase):
        return amp * np.exp(-((xv - x_c) ** 2) / (2 * sigma**2)) * np.cos(
            omega0 * (xv - x_c) + phase
        )

    params, _ = curve_fit(model, x, y, p0=p0, maxfev=20000)
    fitted = SampledSignal1D(psi.grid, model(x, *params).astype(complex))
    num = float(np.sum(y * fitted.values.real) * psi.grid.dx)
    corr = num / (l2_norm(psi) * l2_norm(fitted))
    return params, fitted, corr


def write_filter_csv(filt: SpectralFilter, n: int, path) -> None:
    """Export n impulse-response taps as CSV rows ``k,re,im``."""
    taps = filt.impulse_response(n)
    ks = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    order = np.argsort(ks)
    with open(path, "w") as fh:
        fh.write(f"# {filt.label}\n" if filt.label else "")
        fh.write("k,re,im\n")
        for i in order:
            fh.write(f"{ks[i]},{float(taps[i].real)!r},{float(taps[i].imag)!r}\n")
