"""Fractional Hilbert transform (fHT) group and directional extensions.

The fHT with shift ``tau`` is the unitary operator acting in the frequency
domain as ``exp(1j*pi*tau*sign(omega))``; equivalently
``cos(pi*tau)*I - sin(pi*tau)*H`` where ``H`` is the classical Hilbert
transform.  Shifts form a group under addition mod 2; we store the
canonical representative in ``(-1, 1]``.

On the discrete periodic grid the DC bin (and the Nyquist bin for even
``n``) has no frequency sign; both get the multiplier ``cos(pi*tau)``,
the mean of the two one-sided limits.  This keeps real signals real and
makes the plain Hilbert transform annihilate constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import (
    GridError,
    SampledSignal1D,
    SampledSignal2D,
    l2_norm,
    to_spectrum,
)

__all__ = [
    "FhtShift",
    "Direction2D",
    "SupportError",
    "fht_apply",
    "hilbert",
    "fht_compose",
    "fht_inverse",
    "dht_apply",
    "fdht_apply",
    "bedrosian_residual",
]


def _canonical(tau: float) -> float:
    """Representative of tau mod 2 in (-1, 1]."""
    r = float(tau) % 2.0
    if r > 1.0:
        r -= 2.0
    return r


@dataclass(frozen=True)
class FhtShift:
    """Dimensionless shift parameter, canonicalized to (-1, 1] mod 2."""

    tau: float

    def __post_init__(self):
        object.__setattr__(self, "tau", _canonical(self.tau))


def _tau_of(tau) -> float:
    return tau.tau if isinstance(tau, FhtShift) else float(tau)


@dataclass(frozen=True)
class Direction2D:
    """Orientation theta in [0, pi) with unit vector (cos theta, sin theta)."""

    theta: float

    def __post_init__(self):
        t = float(self.theta) % np.pi
        object.__setattr__(self, "theta", t)

    @property
    def unit(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta)])


class SupportError(ValueError):
    """A spectral-support precondition does not hold."""


def _fht_multiplier(n: int, tau: float) -> np.ndarray:
    k = np.fft.fftfreq(n, d=1.0)  # sign(k) == sign(omega)
    mult = np.exp(1j * np.pi * tau * np.sign(k))
    mult[0] = np.cos(np.pi * tau)
    if n % 2 == 0:
        mult[n // 2] = np.cos(np.pi * tau)
    return mult


def fht_apply(f: SampledSignal1D, tau) -> SampledSignal1D:
    """Apply the fractional Hilbert transform with shift ``tau``."""
    tau = _tau_of(tau)
    was_real = f.is_real()
    F = np.fft.fft(f.values) * _fht_multiplier(f.grid.n, tau)
    out = np.fft.ifft(F)
    if was_real:
        out = out.real.astype(complex)
    return SampledSignal1D(f.grid, out)


def hilbert(f: SampledSignal1D) -> SampledSignal1D:
    """Classical Hilbert transform: multiplier -1j*sign(omega)."""
    return fht_apply(f, -0.5)


def fht_compose(t1, t2) -> FhtShift:
    return FhtShift(_tau_of(t1) + _tau_of(t2))


def fht_inverse(t) -> FhtShift:
    return FhtShift(-_tau_of(t))


# ---------------------------------------------------------------------------
# 2D

def _dht_multiplier(nx: int, ny: int, dx: float, dy: float,
                    theta: Direction2D) -> np.ndarray:
    wx = 2 * np.pi * np.fft.fftfreq(nx, d=dx)
    wy = 2 * np.pi * np.fft.fftfreq(ny, d=dy)
    u = theta.unit
    proj = u[0] * wx[None, :] + u[1] * wy[:, None]
    mult = -1j * np.sign(proj)
    # self-conjugate bins (omega == -omega on the torus) must stay real
    sx = [0] + ([nx // 2] if nx % 2 == 0 else [])
    sy = [0] + ([ny // 2] if ny % 2 == 0 else [])
    for iy in sy:
        for ix in sx:
            mult[iy, ix] = 0.0
    return mult


def dht_apply(f: SampledSignal2D, theta: Direction2D) -> SampledSignal2D:
    """Directional Hilbert transform: multiplier -1j*sign(u_theta . omega)."""
    gx, gy = f.grid_x, f.grid_y
    was_real = f.is_real()
    mult = _dht_multiplier(gx.n, gy.n, gx.dx, gy.dx, theta)
    out = np.fft.ifft2(np.fft.fft2(f.values) * mult)
    if was_real:
        out = out.real.astype(complex)
    return SampledSignal2D(gx, gy, out)


def fdht_apply(f: SampledSignal2D, theta: Direction2D, tau) -> SampledSignal2D:
    """Fractional directional Hilbert transform
    ``cos(pi*tau)*f - sin(pi*tau)*H_theta f``."""
    tau = _tau_of(tau)
    h = dht_apply(f, theta)
    vals = np.cos(np.pi * tau) * f.values - np.sin(np.pi * tau) * h.values
    return SampledSignal2D(f.grid_x, f.grid_y, vals)


# ---------------------------------------------------------------------------
# Bedrosian-type product identity

def bedrosian_residual(f_low: SampledSignal1D, g_high: SampledSignal1D,
                       tau, Omega: float, support_rtol: float = 1e-10) -> float:
    """Relative residual of the product identity
    ``fht(f*g, tau) == f * fht(g, tau)``.

    The identity requires the spectrum of ``f_low`` to live inside
    ``(-Omega, Omega)`` and that of ``g_high`` to vanish on it; violations
    are reported by raising :class:`SupportError`, never as a large
    residual.
    """
    if f_low.grid != g_high.grid:
        raise GridError("grid mismatch")
    omega = f_low.grid.omega
    Ff = np.abs(to_spectrum(f_low).values) ** 2
    Fg = np.abs(to_spectrum(g_high).values) ** 2
    out_f = np.sum(Ff[np.abs(omega) >= Omega])
    if out_f > support_rtol * np.sum(Ff):
        raise SupportError(
            f"lowpass factor has energy fraction {out_f / np.sum(Ff):.3e} "
            f"outside (-{Omega}, {Omega})"
        )
    in_g = np.sum(Fg[np.abs(omega) < Omega])
    if in_g > support_rtol * np.sum(Fg):
        raise SupportError(
            f"highpass factor has energy fraction {in_g / np.sum(Fg):.3e} "
            f"inside (-{Omega}, {Omega})"
        )
    prod = SampledSignal1D(f_low.grid, f_low.values * g_high.values)
    lhs = fht_apply(prod, tau)
    rhs = f_low.values * fht_apply(g_high, tau).values
    num = l2_norm(SampledSignal1D(f_low.grid, lhs.values - rhs))
    den = l2_norm(prod)
    return num / den if den > 0 else 0.0
