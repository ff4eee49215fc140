"""Uniform-grid signal containers and spectral plumbing.

Everything downstream works on one period of a periodic domain: a signal
lives on ``n`` equispaced samples ``x_m = x0 + m*dx`` and its spectrum on
the matching DFT bins ``omega_k = 2*pi*k/(n*dx)`` with ``k`` in
``[-n/2, n/2)`` (stored in FFT order).  Frequency multipliers are exact in
this model, which is why the whole library is built on it.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridError",
    "Grid1D",
    "SampledSignal1D",
    "SampledSignal2D",
    "Spectrum1D",
    "to_spectrum",
    "from_spectrum",
    "inner_product",
    "l2_norm",
    "translate",
    "dilate_translate",
    "inner_product_2d",
    "l2_norm_2d",
    "write_csv",
    "read_csv",
    "write_swv1",
    "read_swv1",
    "write_csv_2d",
    "read_csv_2d",
    "write_pgm",
]


class GridError(ValueError):
    """Grid mismatch or grid/operation incompatibility."""


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic sampling grid.

    Parameters
    ----------
    n : int
        Sample count; a power of two, at least 8.
    x0 : float
        Left endpoint.
    dx : float
        Sample spacing, positive.  The grid covers one period of length
        ``n*dx``.
    """

    n: int
    x0: float
    dx: float

    def __post_init__(self):
        if self.n < 8 or not _is_pow2(self.n):
            raise GridError(f"n must be a power of two >= 8, got {self.n}")
        if not self.dx > 0:
            raise GridError(f"dx must be positive, got {self.dx}")

    @property
    def length(self) -> float:
        return self.n * self.dx

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def omega(self) -> np.ndarray:
        """Angular frequencies of the DFT bins, FFT bin order."""
        return 2 * np.pi * np.fft.fftfreq(self.n, d=self.dx)


@dataclass
class SampledSignal1D:
    """Complex samples on a :class:`Grid1D`."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n,):
            raise GridError(
                f"expected {self.grid.n} samples, got shape {self.values.shape}"
            )

    def is_real(self, rel: float = 1e-12) -> bool:
        m = np.max(np.abs(self.values))
        if m == 0:
            return True
        return np.max(np.abs(self.values.imag)) <= rel * m

    def real_signal(self) -> "SampledSignal1D":
        return SampledSignal1D(self.grid, self.values.real.astype(complex))

    def copy(self) -> "SampledSignal1D":
        return SampledSignal1D(self.grid, self.values.copy())


@dataclass
class Spectrum1D:
    """DFT coefficients of a :class:`SampledSignal1D`.

    ``values[k]`` is the plain DFT coefficient for bin ``k`` in FFT order;
    bin ``k`` corresponds to ``omega = 2*pi*k/(n*dx)``.  Under this
    convention a pure tone ``cos(w0 x)`` with on-grid ``w0`` puts magnitude
    ``n/2`` in each of its two bins.  The continuous-transform surrogate at
    bin ``k`` is ``dx * exp(-1j*omega_k*x0) * values[k]``.
    """

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n,):
            raise GridError(
                f"expected {self.grid.n} bins, got shape {self.values.shape}"
            )

    @property
    def omega(self) -> np.ndarray:
        return self.grid.omega

    def continuous_surrogate(self) -> np.ndarray:
        """Riemann-sum approximation of the continuous transform at each bin."""
        g = self.grid
        return g.dx * np.exp(-1j * self.omega * g.x0) * self.values

    def l2_norm(self) -> float:
        # measure dx^2 * domega per bin; makes Parseval read
        # ||f||^2 == (1/2pi) * ||fhat||^2
        g = self.grid
        domega = 2 * np.pi / g.length
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * g.dx**2 * domega))


def to_spectrum(f: SampledSignal1D) -> Spectrum1D:
    return Spectrum1D(f.grid, np.fft.fft(f.values))


def from_spectrum(F: Spectrum1D) -> SampledSignal1D:
    return SampledSignal1D(F.grid, np.fft.ifft(F.values))


def _require_same_grid(f, g):
    if f.grid != g.grid:
        raise GridError(f"grid mismatch: {f.grid} vs {g.grid}")


def inner_product(f: SampledSignal1D, g: SampledSignal1D) -> complex:
    """Riemann-sum inner product ``sum f * conj(g) * dx``."""
    _require_same_grid(f, g)
    return complex(np.vdot(g.values, f.values) * f.grid.dx)


def l2_norm(f: SampledSignal1D) -> float:
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2) * f.grid.dx))


def translate(f: SampledSignal1D, shift_samples: int) -> SampledSignal1D:
    """Periodic translation: output(x) = f(x - shift_samples*dx)."""
    return SampledSignal1D(f.grid, np.roll(f.values, shift_samples))


def dilate_translate(f: SampledSignal1D, i: int, k: float) -> SampledSignal1D:
    """Normalized dilation-translation ``2^{i/2} f(2^i x - k)`` on the grid.

    Only contractions (``i >= 0``) whose evaluation points land on grid
    nodes are supported; the evaluation wraps periodically.  ``k`` is in
    x-units and must be a whole number of samples after scaling.
    """
    g = f.grid
    if i < 0:
        raise GridError(f"level {i} incompatible with fixed grid (stretching)")
    # 2^i x_m - k = x0 + (2^i m + s) dx  with  s = ((2^i - 1) x0 - k)/dx
    s = ((2**i - 1) * g.x0 - k) / g.dx
    s_round = round(s)
    if abs(s - s_round) > 1e-9:
        raise GridError(f"translation k={k} is off-grid at level {i}")
    idx = ((2**i) * np.arange(g.n) + s_round) % g.n
    return SampledSignal1D(g, (2.0 ** (i / 2)) * f.values[idx])


# ---------------------------------------------------------------------------
# 2D

@dataclass
class SampledSignal2D:
    """Complex samples on a tensor grid; ``values[iy, ix]``."""

    grid_x: Grid1D
    grid_y: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid_y.n, self.grid_x.n):
            raise GridError(
                f"expected shape {(self.grid_y.n, self.grid_x.n)}, "
                f"got {self.values.shape}"
            )

    def is_real(self, rel: float = 1e-12) -> bool:
        m = np.max(np.abs(self.values))
        if m == 0:
            return True
        return np.max(np.abs(self.values.imag)) <= rel * m


def inner_product_2d(f: SampledSignal2D, g: SampledSignal2D) -> complex:
    if f.grid_x != g.grid_x or f.grid_y != g.grid_y:
        raise GridError("grid mismatch")
    da = f.grid_x.dx * f.grid_y.dx
    return complex(np.vdot(g.values, f.values) * da)


def l2_norm_2d(f: SampledSignal2D) -> float:
    da = f.grid_x.dx * f.grid_y.dx
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2) * da))


# ---------------------------------------------------------------------------
# serialization

def write_csv(f: SampledSignal1D, path, header_lines=()) -> None:
    """Write ``x,re,im`` rows; metadata goes in leading ``#`` lines."""
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("x,re,im\n")
        for x, v in zip(f.grid.x, f.values):
            fh.write(f"{float(x)!r},{float(v.real)!r},{float(v.imag)!r}\n")


def read_csv(path) -> SampledSignal1D:
    xs, re, im = [], [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("x,"):
                continue
            a, b, c = line.split(",")
            xs.append(float(a))
            re.append(float(b))
            im.append(float(c))
    if not xs:
        raise ValueError(f"{path}: no samples")
    x = np.asarray(xs)
    n = len(x)
    if n < 2:
        raise ValueError(f"{path}: need at least 2 samples")
    dx = x[1] - x[0]
    if np.max(np.abs(np.diff(x) - dx)) > 1e-9 * abs(dx):
        raise ValueError(f"{path}: nonuniform sample spacing")
    grid = Grid1D(n, float(x[0]), float(dx))
    return SampledSignal1D(grid, np.asarray(re) + 1j * np.asarray(im))


_SWV1_MAGIC = b"SWV1"


def write_swv1(f: SampledSignal1D, path) -> None:
    """Compact binary format: magic ``SWV1``, u64 n, f64 x0, f64 dx, then
    n little-endian (re, im) f64 pairs."""
    g = f.grid
    with open(path, "wb") as fh:
        fh.write(_SWV1_MAGIC)
        fh.write(struct.pack("<Qdd", g.n, g.x0, g.dx))
        interleaved = np.empty(2 * g.n)
        interleaved[0::2] = f.values.real
        interleaved[1::2] = f.values.imag
        fh.write(interleaved.astype("<f8").tobytes())


def read_swv1(path) -> SampledSignal1D:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _SWV1_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        n, x0, dx = struct.unpack("<Qdd", fh.read(24))
        raw = np.frombuffer(fh.read(16 * n), dtype="<f8")
    if raw.size != 2 * n:
        raise ValueError(f"{path}: truncated payload")
    grid = Grid1D(int(n), x0, dx)
    return SampledSignal1D(grid, raw[0::2] + 1j * raw[1::2])


def write_csv_2d(f: SampledSignal2D, path, header_lines=()) -> None:
    """Real part as CSV rows (one row per y); grid metadata in ``#`` lines."""
    gx, gy = f.grid_x, f.grid_y
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(f"# grid_x n={gx.n} x0={float(gx.x0)!r} dx={float(gx.dx)!r}\n")
        fh.write(f"# grid_y n={gy.n} x0={float(gy.x0)!r} dx={float(gy.dx)!r}\n")
        for row in f.values.real:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _parse_grid_line(line):
    parts = dict(p.split("=") for p in line.split()[2:])
    return Grid1D(int(parts["n"]), float(parts["x0"]), float(parts["dx"]))


def read_csv_2d(path) -> SampledSignal2D:
    gx = gy = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# grid_x"):
                gx = _parse_grid_line(line)
            elif line.startswith("# grid_y"):
                gy = _parse_grid_line(line)
            elif not line or line.startswith("#"):
                continue
            else:
                rows.append([float(v) for v in line.split(",")])
    if not rows:
        raise ValueError(f"{path}: no samples")
    vals = np.asarray(rows, dtype=complex)
    if gx is None:
        gx = Grid1D(vals.shape[1], 0.0, 1.0)
    if gy is None:
        gy = Grid1D(vals.shape[0], 0.0, 1.0)
    return SampledSignal2D(gx, gy, vals)


def write_pgm(f: SampledSignal2D, path, maxval: int = 65535) -> None:
    """Lossy grayscale export: real part affinely mapped onto 0..maxval."""
    v = f.values.real
    lo, hi = float(v.min()), float(v.max())
    scale = (maxval / (hi - lo)) if hi > lo else 0.0
    q = np.round((v - lo) * scale).astype(int)
    with open(path, "w") as fh:
        fh.write(f"P2\n# offset={float(lo)!r} scale={float(scale)!r}\n")
        fh.write(f"{q.shape[1]} {q.shape[0]}\n{maxval}\n")
        for row in q:
            fh.write(" ".join(str(int(a)) for a in row) + "\n")
