"""shiftwave: fractional Hilbert transforms, fractional-spline dual-tree
complex wavelets (1D/2D), the amplitude-phase shiftable representation,
and the rho/kappa quality metrics."""

__version__ = "1.0.0"

from .fht import (
    Direction2D,
    FhtShift,
    SupportError,
    bedrosian_residual,
    dht_apply,
    fdht_apply,
    fht_apply,
    fht_compose,
    fht_inverse,
    hilbert,
)
from .fracspline import (
    Genus,
    SplineSpec,
    SpectralFilter,
    SynthesisError,
    autocorrelation,
    autocorrelation_filter,
    bspline_fourier,
    fd_filter,
    fit_gabor,
    gabor_atom,
    refinement_filter,
    scaling_fourier,
    spline_shift_residual,
    synthesize_from_fourier,
    synthesize_scaling,
    synthesize_wavelet,
    wavelet_filter,
    wavelet_fourier,
    wavelet_shift_residual,
    write_filter_csv,
)
from .signal import (
    Grid1D,
    GridError,
    SampledSignal1D,
    SampledSignal2D,
    Spectrum1D,
    dilate_translate,
    from_spectrum,
    inner_product,
    inner_product_2d,
    l2_norm,
    l2_norm_2d,
    read_csv,
    read_csv_2d,
    read_swv1,
    to_spectrum,
    translate,
    write_csv,
    write_csv_2d,
    write_pgm,
    write_swv1,
)
from .dualtree import (
    DualTreeCoeffs1D,
    StepDemoReport,
    WaveletBank1D,
    analyze,
    build_bank,
    coeffs_from_json,
    coeffs_to_json,
    reconstruct,
    shifted_wavelet,
    step_demo,
)
from .dualtree2d import (
    MU,
    ORIENTATIONS,
    DirectionalBank2D,
    DualTreeCoeffs2D,
    analyze2d,
    build_directional_bank,
    coeffs2d_from_json,
    coeffs2d_to_json,
    complex_wavelet,
    directional_shift_residual,
    real_wavelet_shifted,
    reconstruct2d,
)
from .metrics import (
    SpectrumS,
    TableRow,
    centroid,
    kappa,
    metrics_table,
    one_sided_leakage,
    read_taps_csv,
    rho,
    spectrum_S,
    wavelet_pair_from_lowpass_taps,
)
