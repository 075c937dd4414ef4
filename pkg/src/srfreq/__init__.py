"""Frequency-domain analysis toolkit for image super-resolution systems.

Three pillars:

* classical low-pass-filter super-resolution (spatial and frequency routes)
  plus the cutoff-frequency sweep experiment;
* hybrid response analysis: impulse-probe a black-box upscaler, split its
  output into a measured linear part and a high-frequency-injecting residual;
* the spectral-distribution similarity metric (FSDS) alongside PSNR, SSIM
  and dual-domain norms.
"""

from .errors import DegenerateInputError, LayoutError, ParameterError, ShapeError
from .hyra import (
    HyraDecomposition,
    InvarianceReport,
    ProbeSpec,
    SincFit,
    check_spatial_invariance,
    decompose,
    expected_response_center,
    extract_impulse_response,
    gen_probe,
    linear_response,
    nonlinear_response,
    sinc_similarity,
)
from .image import ImageF, Signal1D
from .kernels import Kernel, Window, make_sinc_kernel, window_eval
from .lpfsr import (
    SweepResult,
    classical_resize,
    cutoff_sweep,
    lpf_upsample_freq,
    lpf_upsample_spatial,
    moving_average,
    zero_interpolate,
)
from .metrics import (
    DistributionMap,
    MetricReport,
    distribution_map,
    fsds,
    metric_report,
    norm_metrics,
    normalize_image,
    psnr,
    ssim,
    to_luma,
)
from .sampling import recover_signal, sample_signal, sinc_reconstruct
from .spectra import (
    SpectrumView,
    conv2,
    default_embed_strength,
    default_message_mask,
    embed_spectral_message,
    spectrum_view,
    verify_periodic_extension,
)
from .transforms import Spectrum2D, dft2, fftshift, idft2

__version__ = "0.1.0"
