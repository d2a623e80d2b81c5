"""Generalized sampling expansions for quaternion-valued bandlimited signals."""

__version__ = "0.1.0"

from .quaternion import (I, J, K, ONE, PureUnit, Quaternion, QuaternionDomainError, conj,
                         inv, inv_sqrt_scale, mul, norm, qconj, qexp, qinv, qmul, qnorm, sc, vec)
from .linalg import SingularMatrixError, det_complex_adjoint, invert, qmatmul
from .qft import (QuatGrid2D, SpectrumFn, convolve_spatial, dqft, gen_convolve, gen_translate,
                  idqft, synthesize, synthesize_grid)
from .quadrature import DEFAULT_RULE, QuadratureRule
from .gse import (ChannelSamples, FilterBank, FilterBankError, InterpolantSet, SpectralPartition,
                  build_partition, channel_samples, error_report, interpolation_spectra,
                  reconstruct, reconstruct_grid, system_matrix)
from .banks import example_bank
from .qlct import (LCTMatrix, LCTParams, basis_gram, kernel_i, kernel_j, qlct_gen_translate,
                   qlct_interpolant, qlct_reconstruct, qlct_synthesize)
from .spectra import gen_spectrum
