"""Numerical toolkit for matrix-parametrized quadratic time-frequency
representations, Cohen-class smoothing kernels and the associated
phase-space operator calculi."""

from . import arrayio, blockmat, cohen, fourier, mwd, quantize, signals, verify
from .blockmat import BlockMatrix, classify, derived, make_block, preset, sharp
from .errors import (ConfigError, DomainTagMismatch, ExtrapolationWarning,
                     GridMismatch, InvalidExponent, MwdError, NonPositiveParameter,
                     NotCohenTagged, NotCohenType, NotRightRegular, OffGridShift,
                     OrthogonalWindowPair, SingularMatrix)
from .mwd import PhaseSpaceField, adjoint_apply, magic_eval, marginals, \
    mwd as transform, mwd_via_stft, reconstruct, stft
from .quantize import (OperatorMatrix, SymbolField, apply, channel_matrix,
                       convert_symbol, convert_symbol_cohen, duality_check,
                       hs_norm, kernel_from_symbol, spreading_apply)
from .signals import Grid, Signal, chirp, gaussian, hermite, inner, mixed_norm, \
    tf_shift

__version__ = "0.1.0"
