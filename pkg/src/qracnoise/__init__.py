"""Noisy qudit random access codes: simulation, thresholds and see-saw optimization."""

from .linalg import DimensionError, DomainError, EigResult, frobenius_distance, hermitian_eig, kron, top_eigenvector
from .encoding import Strategy, computational_basis, encoding_state, fourier_basis, noiseless_strategy
from .channels import (
    CHANNEL_KINDS,
    NoiseChannel,
    adjoint_apply,
    apply_channel,
    choi_matrix,
    gamma_t_to_p,
    kraus_set,
    weyl_operator,
)
from .protocol import EvalPoint, ThresholdResult, average_success, classical_success, evaluate, ratio, threshold_gamma_t
from .seesaw import SeesawConfig, SeesawResult, optimize_measurements, optimize_states, povm_deviation, seesaw

__version__ = "0.1.0"
