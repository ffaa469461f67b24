"""Filters, distance transforms, Viterbi/saliency and fuzzy Markov chains."""

from .distance import DistanceResult, GridField, distance_transform
from .filters import (
    FilterSpec,
    companion_matrix,
    filter_eigenvalue,
    filter_impulse_response,
    filter_to_state_space,
    run_filter,
)
from .fuzzy import FmcReport, FmcSpec, fmc_analyze
from .hmm import (
    HmmSpec,
    ViterbiResult,
    controlled_saliency_step,
    run_saliency,
    saliency_output,
    saliency_system,
    viterbi,
    viterbi_system,
)

__all__ = [
    "DistanceResult", "GridField", "distance_transform",
    "FilterSpec", "companion_matrix", "filter_eigenvalue", "filter_impulse_response",
    "filter_to_state_space", "run_filter",
    "FmcReport", "FmcSpec", "fmc_analyze",
    "HmmSpec", "ViterbiResult", "controlled_saliency_step", "run_saliency",
    "saliency_output", "saliency_system", "viterbi", "viterbi_system",
]
