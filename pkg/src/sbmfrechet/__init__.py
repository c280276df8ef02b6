"""Sample Frechet means of two-community stochastic block model networks
under the Hamming and resistance-perturbation distances."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    NetworkSample,
    SampleMoments,
    SbmParams,
    as_binary,
    as_weighted,
    expected_matrix,
    sample_moments,
    sample_sbm,
)
from .metrics import (  # noqa: E402
    SpectralDecomposition,
    delta,
    effective_resistance,
    hamming,
    resistance_distance,
    resistance_distance_sq,
    spectral_decomposition,
)
from .frechet import (  # noqa: E402
    BarycenterResult,
    FrechetDecomposition,
    adjacency_from_resistance,
    brute_force_frechet_mean,
    decompose_frechet,
    frechet_function_hamming,
    frechet_function_median,
    majority_median,
    resistance_barycenter,
)
from .theory import (  # noqa: E402
    predicted_lambda2,
    predicted_mean_resistance,
    residual_bound,
    spectral_tail_bound,
)
