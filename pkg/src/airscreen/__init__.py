"""Feature screening for p >> n linear regression: SIS, HOLP, Ridge-HOLP and Air-HOLP."""

from ._validation import DataError
from .airholp import (
    AirHolpConfig, AirHolpTrace, PenaltyContext, air_holp, estimate_expected_response,
    minimize_penalty, objective_derivatives, penalty_objective,
)
from .api import screen
from .linalg import (
    EigenSystem, eigen_of, fitted_response, ridge_dual, ridge_primal, row_gram, standardize,
    sym_eigen,
)
from .metrics import (
    BatchOutcome, best_subset, multiple_r, multiple_r_curve, sure_screening_probability,
    sure_screening_threshold, true_positions,
)
from .screening import (
    ScreeningResult, ScreeningWarning, default_threshold, rank_features, screen_holp,
    screen_ridge_holp, screen_sis,
)
from .simulate import SimDataset, SimSetting, gen_beta, gen_dataset, gen_design, gen_response

__version__ = "0.1.0"
