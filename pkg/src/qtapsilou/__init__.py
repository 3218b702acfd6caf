"""Two-coin quantum gambling game.

Exact four-amplitude simulation of the coin register, the cyclic rotation
group the players draw moves from, closed-form win odds with their
dual-basis fairness property, a playable betting session, analysis sweeps
with CSV/JSON/figure output, and a REST service for the browser client.
"""

from .analysis import (
    DualityReport,
    MaxProbabilityReport,
    MonteCarloReport,
    SweepReport,
    SweepRow,
    export,
    monte_carlo_compare,
    phase1_table,
    phase2_table,
    verify_duality,
    verify_max_probability,
)
from .engine import (
    ClassicalGameResult,
    GamePhase,
    GameSession,
    InsufficientFundsError,
    MeasurementOutcome,
    ProbabilityProfile,
    ProtocolViolationError,
    Round,
    bell_phi_minus,
    bell_psi_minus,
    classical_probabilities,
    classical_round,
    gambler_action,
    measure_round,
    probability_profile,
    psi1,
    psi2,
    tosser_action,
)
from .groups import (
    MAX_ORDER,
    GroupElement,
    RotatedBasis,
    RotationGroup,
    UnsupportedOrderError,
    element,
    rotated_basis,
)
from .quantum import (
    Prng,
    apply,
    cnot,
    hadamard,
    initial_state,
    measure_probabilities,
    ry,
    sample,
    tensor,
)

__version__ = "0.1.0"
