"""Linear-reduction privatization of a discrete secret S and public attribute X.

The released Y follows P_{Y|S} = (1 - alpha) P_{X|S} + alpha P_X, which shrinks
both local differential privacy and log-lift by roughly (1 - alpha) while
leaving the marginal of X untouched. Markov and secret-aware mechanisms that
realize it live in :mod:`linsan.markov` and :mod:`linsan.nonmarkov`.
"""

from .dist import (
    Alphabet,
    JointDistribution,
    cond_s_given_x,
    cond_x_given_s,
    example1,
    from_conditional,
    from_joint,
    marginal_s,
    marginal_x,
)
from .errors import (
    AlphaOutOfRange,
    DeadSymbol,
    InvalidDistortion,
    LinsanError,
    LpInfeasible,
    ParseError,
    UnknownLabel,
    ValidationError,
)
from .lp import LinearProgram, LpSolution, solve
from .markov import MarkovMechanism, markov_dtv, markov_expected_distortion, markov_mechanism
from .nonmarkov import (
    Mechanism,
    SupportPartition,
    distortion_optimal_mechanism,
    induced_channel,
    partition_supports,
    realized_channel,
    tv_optimal_mechanism,
    verify_realization,
)
from .privacy import (
    PrivacyReport,
    conditional_variance,
    l1_deviation,
    ldp,
    ldp_first_order,
    log_lift,
    loglift_first_order,
    privacy_report,
)
from .reduction import SoftChannel, baseline_channel, induced_joint, linear_reduce
from .sanitize import Record, Sanitizer, estimate_joint, sanitize
from .sweep import TradeoffPoint, sweep
from .utility import (
    DistortionMatrix,
    UtilityReport,
    dtv,
    entropy,
    expected_distortion,
    mutual_information,
    utility_report,
)

__version__ = "0.1.0"
