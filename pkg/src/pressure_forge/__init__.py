"""pressure-forge: build subshift families whose topological pressure traces
a prescribed convex curve, and certify it numerically.

Layers:

* ``convex_model`` / ``targets`` -- convex targets, subgradients, support
  sampling, the slope function, and the prescribed-phase-transition family;
* ``beta_shift`` / ``sturmian`` -- the two component languages;
* ``product_shift`` -- the Z_gamma product family and centered windows;
* ``potential`` -- the penalty schedule and the constructed potential;
* ``pinning`` -- greedy pinning sequences and return-time statistics;
* ``pressure`` -- certified upper approximants and lower bounds;
* ``cli`` -- the pressure-forge command-line front end.
"""

from .beta_shift import BetaLanguage, count_words, is_admissible, maximal_word, nesting_check
from .convex_model import (
    ConvexTarget,
    SubgradientInterval,
    SupportPoint,
    eval_target,
    lipschitz_bounds,
    reconstruct_from_support,
    sample_support_set,
    slope_function,
    subdifferential_1d,
    support_point,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    DomainError,
    EmptyInput,
    EmptySample,
    NotASubgradient,
    NotInZ,
    PrecisionExhausted,
)
from .pinning import PinRecord, gamma_locate, greedy_pins, partition_stats
from .potential import DeltaSchedule, PotentialSpec, cylinder_sum_upper, delta, phi_at, phi_gamma_at
from .pressure import PressureRow, lower_pressure, sandwich, upper_pressure
from .product_shift import (
    GammaVector,
    ProductAlphabet,
    SymbolWord,
    ZFamily,
    ZGamma,
    decorate,
    j_window,
    z_membership,
)
from .sturmian import enumerate_by_weight, generate_word, is_sturmian_word, point_window
from .targets import PhaseTransitionSpec, as_convex_target, demo_target, f_of, g_of

__version__ = "0.1.0"
