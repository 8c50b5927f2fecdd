"""Cone metric spaces, rough convergence, and rough Cauchy analysis.

The pieces, bottom up:

* `cones`     - representable cones in R^m, the orders they induce, and
                their normality constants.
* `metrics`   - cone-valued metrics with eager axiom validation.
* `sequences` - deterministic point-sequence families.
* `analysis`  - finite-horizon semidecisions of (rough) convergence and
                Cauchyness along a scalar epsilon schedule.
* `theorems`  - property checks of the rough-Cauchy implications with
                premise accounting and counterexample search.
* `cli`       - the `roughcone` batch command.

Hot kernels live in a compiled extension when available; set
``ROUGHCONE_PURE=1`` to force the numpy fallback (see
`roughcone.kernels.BACKEND`).
"""

__version__ = "0.1.0"

from .analysis import (
    BoundWitness,
    EpsilonSchedule,
    Roughness,
    ScalarResult,
    Verdict,
    is_bounded,
    is_cauchy,
    is_r_cauchy,
    is_r_convergent_to,
    rough_limit_set,
)
from .cones import (
    NormSpec,
    Orthant,
    Polyhedral,
    ProductCone,
    SecondOrder,
    normal_constant,
    star_constant,
    validate_cone,
    verify_star_condition,
)
from .errors import ConfigError, DimensionMismatch, InputError, NoExactConstant
from .metrics import (
    ConeMetricSpec,
    FiniteLabeledSpace,
    RealVectorSpace,
    builtin_space,
    eval_d,
    validate_metric,
)
from .sequences import (
    BoundedWalk,
    Decay,
    OscDecay,
    Oscillating,
    TableSequence,
    generate,
)
from .theorems import (
    check_thm_3_3,
    check_thm_3_4,
    check_thm_3_5,
    check_thm_3_6,
    counterexample_search,
)

__all__ = [
    "__version__",
    "BoundWitness",
    "BoundedWalk",
    "ConeMetricSpec",
    "ConfigError",
    "Decay",
    "DimensionMismatch",
    "EpsilonSchedule",
    "FiniteLabeledSpace",
    "InputError",
    "NoExactConstant",
    "NormSpec",
    "OscDecay",
    "Oscillating",
    "Orthant",
    "Polyhedral",
    "ProductCone",
    "RealVectorSpace",
    "Roughness",
    "ScalarResult",
    "SecondOrder",
    "TableSequence",
    "Verdict",
    "builtin_space",
    "check_thm_3_3",
    "check_thm_3_4",
    "check_thm_3_5",
    "check_thm_3_6",
    "counterexample_search",
    "eval_d",
    "generate",
    "is_bounded",
    "is_cauchy",
    "is_r_cauchy",
    "is_r_convergent_to",
    "normal_constant",
    "rough_limit_set",
    "star_constant",
    "validate_cone",
    "validate_metric",
    "verify_star_condition",
]
