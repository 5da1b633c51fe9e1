"""Simply generated random plane trees with rapidly growing branching weights.

Exact log-domain partition-function tables, exact sequential samplers with
the cycle-lemma rotation, tree statistics under the left-ball local
topology, closed-form and variational asymptotic predictions, and an
experiment harness that verifies the condensation picture at desk scale.
"""

from .asymptotics import (
    AsymptoticPrediction,
    BoundaryHitError,
    DegreeLaw,
    center_first_order,
    degree_count_scale,
    degree_cutoff,
    gaussian_indices,
    predict,
    predict_log_zn,
    profile_objective,
    profile_objective_gradient,
    reference_laws,
    solve_centers,
)
from .harness import (
    CheckResult,
    ExperimentReport,
    ExperimentSpec,
    collect_samples,
    run_experiment,
)
from .logdomain import LOG_ZERO, log_add, log_factorial, log_sum
from .oracle import EnumeratedMeasure, enumerate_trees, exact_nu, tv_distance
from .partition import (
    ShiftInequalityCheck,
    TableSizeError,
    WeightDecayError,
    ZTable,
    build_ztable,
    load_ztable,
    save_ztable,
)
from .sampler import (
    RNG_ALGORITHM,
    RandomSource,
    rotate_to_tree,
    rotate_word,
    sample_composition,
    sample_sigma_s,
    sample_sigma_s_many,
    sample_tree,
    sample_trees,
)
from .trees import (
    DegreeProfile,
    PlaneTree,
    ball,
    branch_sizes,
    degree_profile,
    is_left_subtree,
    left_ball,
    path_tree,
    star_left_ball,
    star_tree,
    tree_distance,
)
from .weights import (
    WeightGrowthReport,
    WeightSequence,
    check_superexponential,
    custom_weights,
    factorial_alpha_weights,
    lambda_factorial_weights,
    uniform_weights,
)

__version__ = "0.1.0"
