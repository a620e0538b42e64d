"""nagata: word metrics, distortion experiments, quasi-norms, and
linear-control cover certificates for lattice and Lie-type group models."""

from .catalog import builtin_catalog, compare_to_prediction, lookup
from .covers import Cover, certify, neighborhood_enlarge, verify_control
from .discrete import (heisenberg_model, lamplighter_model, sol_lattice_model,
                       zn_model)
from .distortion import karidi_comparison, karidi_quasinorm, subgroup_distortion
from .experiments import ExperimentRecord, run_experiment
from .fitting import fit
from .lie_algebra import (LieAlgebra, classify, derived_series, hirsch_length,
                          killing_form, lower_central_series)
from .metrics import (MetricView, hausdorff_quotient, log_transform,
                      micro_macro, snowflake, word_metric_view)
from .words import WordBall, bfs_ball

__version__ = "0.1.0"
