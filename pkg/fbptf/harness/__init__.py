
from .config import ExperimentConfig, SplitSpec, load_experiment_config, resolve_output_path
from .curves import report_curves
from .experiment import ExperimentReport, run_experiment, run_sensitivity
from .enhancement import EnhancementResult, enhance
