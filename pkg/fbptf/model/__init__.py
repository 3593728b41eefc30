
from .dims import ModelDims
from .tensor import DeltaTensor
from .config import HyperPriorConfig, TrainConfig, ClipConfig, PARAMETER_NAMES
from .state import LatentState, HyperState, GibbsWorkspace, reconstruct
from .conditionals import (
    alpha_posterior, sample_alpha, sample_thetas,
    conditional_u, conditional_v, conditional_t,
    sample_u_column, sample_v_column, sample_t_column,
)
from .gibbs import Validation, init_state, gibbs_sweep, train
from .trained_model import Snapshot, TrainedModel
from .prediction import predict, predict_batch, predict_deltas, predict_cells, clip
