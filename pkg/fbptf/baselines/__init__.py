
from .spec import BASELINE_KINDS, BaselineSpec
from .fold_in import FoldInTensor
from .layout import regression_inputs, stack_versions, unstack_versions
from .matrix_factorization import FoldInFit, bpmf_train_predict, dbptf_train_predict, train_fold_in
from .mlr import LinearFit, mlr_fit
from .wknn import WeightedNeighbours, wknn_predict
from .transfer import transfer_predict
