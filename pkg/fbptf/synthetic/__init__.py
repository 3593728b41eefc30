
from .config import SyntheticConfig
from .generator import SyntheticDataset, generate, nonlinear_term
from .folds import split_folds
