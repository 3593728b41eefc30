
from .identifier import is_valid_identifier
from .parameter_dataset import ParameterDataset
