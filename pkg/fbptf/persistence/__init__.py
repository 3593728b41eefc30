
from .interface import IAdapter
from .dataset_adapter import DatasetAdapter, load_dataset
from .model_adapter import ModelAdapter, load_model, save_model
from .image_adapter import ImageAdapter
