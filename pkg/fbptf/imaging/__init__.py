
from .image import ImageRGB
from .color import hsv_to_rgb, rgb_to_hsv
from .params import ImageParams, measure_params
from .features import FeatureConfig, extract_features
from .adjustment import AdjustmentConfig, AdjustmentResult, apply_params
