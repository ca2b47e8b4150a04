"""Linear regression for interval-valued data."""

__version__ = "0.1.0"

from .boxcox import BoxCoxTransform, select_lambda
from .datasets import bundled_ids, load_bundled, read_csv, write_csv
from .estimators import (
    CenterMethod,
    CenterRangeMethod,
    CompleteInformationMethod,
    ConstrainedCenterRangeMethod,
    ConstrainedLinearModel,
    LinearModel,
    MinMaxMethod,
    ParametrizedModel,
    WeaklyConstrainedLinearModel,
)
from .interval import Interval, IntervalDataset, make_interval, summarize
from .metrics import MetricsReport, evaluate
from .regressors import FittedModel, Prediction, fit, predict
from .surface import SurfaceGrid, sweep

__all__ = [
    "BoxCoxTransform", "CenterMethod", "CenterRangeMethod", "CompleteInformationMethod",
    "ConstrainedCenterRangeMethod", "ConstrainedLinearModel", "FittedModel", "Interval",
    "IntervalDataset", "LinearModel", "MetricsReport", "MinMaxMethod", "ParametrizedModel",
    "Prediction", "SurfaceGrid", "WeaklyConstrainedLinearModel", "bundled_ids", "evaluate",
    "fit", "load_bundled", "make_interval", "predict", "read_csv", "select_lambda",
    "summarize", "sweep", "write_csv",
]
