"""Bohr-type inequalities: truncated series, weight sequences, radii and a verification harness."""
from bohrlab._kernels import BACKEND
from bohrlab.errors import BohrError, DomainError, NoSignChangeError, ParityError, SupportError
from bohrlab.extremal import FunctionSpec, parse_function_spec, realize, sample_class
from bohrlab.radii import RadiusQuery, RootResult, find_minimal_root, radius, radius_value, table1
from bohrlab.series import TailBound, TruncatedSeries
from bohrlab.verify import VerificationReport, check_theorem, equality_check, sharpness_probe
from bohrlab.weights import WeightSequence, parse_weights

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BohrError", "DomainError", "NoSignChangeError", "ParityError", "SupportError",
    "FunctionSpec", "parse_function_spec", "realize", "sample_class",
    "RadiusQuery", "RootResult", "find_minimal_root", "radius", "radius_value", "table1",
    "TailBound", "TruncatedSeries", "VerificationReport", "check_theorem", "equality_check",
    "sharpness_probe", "WeightSequence", "parse_weights",
]
