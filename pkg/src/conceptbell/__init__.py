"""Quantitative checks for concept-combination data.

Conjunction overextension against classical bounds, a planar Born-rule
model, and a CHSH pipeline from raw coincidence counts with a local
hidden-variable oracle and a singlet-angle fitter.
"""

from .born2d import BornFit, angle_from_probability, fit_item, probability_from_angle
from .chsh import ChshResult, ExpectationSet, JointProbabilities, chsh_statistic, run_suite
from .classical import (
    ConjunctionProbabilities,
    FiniteMeasureModel,
    classify_overextension,
    conjunction_report,
    kolmogorov_interval,
    measure_check,
)
from .entfit import AngleSet, FitResult, fit, model_expectations
from .ingest import (
    ChshSuite,
    CoincidenceDataset,
    ConjunctionDataset,
    CountRecord,
    parse_chsh_suite,
    parse_conjunction,
    relative_frequency,
)
from .lhv import enumerate_strategies, lhv_chsh_bound, local_membership

__version__ = "0.1.0"
