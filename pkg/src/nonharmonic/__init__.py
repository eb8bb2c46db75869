"""Non-harmonic Fourier series, Ingham/Nazarov-type inequalities and moving-sensor observability."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .spectra import (  # noqa: E402
    Convention,
    DispersionSpectrum,
    FrequencySequence,
    exceptional_set_member,
    quadratic_interlace,
    quadratic_spectrum,
    reorder,
)
from .trigpoly import TrigPoly, l1_norm, l2_norm_sq  # noqa: E402
from .inequalities import RatioKind, SearchStrategy, estimate_constant, ratio  # noqa: E402
from .schrodinger import InitialData, SensorPath, observability_functional, restrict_to_path  # noqa: E402
