"""Numerical chordal Loewner evolution in the upper half-plane."""

from .errors import (
    AmbiguousSide,
    DegenerateStep,
    EmptySupport,
    InvalidDrive,
    InvalidSlit,
    LoewnerError,
    NumericalHealthError,
    RadiusTooSmall,
    SideAmbiguity,
    StepUnderflow,
)
from .forward import (
    DrivingFunction,
    Trace,
    compute_trace,
    flow_boundary_trace,
    flow_composed,
    flow_ode,
    flow_support,
    hull_support,
)
from .gft import area_sum, area_theorem_check, omitted_set_bounds_check, sigma_rescaling
from .halfplane import (
    FlowMap,
    LaurentEstimate,
    SlitPolyline,
    SlitStep,
    estimate_laurent,
    slit_step_apply,
    slit_step_invert,
)
from .schwarz import BoundaryImTrace, capacity_from_boundary, sample_trace, schwarz_reconstruct
from .zipper import StandardParametrization, refine_polyline, total_capacity, unzip

__version__ = "0.1.0"
