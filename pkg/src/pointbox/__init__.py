"""One-dimensional quantum box with a generalized pointlike potential.

The interaction at x = 0 is the four-parameter family of self-adjoint
matching conditions; its energy surface over a fixed-gamma parameter slice
forms a double spiral around a singular point, and loops encircling that
point shift every spectral index by two.  Submodules: ``params`` (parameter
algebra and paths), ``spectrum`` (secular equation, eigenvalues,
eigenfunctions), ``regularize`` (finite-spacing triple-delta realization),
``holonomy`` (spectral flow, overlaps, evolution matrix), ``cli``.
"""

from .errors import (
    ConstraintViolation,
    DegenerateDelta,
    DomainMismatch,
    FloorTooHigh,
    GaugeAmbiguity,
    InvalidGamma0,
    NearPole,
    NoConvergence,
    NotAnEigenvalue,
    OutOfDomain,
    PathThroughSingularity,
    PointBoxError,
    SingularPoint,
    SpectraMismatch,
    StepUnderflow,
    TruncationLeak,
    UnrepresentableParams,
)
from .holonomy import (
    ConnectionMatrix,
    LoopResult,
    TraceOptions,
    TrackedLevel,
    compare_asymptotic,
    connection,
    evolution_matrix,
    loop_permutation,
    overlap,
    theta_branch,
    trace_path,
)
from .params import (
    BCParams,
    ParameterPath,
    PolarCoords,
    SliceCoords,
    from_polar,
    from_slice,
    make_params,
    polar_loop,
    singular_point,
    slice_from_polar,
    winding_number,
)
from .regularize import (
    TripleDelta,
    convergence_study,
    jump_matrix,
    segment_matrix,
    spectrum_finite_a,
    strengths,
)
from .spectrum import (
    Domain,
    EnergyLevel,
    Wavefunction,
    amplitude_ratio,
    check_bc,
    eigenvalues,
    eigenvalues_slice,
    evaluate,
    node_count,
    secular,
    wavefunction,
    wavefunction_slice,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
