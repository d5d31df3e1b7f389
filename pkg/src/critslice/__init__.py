"""critslice: parameter-slice and basin renderer for a rational-map family
with two free critical orbits."""

from .classifier import (
    ClassifierConfig,
    OrbitLabel,
    OrbitVerdict,
    PixelClass,
    TrappingRegion,
    classify_orbit,
    classify_parameter,
    trapping_region,
)
from .errors import (
    BetaZero,
    ConfigError,
    CritsliceError,
    DegenerateMap,
    DegenerateT,
    LambdaEqualsDegree,
    NoSolution,
    NotACycle,
    PoleAtMinusI,
    PoleEvaluation,
    SingularParameter,
)
from .family import (
    INF,
    Cycle,
    MapParams,
    critical_points,
    cycle_multiplier,
    derivative,
    evaluate,
    is_infinite,
)
from .raster import (
    GridResult,
    Palette,
    PALETTES,
    Viewport,
    encode_image,
    export_csv,
    load_csv,
    render_cubic_slice,
    render_dynplane,
    render_slice,
)
from .slices import (
    CubicMap,
    Sheet,
    SliceKind,
    SlicePoint,
    SliceSpec,
    View,
    blaschke,
    cayley_inverse,
    cayley_view,
    cubic_per1,
    resolve,
    s1_lambda,
    s1_zero,
    s2_lambda,
    s2_zero,
    unit_rotation,
)

__version__ = "0.1.0"
