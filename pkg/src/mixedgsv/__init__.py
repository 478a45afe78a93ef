"""Mixed polynomials, their links, and the mixed GSV index of tangent vector fields."""
from .errors import (ConvergenceError, CriticalPointError, DegenerateJacobianError,
                     DependentFrameError, DimensionError, InconsistencyError,
                     MixedGSVError, NotOnVarietyError, ParseError, RefinementNeeded,
                     TracingError, TransportError, UnsupportedDimensionError)
from .expr_io import format_field, format_poly, parse, parse_field
from .frames import (ComplexFrame2, RealFrame3, c_dependent, det2, euclid,
                     four_way_dependence, hermitian, oka_alpha, orthonormalize2,
                     project_line, realify)
from .geometry import (LinkSample, NotTangent, TangencyDefect, enumerate_components,
                       find_link_point, is_complex_tangent, tangency, trace_link)
from .homotopy_index import (FramePath, IndexReport, construct_vperp,
                             direct_gsv_winding, mixed_gsv_index, real_gsv_parity,
                             winding)
from .mixed_poly import (MixedPolynomial, VectorField, conjugate, evaluate,
                         evaluate_exact, grad_dbarf, grad_df, jet, nabla_g, nabla_h,
                         real_imag_parts, to_complex, to_real, wirtinger_dz,
                         wirtinger_dzbar)
from .polar import (NotPolar, PolarWeights, angular_field, infer_weights,
                    is_strongly_polar, milnor_number_oracle, radial_field,
                    verify_polar)

__version__ = "0.1.0"
