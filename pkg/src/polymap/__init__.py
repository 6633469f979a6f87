"""Analysis of atypical values of complex polynomial mappings.

The toolkit takes a polynomial map G: C^n -> C^m (n <= 3, m in {1, 2})
together with a diagonal quadratic gauge rho and computes: critical-value
emptiness certificates, numeric samples of the singular locus Sing(G, rho),
estimates of the asymptotic value set along that locus, Euler
characteristics of plane-curve fibers with atypical-value detection,
properness/cardinality certificates for linear projections, and the
(G, phi) point cloud of the locus for plotting.
"""

from .asymptotic import (
    AsymConfig,
    Cluster,
    ClusterSet,
    ContainmentVerdict,
    containment_check,
    estimate_asymptotic_set,
)
from .cloud import CloudConfig, VGCloud, build_vg_cloud, export_cloud, load_cloud_csv
from .elim import (
    ElimError,
    RootFindingError,
    RootSet,
    UniPoly,
    content_in,
    discriminant,
    gcd_mpoly,
    resultant,
    roots,
    squarefree_part,
)
from .fibers import (
    ChiConfig,
    ChiReport,
    FiberError,
    LeadingFormConfig,
    LeadingFormReport,
    PlaneFamily,
    ProjectionConfig,
    ProjectionReport,
    UnsupportedShapeError,
    check_very_good_projection,
    chi_profile,
    euler_characteristic_plane_fiber,
    leading_form_report,
    reduce_to_plane_family,
)
from .parse import ParseError, format_poly, format_poly_map, parse_poly, parse_poly_map
from .poly import GaussRat, MPoly, PolyMap
from .realform import RealPolyMap, RhoSpec, phi_value, realify_map, rho_from_linear_form
from .singular import (
    JacobianMatrix,
    K0Verdict,
    MinorSystem,
    SamplePoint,
    SamplerConfig,
    SampleResult,
    check_K0_empty,
    jacobian,
    local_dimension_estimate,
    minor_system,
    sample_singular_locus,
)

__version__ = "0.1.0"

__all__ = [
    "AsymConfig",
    "ChiConfig",
    "ChiReport",
    "CloudConfig",
    "Cluster",
    "ClusterSet",
    "ContainmentVerdict",
    "ElimError",
    "FiberError",
    "GaussRat",
    "JacobianMatrix",
    "K0Verdict",
    "LeadingFormConfig",
    "LeadingFormReport",
    "MPoly",
    "MinorSystem",
    "ParseError",
    "PlaneFamily",
    "PolyMap",
    "ProjectionConfig",
    "ProjectionReport",
    "RealPolyMap",
    "RhoSpec",
    "RootFindingError",
    "RootSet",
    "SamplePoint",
    "SampleResult",
    "SamplerConfig",
    "UniPoly",
    "UnsupportedShapeError",
    "VGCloud",
    "build_vg_cloud",
    "check_K0_empty",
    "check_very_good_projection",
    "chi_profile",
    "containment_check",
    "content_in",
    "discriminant",
    "estimate_asymptotic_set",
    "euler_characteristic_plane_fiber",
    "export_cloud",
    "format_poly",
    "format_poly_map",
    "gcd_mpoly",
    "jacobian",
    "leading_form_report",
    "load_cloud_csv",
    "local_dimension_estimate",
    "minor_system",
    "parse_poly",
    "parse_poly_map",
    "phi_value",
    "realify_map",
    "resultant",
    "rho_from_linear_form",
    "roots",
    "sample_singular_locus",
    "squarefree_part",
]
