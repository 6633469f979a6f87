import pytest

from polymap.parse import parse_poly, parse_poly_map
from polymap.realform import RhoSpec, realify_map

PLANE_MAP_TEXT = "z + z^2*w"
PLANE_VARS = ("z", "w")
THREE_VAR_TEXT = "z; z*t^2 + w"
THREE_VARS = ("z", "w", "t")
SUSPENSION_TEXT = "z + z^2*w; u"
SUSPENSION_VARS = ("z", "w", "u")


@pytest.fixture(scope="session")
def plane_map():
    """The degree-3 plane map with one atypical value at the origin."""
    return parse_poly_map(PLANE_MAP_TEXT, PLANE_VARS)


@pytest.fixture(scope="session")
def plane_poly():
    return parse_poly(PLANE_MAP_TEXT, PLANE_VARS)


@pytest.fixture(scope="session")
def three_var_map():
    """Map of C^3 -> C^2 with empty bifurcation set: (z, z*t^2 + w)."""
    return parse_poly_map(THREE_VAR_TEXT, THREE_VARS)


@pytest.fixture(scope="session")
def suspension_map():
    """Suspension of the plane map: (z + z^2*w, u)."""
    return parse_poly_map(SUSPENSION_TEXT, SUSPENSION_VARS)


@pytest.fixture(scope="session")
def plane_real(plane_map):
    return realify_map(plane_map, RhoSpec.unit(2))
