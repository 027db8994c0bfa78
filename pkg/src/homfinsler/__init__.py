"""S-curvature and mean Berwald curvature of homogeneous (alpha, beta)-spaces."""

__version__ = "0.1.0"

from .errors import DomainError, HomFinslerError, ModelError, SingularContextError
from .fixtures import FIXTURES, load_fixture
from .kernels import BACKEND
from .liealg import LieModel, bracket, bracket_k, load_model, orthonormalize, validate
from .metric import PhiSpec, F, alpha, beta, distortion, fundamental_tensor, shen_validity
from .phicalc import CurvContext, quantities_closed, quantities_generic, volume_factor
from .scurvature import isotropy_classify, s_general, s_randers_square, s_square
from .meanberwald import eij_closed, eij_numeric

__all__ = [
    "BACKEND",
    "CurvContext",
    "DomainError",
    "F",
    "FIXTURES",
    "HomFinslerError",
    "LieModel",
    "ModelError",
    "PhiSpec",
    "SingularContextError",
    "alpha",
    "beta",
    "bracket",
    "bracket_k",
    "distortion",
    "eij_closed",
    "eij_numeric",
    "fundamental_tensor",
    "isotropy_classify",
    "load_fixture",
    "load_model",
    "orthonormalize",
    "quantities_closed",
    "quantities_generic",
    "s_general",
    "s_randers_square",
    "s_square",
    "shen_validity",
    "validate",
    "volume_factor",
]
