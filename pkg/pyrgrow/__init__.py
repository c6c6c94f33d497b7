"""
Pyramidal growth of convex polytopes.
"""

__all__ = (
    '__version__',
    'Polytope',
    'conv_hull',
    'contains',
    'is_inside',
    'hausdorff',
    'hausdorff_sq',
    'DistanceInterval',
    'visible_facets',
    'PyramidalStep',
    'StepKind',
    'GrowthChain',
    'QuasiChain',
    'Witness',
    'VerificationReport',
    'verify_pyramidal',
    'verify_chain',
    'verify_quasi',
    'verify_stacked_restricted',
    'defect',
    'ProjectiveMap',
    'PsiFrame',
    'psi_lambda',
    'VeeInstance',
    'grow',
    'transfinite_prefix',
    'quasi_grow',
    'export_off',
    'validate',
    'Error',
    'ConfigurationError',
    'InputError',
    'CertificateError',
    'InvalidStep',
    'GeometryError',
    'NotAVeeInstance',
    'NotNested',
    'UnsupportedDimension',
    'CrossesInfinity',
    'ConstructionError',
    'ExhaustedError',
)

from pyrgrow._exceptions import (
    Error,
    ConfigurationError,
    InputError,
    CertificateError,
    InvalidStep,
    GeometryError,
    NotAVeeInstance,
    NotNested,
    UnsupportedDimension,
    CrossesInfinity,
    ConstructionError,
    ExhaustedError,
)
from pyrgrow._config import config  # noqa: F401
from pyrgrow.kernel import (
    Polytope, conv_hull, contains, is_inside,
    hausdorff, hausdorff_sq, DistanceInterval,
)
from pyrgrow.visibility import visible_facets
from pyrgrow.extension import (
    PyramidalStep, StepKind, GrowthChain, QuasiChain, Witness,
    VerificationReport, verify_pyramidal, verify_chain, verify_quasi,
    verify_stacked_restricted, defect,
)
from pyrgrow.projective import ProjectiveMap, PsiFrame, psi_lambda
from pyrgrow.growth import VeeInstance, grow, transfinite_prefix
from pyrgrow.quasi import quasi_grow
from pyrgrow._export import export_off
from pyrgrow.validate import validate

__version__ = '0.1.0'
