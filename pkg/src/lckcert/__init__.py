"""lckcert: existence of locally conformally Kahler metrics with prescribed
Lee form on finite invariant models, decided with exactly verified
witnesses or dual certificates."""

__version__ = "0.1.0"

from .catalog import catalog_models, get_model
from .exact import QQi, qi, rat
from .model import (
    LieModel,
    ModelValidationError,
    dc_t,
    partial_t,
    partialbar_t,
    theta_pluriharmonic_defect,
    twisted_d,
    validate,
)
from .multilinear import (
    ComplexFrame,
    Current,
    GradedForm,
    HermitianMatrix,
    bidegree_split,
    from_hermitian,
    is_positive,
    pair,
    positive_generator,
    to_hermitian,
    wedge,
)

__all__ = [
    "__version__",
    "QQi",
    "qi",
    "rat",
    "LieModel",
    "ModelValidationError",
    "ComplexFrame",
    "Current",
    "GradedForm",
    "HermitianMatrix",
    "catalog_models",
    "get_model",
    "bidegree_split",
    "dc_t",
    "from_hermitian",
    "is_positive",
    "pair",
    "partial_t",
    "partialbar_t",
    "positive_generator",
    "theta_pluriharmonic_defect",
    "to_hermitian",
    "twisted_d",
    "validate",
    "wedge",
]
