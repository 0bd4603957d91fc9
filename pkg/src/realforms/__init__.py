"""Exact real-form computations for semisimple Lie algebras.

Given a complex semisimple Lie algebra presented by structure constants,
an embedded subalgebra, and a Cartan involution, the package decides which
real forms of the ambient algebra contain a real form of the subalgebra,
working entirely in exact arithmetic over multi-quadratic number fields.
"""

__version__ = "0.1.0"

from ._backend import BACKEND as kernel_backend
from .errors import ContractViolation, FieldExtensionUnsupported
from .scalars import ComplexScalar, FieldScalar
