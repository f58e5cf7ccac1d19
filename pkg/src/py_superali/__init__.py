"""Exact antisymmetrizer and N-commutator computations on Lie (super)algebras.

Example:
    >>> from py_superali import SuperAliAPI
    >>> api = SuperAliAPI()
    >>> api.matrix_identity("gl(2)", r=4).summary["identity"]
    True
    >>> api.vect_critical("vect(2)", n_min=6, n_max=7).classifications()
    {6: 'commutator', 7: 'zero'}
"""

try:
    from ._version import __version__
except ImportError:
    __version__ = "0.0.0+unknown"

from .superali_api import SuperAliAPI
from .algebras import MatrixAlgebraSpec
from .antisym import OperatorTuple, antisymmetrize_generic, antisymmetrize_naive, span_scan
from .constant_store import ConstantStore
from .diffop import DiffOp, SuperDomain
from .permutations import Permutation, super_sign
from .superscalar import GeneratorTable, SuperScalar
from .supermat import SuperMatrix, berezinian, supertrace
from .suites import AcceptanceSuites
from .vectorfields import VectorialSpec, critical_scan, n_commutator
from .exceptions import (
    SuperAliError,
    ValidationError,
    SpecSyntaxError,
    ShapeError,
    TableMismatchError,
    ParityError,
    FormatMismatchError,
    DomainMismatchError,
    NotInvertibleError,
)

__all__ = [
    "SuperAliAPI",
    "MatrixAlgebraSpec",
    "OperatorTuple",
    "antisymmetrize_generic",
    "antisymmetrize_naive",
    "span_scan",
    "ConstantStore",
    "DiffOp",
    "SuperDomain",
    "Permutation",
    "super_sign",
    "GeneratorTable",
    "SuperScalar",
    "SuperMatrix",
    "berezinian",
    "supertrace",
    "AcceptanceSuites",
    "VectorialSpec",
    "critical_scan",
    "n_commutator",
    "SuperAliError",
    "ValidationError",
    "SpecSyntaxError",
    "ShapeError",
    "TableMismatchError",
    "ParityError",
    "FormatMismatchError",
    "DomainMismatchError",
    "NotInvertibleError",
]
