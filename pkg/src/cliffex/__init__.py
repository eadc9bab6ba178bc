"""Exact Clifford algebra engine over the rationals and odd prime fields.

Build a diagonal quadratic form, multiply multivectors exactly, and
interrogate the structure the canonical bilinear pairing induces: its
isometry Lie algebra, centers, Killing form, decomposition, definiteness,
and the period-8 classification of the positive definite family.

Quick start::

    from cliffex import QuadraticForm

    form = QuadraticForm.from_text("diag:1,1,-1")
    x = form.parse("e13")
    y = form.parse("e3")
    print(x * y)            # e1
"""

from .checks import CheckResult, run_checks, volume_commutation_report
from .classify import (
    ClassificationReport,
    IsometryGroup,
    MatrixAlgebra,
    expected_lie_center_dim,
    isometry_group_of,
    matrix_algebra_of,
    verify_classification,
)
from .core import (
    BladeProduct,
    Multivector,
    QuadraticForm,
    anticommute_parity,
    blade_product,
    format_blade,
    format_multivector,
    pairing,
    parse_blade,
    parse_multivector,
    reorder_sign,
)
from .errors import (
    CapExceeded,
    CliffexError,
    DegenerateForm,
    DimensionMismatch,
    EvenCharacteristic,
    IndexOutOfRange,
    InternalInconsistency,
    InversionOfZero,
    MismatchedForm,
    MixedFieldSpec,
    NonPrimeModulus,
    NotDefiniteForm,
    NotEquivalent,
    NotInLieAlgebra,
    NotInvariantSubspace,
    NotInvertible,
    OddDimension,
    ParseError,
    SingularBasis,
    SingularTransformation,
    UnorderedField,
    WrongForm,
    ZeroElement,
)
from .field import RATIONAL, FieldElement, FieldSpec, Fp
from .operators import (
    AlgebraMap,
    UniquenessReport,
    equivalence_isomorphism,
    inverse,
    is_invertible,
    is_zero_divisor,
    left_matrix,
    pairing_adjoint,
    pairing_uniqueness_report,
    right_matrix,
    translation_determinants,
)
from .quaternions import (
    HMatrix,
    Quaternion,
    basis_change,
    coordinates_in_basis,
    format_quaternion,
    from_quaternion,
    hermitian_pairing,
    parse_quaternion,
    to_quaternion,
)
from .structure import (
    CenterDescription,
    Decomposition,
    DefinitenessReport,
    IsometryEvidence,
    KillingRecord,
    ad_matrix,
    center,
    decompose,
    definiteness_report,
    in_lie_algebra,
    is_isometry,
    isometry_evidence,
    killing_count,
    killing_entry,
    killing_form,
    lie_algebra_basis,
    lie_blades,
    lie_center,
    lie_dimension,
    is_lie_blade,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap",
    "BladeProduct",
    "CapExceeded",
    "CenterDescription",
    "CheckResult",
    "ClassificationReport",
    "CliffexError",
    "Decomposition",
    "DefinitenessReport",
    "DegenerateForm",
    "DimensionMismatch",
    "EvenCharacteristic",
    "FieldElement",
    "FieldSpec",
    "Fp",
    "HMatrix",
    "IndexOutOfRange",
    "InternalInconsistency",
    "InversionOfZero",
    "IsometryEvidence",
    "IsometryGroup",
    "KillingRecord",
    "MatrixAlgebra",
    "MismatchedForm",
    "MixedFieldSpec",
    "Multivector",
    "NonPrimeModulus",
    "NotDefiniteForm",
    "NotEquivalent",
    "NotInLieAlgebra",
    "NotInvariantSubspace",
    "NotInvertible",
    "OddDimension",
    "ParseError",
    "Quaternion",
    "QuadraticForm",
    "RATIONAL",
    "SingularBasis",
    "SingularTransformation",
    "UniquenessReport",
    "UnorderedField",
    "WrongForm",
    "ZeroElement",
    "ad_matrix",
    "anticommute_parity",
    "basis_change",
    "blade_product",
    "center",
    "coordinates_in_basis",
    "decompose",
    "definiteness_report",
    "equivalence_isomorphism",
    "expected_lie_center_dim",
    "format_blade",
    "format_multivector",
    "format_quaternion",
    "from_quaternion",
    "hermitian_pairing",
    "in_lie_algebra",
    "inverse",
    "is_invertible",
    "is_isometry",
    "is_lie_blade",
    "is_zero_divisor",
    "isometry_evidence",
    "isometry_group_of",
    "killing_count",
    "killing_entry",
    "killing_form",
    "left_matrix",
    "lie_algebra_basis",
    "lie_blades",
    "lie_center",
    "lie_dimension",
    "matrix_algebra_of",
    "pairing",
    "pairing_adjoint",
    "pairing_uniqueness_report",
    "parse_blade",
    "parse_multivector",
    "parse_quaternion",
    "reorder_sign",
    "right_matrix",
    "run_checks",
    "to_quaternion",
    "translation_determinants",
    "verify_classification",
    "volume_commutation_report",
]
