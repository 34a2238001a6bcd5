"""Generator counts for finite algebras and maximal orders in semisimple algebras."""

from .counting import (
    CountBound,
    gen_count_exact,
    gen_count_lower,
    gen_count_power,
    gen_count_twisted,
    min_k_for_copies,
    twisted_capacity,
)
from .errors import (
    BaseMismatch,
    BoundTooSmall,
    BudgetExceeded,
    CapExceeded,
    EmptySpec,
    ExceptionalPrimeNeedsOverride,
    IndexNotDividingDegree,
    InvalidTwist,
    NoCutoff,
    NotADivisor,
    NotGenerating,
    NotMonic,
    NotPrime,
    OrdgenError,
    SpecError,
    UnsupportedRank,
)
from .finalg import (
    FiniteAlgebra,
    SampleEstimate,
    SubalgebraBasis,
    brute_gen_count,
    closure,
    coset_representatives,
    is_generating,
    lift_count,
    matrix_algebra,
    matrix_element,
    matrix_over,
    product_algebra,
    sample_gen_fraction,
    splitmix64_stream,
    truncated_local_algebra,
    twisted_element,
)
from .finfield import FiniteField, build_field, field_of
from .orderspec import (
    ClassifiedLocal,
    DegreePattern,
    LocalPrimeData,
    OrderSpec,
    SimpleFactorSpec,
    classify,
    degree_pattern,
    gen_count_local,
    load_spec,
    local_data,
    local_quotient_algebra,
    min_k_local,
    spec_from_dict,
    spec_to_dict,
)
from .solver import (
    CutoffCertificate,
    DensityInterval,
    PrimeDetail,
    QuaternionTable,
    Report,
    ShapeBound,
    Verdict,
    density,
    make_quaternion_spec,
    prime_cutoff,
    quaternion_example,
    render_json,
    render_text,
    report,
    smallest_h,
    to_jsonable,
)

__version__ = "0.1.0"

__all__ = [
    "BaseMismatch",
    "BoundTooSmall",
    "BudgetExceeded",
    "CapExceeded",
    "ClassifiedLocal",
    "CountBound",
    "CutoffCertificate",
    "DegreePattern",
    "DensityInterval",
    "EmptySpec",
    "ExceptionalPrimeNeedsOverride",
    "FiniteAlgebra",
    "FiniteField",
    "IndexNotDividingDegree",
    "InvalidTwist",
    "LocalPrimeData",
    "NoCutoff",
    "NotADivisor",
    "NotGenerating",
    "NotMonic",
    "NotPrime",
    "OrderSpec",
    "OrdgenError",
    "PrimeDetail",
    "QuaternionTable",
    "Report",
    "SampleEstimate",
    "ShapeBound",
    "SimpleFactorSpec",
    "SpecError",
    "SubalgebraBasis",
    "UnsupportedRank",
    "Verdict",
    "brute_gen_count",
    "build_field",
    "classify",
    "closure",
    "coset_representatives",
    "degree_pattern",
    "density",
    "field_of",
    "gen_count_exact",
    "gen_count_local",
    "gen_count_lower",
    "gen_count_power",
    "gen_count_twisted",
    "is_generating",
    "lift_count",
    "load_spec",
    "local_data",
    "local_quotient_algebra",
    "make_quaternion_spec",
    "matrix_algebra",
    "matrix_element",
    "matrix_over",
    "min_k_for_copies",
    "min_k_local",
    "prime_cutoff",
    "product_algebra",
    "quaternion_example",
    "render_json",
    "render_text",
    "report",
    "sample_gen_fraction",
    "smallest_h",
    "spec_from_dict",
    "spec_to_dict",
    "splitmix64_stream",
    "to_jsonable",
    "twisted_capacity",
    "twisted_element",
    "truncated_local_algebra",
]
