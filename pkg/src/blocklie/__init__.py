"""Exact computer algebra for the Block-type Lie algebra B.

B has basis L[alpha, i] (alpha in Z, i >= 0) and bracket
[L[a,i], L[b,j]] = ((a-1)(j+1) - (b-1)(i+1)) L[a+b, i+j].
Scalars are Gaussian rationals; every computation is exact.
"""

from .algebra import (
    BasisIndex,
    Element,
    L,
    Window,
    add,
    bracket,
    coeff,
    cocycle,
    cocycle_form,
    scale,
    structure_constant,
)
from .derivations import (
    KERNEL_K,
    OUTER_D,
    DerivationTable,
    InnerOuterDerivation,
    apply,
    check_leibniz,
    decompose,
    find_annihilators,
    outer_d,
    table_of,
)
from .errors import (
    AnchorContractViolation,
    BlockLieError,
    DomainError,
    ExprSyntaxError,
    Inconsistent,
    KernelNotAnnihilating,
    MissingAssignment,
    NotProportional,
    PreconditionFailed,
    Underdetermined,
)
from .exprio import (
    format_derivation,
    format_derivation_table,
    format_element,
    format_witness_family,
    load_derivation_table,
    load_witness_family,
    parse_derivation,
    parse_derivation_table,
    parse_element,
    parse_witness_family,
)
from .reports import Report, Violation
from .scalar import Scalar
from .twolocal import (
    Perturbation,
    Reconstruction,
    TwoLocalMap,
    WitnessFamilySpec,
    audit_witnesses,
    evaluate,
    lemma31_constraint_check,
    lemma32_form_check,
    lemma33_form_check,
    lemma34_support_check,
    reconstruct,
)

__version__ = "0.1.0"
