"""Exact convexity certification for general inverse sigma_k equations."""

from .equations import (
    DominanceReport,
    MembershipReport,
    SigmaKPolynomial,
    StabilityReport,
    StabilityVerdict,
    certify_stable,
    cone_membership,
    diagonal_restriction,
    dominates,
    elementary_symmetric,
    evaluate,
    graph_lambda_n,
    partial_restriction,
    sample_region,
    translate,
)
from .errors import SigmaKError
from .poly import (
    Poly,
    SturmChain,
    derivative,
    discriminant,
    poly_gcd,
    resultant,
    squarefree_part,
    sturm_chain,
    taylor_shift,
    yun_decomposition,
)
from .realroots import (
    AlgebraicNumber,
    IsolatingInterval,
    Order,
    approx,
    compare,
    from_rational,
    isolate_real_roots,
    largest_real_root,
    refine,
    sign_at,
)
from .rootchain import (
    ChainCertificate,
    ChainVerdict,
    certify_left,
    certify_right,
    is_real_rooted,
    multiplicity_at_largest_root,
)

__all__ = [
    "AlgebraicNumber",
    "ChainCertificate",
    "ChainVerdict",
    "DominanceReport",
    "IsolatingInterval",
    "MembershipReport",
    "Order",
    "Poly",
    "SigmaKError",
    "SigmaKPolynomial",
    "StabilityReport",
    "StabilityVerdict",
    "SturmChain",
    "approx",
    "certify_left",
    "certify_right",
    "certify_stable",
    "compare",
    "cone_membership",
    "derivative",
    "diagonal_restriction",
    "discriminant",
    "dominates",
    "elementary_symmetric",
    "evaluate",
    "from_rational",
    "graph_lambda_n",
    "is_real_rooted",
    "isolate_real_roots",
    "largest_real_root",
    "multiplicity_at_largest_root",
    "partial_restriction",
    "poly_gcd",
    "refine",
    "resultant",
    "sample_region",
    "sign_at",
    "squarefree_part",
    "sturm_chain",
    "taylor_shift",
    "translate",
    "yun_decomposition",
]

__version__ = "0.1.0"
