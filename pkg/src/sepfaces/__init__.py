"""Face dimensions of the separable-state set induced by pure states.

The closed-form dimension of the face ``F_V`` for a hyperplane ``V = a^perp``
depends only on the genuine-entanglement decomposition of ``a``; a
Monte-Carlo span-rank oracle computes the same number independently.
"""
from .duality import (
    LinearMapOperator,
    choi_matrix,
    pairing,
    phi_L_apply,
    psi_inv,
    psi_iso,
    verify_dual_face_equals_FV,
)
from .exceptions import InvalidInputError, NumericalError
from .faces import (
    FaceReport,
    ReportOptions,
    face_dim_formula,
    face_report,
    is_genuinely_entangled,
    max_induced_dim,
    product_face_dim,
    theta_scan,
)
from .gedecomp import (
    GeDecomposition,
    fixes_projector,
    ge_decompose,
    is_real_up_to_phase,
    splits,
    theta_prime_contains,
)
from .hakye import (
    HaKye24Params,
    HaKye33Params,
    hakye24_constants,
    hakye24_dim,
    hakye24_vector,
    hakye33_dims,
    hakye33_vectors,
)
from .kernels import BACKEND
from .oracle import (
    OracleConfig,
    OracleResult,
    face_dim_oracle,
    range_rank_oracle,
    sample_product_in_hyperplane,
    span_dim_of_family,
)
from .statespace import (
    PartialTransposeOp,
    PureState,
    RealSpanBasis,
    SystemShape,
    hermitian_to_real_vector,
    matricize,
    numerical_rank,
    partial_conjugate,
    partial_transpose,
    schmidt_rank,
    tensor_product,
)

__version__ = "0.1.0"
