"""Classical and quantum partial information decomposition."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    LabelError,
    LayoutError,
    NotPSDError,
    NumericalError,
    QPIDError,
    SupportLeakError,
    ValidationError,
)
from .linalg import (  # noqa: E402
    DensityOperator,
    HilbertLayout,
    Operator,
    PureState,
    embed,
    hermitian_power,
    operator_log_on_support,
    partial_trace,
    permute,
    star_product,
    von_neumann_entropy,
)
from .classical import (  # noqa: E402
    DYADIC,
    TRIADIC,
    PIDResult,
    ProbabilityTable,
    bhattacharyya_overlap,
    interaction_gap,
    mutual_information,
    pid_decompose,
    pooled_distribution,
    shannon_entropy,
)
from .quantum import (  # noqa: E402
    ConditionalOperator,
    QPIDResult,
    conditional_state,
    measured_mutual_information,
    qpid_decompose,
    quantum_bonus,
    quantum_mutual_information,
    z_operator,
)
from .states import (  # noqa: E402
    RandomSource,
    darwinism_state,
    diagonal_state,
    haar_unitary,
    random_mixed,
    random_pure,
    scrambled_state,
    superposition_from_table,
)
from .branches import (  # noqa: E402
    BranchState,
    gram_matrix,
    qpid_via_branches,
    reduced_operator_effective,
)
