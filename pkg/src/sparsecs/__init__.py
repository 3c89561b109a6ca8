"""Deterministic sparse binary and ternary compressed-sensing matrices.

Block binary matrices (k row blocks of size n, one 1 per block per column)
are composed into larger, sparser ones; ternary variants and exact
coherence / density / RIP checks are provided alongside.
"""

from .analysis import (
    AnalysisReport,
    analyze,
    coherence,
    density,
    kronecker_shape_compare,
    max_column_bound,
    max_overlap,
    rip_constant,
)
from .compose import ComposeParams, compose, compose_chain
from .core import (
    BlockBinaryMatrix,
    SupportTupleSet,
    TernaryBlockMatrix,
    matrix_to_tuples,
    truncate_blocks,
    tuples_to_matrix,
)
from .devore import DevoreParams, devore_matrix, eval_poly
from .errors import (
    DegenerateSystemError,
    DuplicateColumnError,
    FileFormatError,
    MalformedMatrixError,
    NotCoveredError,
    ParameterError,
    RangeError,
    SensingMatrixError,
    UndefinedMetricError,
    VerificationError,
)
from .kernels import BACKEND
from .omp import omp_recover, recovery_trials
from .planner import CompositionPlan, execute_plan, factorize, plan_row_size
from .ternary import HadamardMatrix, hadamard_expand, hadamard_sylvester, sign_flip

__version__ = "0.1.0"
