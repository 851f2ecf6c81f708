"""Exact failure-probability laboratory for distance-3 codes under nearest-neighbor
ZZ crosstalk: codewords, diagonal phase evolution, recovery engines, closed forms,
thresholds, and the service/CLI front ends."""

from .closedform import (
    FFunctions,
    ThresholdReport,
    estimate_delta_dipole,
    f_functions,
    p_exact,
    p_perturbative_naive,
    p_recursive,
    threshold,
)
from .codes import (
    Code,
    ConcatLayout,
    KetArray,
    LAFLAMME5,
    STEANE7,
    SignedKet,
    build_code,
    expand_concatenated,
    make_layout,
    z_syndrome,
)
from .errors import (
    DepthUnsupported,
    NonPositiveDistance,
    NotClassifiable,
    ScaleExceeded,
    ZzqecError,
)
from .phasestate import (
    LogicalAmplitudes,
    SparseState,
    apply_z_mask,
    evolve,
    from_logical,
    inner,
    zz_phase_exponent,
)
from .recovery import (
    FailureResult,
    LogicalAction,
    SectorKey,
    classify_z_error,
    failure_probability_brute,
    failure_probability_factorized,
    images_orthogonal,
    nonzero_odd_supports,
    sector_key,
    single_block_orthogonal_set,
)

__version__ = "0.1.0"
