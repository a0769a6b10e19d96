"""Entanglement detection with general symmetric informationally complete POVMs."""

from .assignment import (
    Assignment,
    SearchSpaceTooLarge,
    max_axial_assignment_exact,
    max_axial_assignment_heuristic,
    max_weight_matching,
)
from .criteria import (
    CriterionVerdict,
    PartitionSpec,
    bound_thm1,
    bound_thm2,
    bound_thm3,
    bound_thm4,
    detect_bipartite,
    detect_k_nonseparable,
    detect_multipartite,
    j_bipartite,
    j_multipartite,
    weight_tensor,
)
from .gellmann import OperatorBasis, gellmann_basis
from .matcore import DensityMatrix, partial_transpose, permute_subsystems
from .oracles import brute_force_j, ppt_check
from .sicpovm import (
    GeneralSicPovm,
    PositivityViolation,
    build_from_a,
    build_from_t,
    conjugate,
    default_povm,
    index_of_coincidence,
    max_t,
    probabilities,
    purity_from_ic,
)
from .states import (
    ghz_with_noise,
    isotropic,
    load_state,
    maximally_entangled,
    random_density,
    random_separable,
    save_state,
)

__version__ = "0.1.0"
