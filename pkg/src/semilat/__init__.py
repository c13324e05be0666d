"""Exact computations with finite semilattices, their l1-convolution algebras,
Schützenberger representations, Möbius functions and diagonals, and Clifford
semigroups built over them."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .poset import (  # noqa: E402
    MobiusTable,
    Poset,
    downset,
    height,
    local_finiteness_constant,
    mobius,
    poset_from_leq,
)
from .l1 import (  # noqa: E402
    FiniteSet,
    L1Vector,
    TensorVector,
    check_pointwise_diagonal_map,
    convolve,
    operator_norm_on_basis,
    pi,
    pointwise_multiply,
    tensor_left_act,
    tensor_right_act,
)
from .semilattice import (  # noqa: E402
    FiniteSemilattice,
    diamond,
    downset_subsemilattice,
    enumerate_semilattices,
    generate_family,
    semilattice_from_meet_poset,
    semilattice_from_table,
)
from .schutz import (  # noqa: E402
    CertificateReport,
    SchutzContext,
    certificate,
    diagonal,
    diagonal_bruteforce,
    mm_apply,
    rho,
    schutz_apply,
    schutz_inverse_apply,
    verify_rho_identity,
)
from .clifford import (  # noqa: E402
    CliffordSemigroup,
    FiniteGroup,
    block_multiply,
    clifford_multiply,
    clifford_verify,
    cyclic,
    natural_order,
    q_map,
    retraction_check,
    schutz_clifford,
    schutz_clifford_inverse,
    symmetric,
    trivial,
)
