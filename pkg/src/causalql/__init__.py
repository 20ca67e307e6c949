"""Closure operators, orthomodular lattices and line-indexed logic on finite causal nets."""

from .closure import (
    BoundExceededError,
    ClosedSet,
    biortho,
    border,
    causal_closure,
    closures_coincide,
    is_causally_closed,
    is_closed,
    ortho,
)
from .kernels import BACKEND
from .lattice import (
    BooleanBlock,
    Lattice,
    TwoValuedState,
    are_compatible,
    are_orthogonal,
    boolean_from_bcut,
    boolean_from_partition,
    build_lattice,
    check_bcut_generates,
    check_line_crossing_xor,
    check_ortholattice,
    check_orthomodular,
    check_regular,
    hasse,
    join,
    line_state,
    meet,
    ortho_c,
    verify_state,
)
from .logic import (
    Interpretation,
    check_satisfaction_laws,
    format_formula,
    interpret,
    parse_formula,
    satisfies,
)
from .net import Net, NetDescription, parse_net, postset, preset, validate_net, is_simple
from .order import (
    Poset,
    co,
    derive_poset,
    enumerate_cuts,
    enumerate_lines,
    extend_to_cut,
    finiteness_report,
    interval,
    is_B_coset,
    is_B_cut,
    is_convex,
    is_coset,
    is_K_dense,
    li,
)

__version__ = "0.1.0"
