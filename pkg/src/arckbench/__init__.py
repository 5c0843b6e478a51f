"""arckbench: exact solvers and reduction compilers for Misere Partizan Arc
Kayles, bounded two-player constraint logic, and the PosCNF game."""

from .arck import (
    ArcKPosition,
    Convention,
    Player,
    SolveResult,
    apply_move,
    best_move,
    decode_position,
    encode_position,
    legal_moves,
    solve,
)
from .cl import (
    CLEdge,
    CLInstance,
    CLOutcome,
    CLVariant,
    VertexKind,
    apply_flip,
    classify_vertex,
    decode_instance,
    encode_instance,
    legal_flips,
    solve_cl,
    validate_instance,
)
from .clcompile import (
    compile_poscnf_to_b2cl,
    count_blue_circuit_moves,
    to_builder_blocker,
    to_misere_play,
    to_normal_play,
    variant_budget_report,
)
from .arckcompile import compile_b2cl_to_arck, red_budget
from .gadgets import Backend, GadgetKind, all_templates, gadget_template, make_wire
from .graphs import (
    Colour,
    ColouredGraph,
    Lattice,
    build_graph,
    decode,
    encode,
    grid_snap_check,
    is_planar,
    line_graph,
    to_dot,
)
from .poscnf import (
    PosCNFFormula,
    PosCNFGame,
    TFPlayer,
    apply_assignment,
    evaluate,
    new_game,
    parse_formula,
    solve_poscnf,
)
from .verify import (
    min_blue_moves,
    resolve_inputs,
    verify_all,
    verify_goal_gadget,
    verify_line_graph_planarity,
    verify_truth_table,
    verify_variable_gadget,
)

__version__ = "0.1.0"
