"""Coloring invariants of handlebody-links and spatial trivalent graphs.

Finite quandles/biquandles, multiple conjugation quandles (MCQs) and
biquandles (MCBs), G-families, combinatorial diagrams of Y-oriented spatial
trivalent graphs, a Reidemeister-move engine, and exact coloring/flow
enumeration with a linear-algebra fast path for Alexander structures.
"""

from hlcolor.algebra import (
    AxiomReport,
    Biquandle,
    Quandle,
    alexander_biquandle,
    alexander_quandle,
    biquandle_check,
    bracket_pow,
    dihedral_quandle,
    q_functor_biquandle,
    quandle_check,
    quandle_lift,
    trivial_quandle,
    type_of,
)
from hlcolor.coloring import (
    Coloring,
    ColoringSetReport,
    Flow,
    braid_boundary_determinism,
    brute_force_colorings,
    colorings_by_flow,
    enumerate_colorings,
    enumerate_colorings_mcb,
    enumerate_colorings_mcq,
    enumerate_flows,
    linear_colorings,
    per_flow_counts,
    verify_correspondence,
)
from hlcolor.diagram import (
    Crossing,
    Diagram,
    DiagramError,
    Vertex,
    arc_classes,
    arcs_of,
    build_braid,
    build_braid_open,
    disjoint_union,
    mirror,
    parse_diagram,
    reverse,
    reverse_mirror,
    serialize_diagram,
)
from hlcolor.gfamily import (
    GFamilyB,
    GFamilyQ,
    associated_mcb,
    associated_mcq,
    gfamily_alexander_b,
    gfamily_alexander_q,
    gfb_check,
    gfq_check,
    qg_map,
    verify_qg_compat,
    zkm_family_from_biquandle,
    zkm_family_from_quandle,
)
from hlcolor.groups import FiniteGroup, cyclic_group, group_check, symmetric_group
from hlcolor.mcqb import (
    MCB,
    MCQ,
    conjugation_mcq,
    hom_check,
    mcb_check,
    mcq_check,
    q_functor_mcb,
    quandle_lift_mcb,
)
from hlcolor.moves import MoveSite, SiteMismatchError, apply_move, find_sites, transport_coloring
from hlcolor.rings import (
    FiniteRing,
    LinearSystemSolution,
    NonUnitError,
    SizeBoundExceededError,
    ring_make,
    solve_linear,
)
