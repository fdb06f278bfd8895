import pytest

from hlcolor.coloring import enumerate_colorings, enumerate_flows
from hlcolor.diagram import (
    diagrams_isomorphic,
    handcuff_clasp,
    loop_diagram,
    theta_curve,
    trefoil,
)
from hlcolor.groups import cyclic_group
from hlcolor.mcqb import q_functor_mcb
from hlcolor.moves import (
    MoveSite,
    SiteMismatchError,
    apply_move,
    find_sites,
    transport_coloring,
)

ALL_MOVES = ["R1a", "R1b", "R2a", "R2b", "R3", "R4a", "R4b", "R5a", "R5b", "R6"]


@pytest.fixture(scope="module")
def x6(corpus_structures):
    from hlcolor.gfamily import associated_mcb

    return associated_mcb(corpus_structures["z3-z2-family"])


def test_r1_apply_then_undo_roundtrip():
    tr = trefoil()
    res = apply_move(tr, MoveSite("R1a", "apply", (tr.semiarcs[0],), "under"))
    assert len(res.diagram.crossings) == 4
    back = apply_move(res.diagram, res.inverse)
    assert diagrams_isomorphic(back.diagram, tr)


def test_r1_on_loop_and_back():
    lp = loop_diagram()
    res = apply_move(lp, MoveSite("R1b", "apply", ("l0",), "over"))
    assert len(res.diagram.crossings) == 1 and not res.diagram.loops
    back = apply_move(res.diagram, res.inverse)
    assert diagrams_isomorphic(back.diagram, lp)


def test_r2_apply_creates_opposite_signs():
    tr = trefoil()
    s, u = tr.semiarcs[0], tr.semiarcs[1]
    res = apply_move(tr, MoveSite("R2a", "apply", (s, u), "+-"))
    assert len(res.diagram.crossings) == 5
    new_signs = sorted(c.sign for c in res.diagram.crossings)[:2]
    assert len(res.diagram.semiarcs) == 10
    back = apply_move(res.diagram, res.inverse)
    assert diagrams_isomorphic(back.diagram, tr)


def test_r3_sites_on_three_braid_trefoil():
    from hlcolor.diagram import build_braid

    tr3 = build_braid(3, [("x", 0, 1), ("x", 1, 1), ("x", 0, 1)])
    sites = find_sites(tr3, "R3", "apply")
    assert sites, "the braid-relation pattern must be found"
    res = apply_move(tr3, sites[0])
    assert len(res.diagram.crossings) == 3
    assert find_sites(res.diagram, "R3", "undo")
    back = apply_move(res.diagram, res.inverse)
    assert diagrams_isomorphic(back.diagram, tr3)


def test_r4_and_r5_and_r6_on_stem_theta():
    from hlcolor.diagram import build_braid

    stem = build_braid(2, [("s", 0), ("m", 0), ("x", 0, 1), ("x", 0, 1)])
    for move in ("R4a", "R4b"):
        sites = find_sites(stem, move, "apply")
        assert sites
        res = apply_move(stem, sites[0])
        assert find_sites(res.diagram, move, "undo")
        back = apply_move(res.diagram, res.inverse)
        assert diagrams_isomorphic(back.diagram, stem)
    th = theta_curve()
    for move in ("R5a", "R5b"):
        sites = find_sites(th, move, "apply")
        assert len(sites) == 2  # one per vertex
        for site in sites:
            res = apply_move(th, site)
            back = apply_move(res.diagram, res.inverse)
            assert diagrams_isomorphic(back.diagram, th)
    r6sites = find_sites(th, "R6", "apply") + find_sites(th, "R6", "undo")
    assert r6sites
    for site in r6sites:
        res = apply_move(th, site)
        back = apply_move(res.diagram, res.inverse)
        assert diagrams_isomorphic(back.diagram, th)


def test_site_mismatch_errors():
    tr = trefoil()
    with pytest.raises(SiteMismatchError):
        apply_move(tr, MoveSite("R1a", "apply", ("nope",)))
    with pytest.raises(SiteMismatchError):
        apply_move(tr, MoveSite("R5a", "apply", (tr.semiarcs[0],)))
    with pytest.raises(SiteMismatchError):
        apply_move(tr, MoveSite("R1a", "undo", (tr.semiarcs[0],)))
    with pytest.raises(SiteMismatchError):
        apply_move(tr, MoveSite("R9", "apply", (tr.semiarcs[0],)))


def test_fresh_ids_are_deterministic():
    tr = trefoil()
    site = MoveSite("R1a", "apply", (tr.semiarcs[0],), "under")
    a = apply_move(tr, site)
    b = apply_move(tr, site)
    assert a.fresh == b.fresh
    assert serialize_of(a) == serialize_of(b)
    c = apply_move(a.diagram, MoveSite("R1a", "apply", (tr.semiarcs[1],), "under"))
    assert set(c.fresh).isdisjoint(a.fresh)


def serialize_of(res):
    from hlcolor.diagram import serialize_diagram

    return serialize_diagram(res.diagram)


def test_move_invariance_full_sweep(x6):
    """Every implemented variant at every applicable site preserves counts."""
    g2 = cyclic_group(2)
    qx6 = q_functor_mcb(x6)
    diagrams = {
        "trefoil": trefoil(),
        "theta": theta_curve(),
        "clasp": handcuff_clasp(),
        "loop": loop_diagram(),
    }
    checked = 0
    for dname, d in diagrams.items():
        base_mcb = enumerate_colorings(d, x6).count
        base_mcq = enumerate_colorings(d, qx6).count
        base_flows = len(enumerate_flows(d, g2))
        for move in ALL_MOVES:
            for direction in ("apply", "undo"):
                for site in find_sites(d, move, direction):
                    d2 = apply_move(d, site).diagram
                    assert enumerate_colorings(d2, x6).count == base_mcb, (dname, site)
                    assert enumerate_colorings(d2, qx6).count == base_mcq, (dname, site)
                    assert len(enumerate_flows(d2, g2)) == base_flows, (dname, site)
                    checked += 1
    assert checked > 300


def test_transport_is_unique_bijection_and_involutive(x6):
    d = handcuff_clasp()
    cols = enumerate_colorings(d, x6, want_list=True).colorings
    for move in ALL_MOVES:
        for direction in ("apply", "undo"):
            for site in find_sites(d, move, direction):
                res = apply_move(d, site)
                images = set()
                for c in cols:
                    c2 = transport_coloring(d, res.diagram, c, x6)
                    back = transport_coloring(res.diagram, d, c2, x6)
                    assert back.assignment == c.assignment
                    images.add(tuple(sorted(c2.assignment.items())))
                assert len(images) == len(cols)


def test_transport_mcq_arcs(x6):
    d = trefoil()
    qx6 = q_functor_mcb(x6)
    cols = enumerate_colorings(d, qx6, want_list=True).colorings
    site = find_sites(d, "R2a", "apply")[0]
    res = apply_move(d, site)
    for c in cols:
        c2 = transport_coloring(d, res.diagram, c, qx6)
        back = transport_coloring(res.diagram, d, c2, qx6)
        assert back.assignment == c.assignment
