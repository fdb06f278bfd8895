"""Exact enumeration of G-flows, MCQ-colorings and MCB-colorings.

Local rules.  At a positive crossing, writing oi/oo for the over strand's
in/out semi-arcs and ui/uo for the under strand's, an MCB coloring satisfies

    under[ui, oo] = uo        over[oo, ui] = oi

and a negative crossing imposes the same equations with in/out swapped on
both strands.  At a vertex (merge: e1, e2 in, e3 out; split: e3 in, e1, e2
out) the three colors satisfy, in both cases on the same slots,

    e1 = b over e2,   e3 = b . e2     for a block element b of e2's block.

MCQ colorings live on arcs with the plain rules:  star[ui, over] = uo at a
positive crossing (in/out swapped at a negative one) and e3 = e1 . e2 at
vertices.  G-flows are the group shadows of these rules: conjugation of the
under arc by the over arc at crossings, flow(e3) = flow(e1) . flow(e2) at
vertices.

This rule set is the unique one (up to a global mirror relabeling) that
passes the kink, slide and triangle invariance tests together with the
MCB/MCQ correspondence and reverse-mirror transfer on the structure corpus;
it is pinned by those tests rather than by figure inspection (see README).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hlcolor.diagram import Diagram, arcs_of
from hlcolor.gfamily import GFamilyB, GFamilyQ, associated_mcb, associated_mcq
from hlcolor.groups import FiniteGroup
from hlcolor.mcqb import MCB, MCQ
from hlcolor.rings import SizeBoundExceededError


@dataclass(frozen=True)
class Flow:
    """Assignment of group elements to arcs (by arc representative)."""

    group: FiniteGroup
    assignment: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.assignment)

    @staticmethod
    def from_dict(group: FiniteGroup, d: dict[str, int]) -> "Flow":
        return Flow(group, tuple(sorted(d.items())))


@dataclass
class Coloring:
    """Assignment of structure elements to semi-arcs (MCB) or arcs (MCQ)."""

    target: object
    assignment: dict[str, int]

    def restrict(self, keys) -> tuple[int, ...]:
        return tuple(self.assignment[k] for k in keys)


@dataclass
class ColoringSetReport:
    count: int
    colorings: list[Coloring] | None = None
    module_info: tuple[int, list] | None = None  # (dimension, basis vectors)
    per_flow: dict[Flow, int] | None = None


class FlowInvalidError(ValueError):
    pass


class NotBraidShapedError(ValueError):
    pass


# -- crossing rule tables -----------------------------------------------------
#
# Equations are (table, a, b, c) meaning table[a, b] == c, with slot names
# drawn from oi/oo/ui/uo.  Negative crossings swap in/out on both strands.

_MCB_POS_EQS = (
    ("under", "ui", "oo", "uo"),
    ("over", "oo", "ui", "oi"),
)
_MCQ_POS_EQS = (("star", "ui", "ov", "uo"),)

_NEG_SWAP = {"oi": "oo", "oo": "oi", "ui": "uo", "uo": "ui", "ov": "ov"}


def _crossing_eqs(pos_eqs, sign: int):
    if sign > 0:
        return pos_eqs
    return tuple((t, _NEG_SWAP[a], _NEG_SWAP[b], _NEG_SWAP[c]) for t, a, b, c in pos_eqs)


# -- generic constraints -------------------------------------------------------


class _TableConstraint:
    """Conjunction of table equations table[a, b] == c over slot variables.

    ``tables`` maps a table name to (table, column_inverse or None); the
    column inverse solves for the first argument.
    """

    def __init__(self, slot_vars: dict[str, str], eqs, tables):
        self.slot_vars = slot_vars
        self.eqs = eqs
        self.tables = tables
        self.vars = tuple(sorted(set(slot_vars.values())))

    def check(self, assign) -> bool:
        for tname, a, b, c in self.eqs:
            tbl, _ = self.tables[tname]
            va = assign[self.slot_vars[a]]
            vb = assign[self.slot_vars[b]]
            vc = assign[self.slot_vars[c]]
            if tbl[va, vb] != vc:
                return False
        return True

    def propagate(self, assign):
        """Return list of (var, value) forced by the equations, or False on conflict."""
        forced = []
        local = {v: assign.get(v) for v in self.vars}
        changed = True
        while changed:
            changed = False
            for tname, a, b, c in self.eqs:
                tbl, inv = self.tables[tname]
                va = local[self.slot_vars[a]]
                vb = local[self.slot_vars[b]]
                vc = local[self.slot_vars[c]]
                if va is not None and vb is not None:
                    want = int(tbl[va, vb])
                    if vc is None:
                        local[self.slot_vars[c]] = want
                        forced.append((self.slot_vars[c], want))
                        changed = True
                    elif vc != want:
                        return False
                elif vc is not None and vb is not None and inv is not None:
                    want = int(inv[vc, vb])
                    if va is None:
                        local[self.slot_vars[a]] = want
                        forced.append((self.slot_vars[a], want))
                        changed = True
                    elif va != want:
                        return False
        return forced


# vertex rule parameters: how the block element b is read off the twisted
# slot, the product order for e3, and which slot carries the twist
_MCB_MERGE_RULE = ("over_inv", "21", "e1")
_MCQ_MERGE_RULE = ("plain", "12", "e2")
# splits impose the merge relation on the same slots (e1, e2, e3)
_SPLIT_SLOT_PERM = "id"


def _merge_b(x, rule_kind: str, plain: int, twisted: int) -> int:
    """Recover the block element b from the twisted slot's color."""
    if rule_kind == "plain":
        return twisted
    if rule_kind == "over_inv":
        return int(x.over_inv[twisted, plain])
    if rule_kind == "over":
        return int(x.over[twisted, plain])
    if rule_kind == "under_inv":
        return int(x.under_inv[twisted, plain])
    if rule_kind == "under":
        return int(x.under[twisted, plain])
    raise ValueError(rule_kind)


def _merge_twisted(x, rule_kind: str, plain: int, b: int) -> int:
    """Inverse of _merge_b: the twisted slot's color from (plain, b)."""
    if rule_kind == "plain":
        return b
    if rule_kind == "over_inv":
        return int(x.over[b, plain])
    if rule_kind == "over":
        return int(x.over_inv[b, plain])
    if rule_kind == "under_inv":
        return int(x.under[b, plain])
    if rule_kind == "under":
        return int(x.under_inv[b, plain])
    raise ValueError(rule_kind)


class _MergeConstraint:
    """Vertex rule on slots (e1, e2, e3), shared by merges and splits.

    With the pinned MCB rule the twisted slot is e1:  e1 = b over e2  and
    e3 = b . e2  for a block element b of e2's block; the MCQ rule is the
    plain in-block product e3 = e1 . e2.
    """

    def __init__(self, x: MCB | MCQ, v1: str, v2: str, v3: str, swap: bool, mcq: bool):
        self.x = x
        if swap and _SPLIT_SLOT_PERM == "swap":
            v1, v2 = v2, v1
        self.rule = _MCQ_MERGE_RULE if mcq else _MCB_MERGE_RULE
        if self.rule[2] == "e1":
            v1, v2 = v2, v1
        self.v1, self.v2, self.v3 = v1, v2, v3
        self.mcq = mcq
        self.vars = tuple(sorted({v1, v2, v3}))

    def _out(self, plain: int, b: int) -> int:
        if self.rule[1] == "12":
            return int(self.x.prod[plain, b])
        return int(self.x.prod[b, plain])

    def _b_from_out(self, plain: int, c3: int) -> int:
        if self.rule[1] == "12":
            return int(self.x.prod[int(self.x.ginv[plain]), c3])
        return int(self.x.prod[c3, int(self.x.ginv[plain])])

    def _b_from12(self, c1: int, c2: int) -> int | None:
        b = _merge_b(self.x, self.rule[0], c1, c2)
        if self.x.block_of[b] != self.x.block_of[c1]:
            return None
        return b

    def check(self, assign) -> bool:
        c1, c2, c3 = assign[self.v1], assign[self.v2], assign[self.v3]
        b = self._b_from12(c1, c2)
        return b is not None and self._out(c1, b) == c3

    def propagate(self, assign):
        c1 = assign.get(self.v1)
        c2 = assign.get(self.v2)
        c3 = assign.get(self.v3)
        known = sum(v is not None for v in (c1, c2, c3))
        if known < 2:
            return []
        if known == 3:
            return [] if self.check(assign) else False
        if c1 is not None and c2 is not None:
            b = self._b_from12(c1, c2)
            if b is None:
                return False
            return self._emit(assign, self.v3, self._out(c1, b))
        if c1 is not None and c3 is not None:
            if self.x.block_of[c1] != self.x.block_of[c3]:
                return False
            b = self._b_from_out(c1, c3)
            return self._emit(assign, self.v2, _merge_twisted(self.x, self.rule[0], c1, b))
        # c2 and c3 known: scan for c1 (no direct formula)
        hits = []
        probe = dict(assign)
        for v in range(self.x.n):
            probe[self.v1] = v
            if self.check(probe):
                hits.append(v)
                if len(hits) > 1:
                    return []
        if not hits:
            return False
        return self._emit(assign, self.v1, hits[0])

    def _emit(self, assign, var, val):
        if var in assign:
            return [] if assign[var] == val else False
        return [(var, val)]


# -- constraint builders -------------------------------------------------------


def _mcb_tables(x: MCB):
    return {
        "under": (x.under, x.under_inv),
        "over": (x.over, x.over_inv),
    }


def _mcq_tables(x: MCQ):
    return {"star": (x.star, x.star_inv)}


def coloring_vars(d: Diagram, on_arcs: bool) -> list[str]:
    if on_arcs:
        return sorted(set(arcs_of(d).values()))
    return sorted(set(d.semiarcs) | set(d.loops))


def _mcb_constraints(d: Diagram, x: MCB) -> list:
    tables = _mcb_tables(x)
    cons: list = []
    for c in d.crossings:
        slot_vars = {"oi": c.over_in, "oo": c.over_out, "ui": c.under_in, "uo": c.under_out}
        cons.append(_TableConstraint(slot_vars, _crossing_eqs(_MCB_POS_EQS, c.sign), tables))
    for v in d.vertices:
        cons.append(_MergeConstraint(x, v.e1, v.e2, v.e3, swap=(v.kind == "split"), mcq=False))
    return cons


def _mcq_constraints(d: Diagram, x: MCQ) -> list:
    arcs = arcs_of(d)
    tables = _mcq_tables(x)
    cons: list = []
    for c in d.crossings:
        slot_vars = {
            "ui": arcs[c.under_in],
            "uo": arcs[c.under_out],
            "ov": arcs[c.over_in],
        }
        cons.append(_TableConstraint(slot_vars, _crossing_eqs(_MCQ_POS_EQS, c.sign), tables))
    for v in d.vertices:
        cons.append(
            _MergeConstraint(x, arcs[v.e1], arcs[v.e2], arcs[v.e3], swap=(v.kind == "split"), mcq=True)
        )
    return cons


def _flow_constraints(d: Diagram, g: FiniteGroup) -> list:
    arcs = arcs_of(d)
    n = g.n
    conj = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for h in range(n):
            conj[a, h] = g.conj(a, h)
    conj_inv = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for h in range(n):
            conj_inv[conj[a, h], h] = a
    prod = g.cayley
    prod_inv_left = np.empty((n, n), dtype=np.int64)  # solves x . b = c for x
    for b in range(n):
        for xx in range(n):
            prod_inv_left[prod[xx, b], b] = xx
    tables = {"conj": (conj, conj_inv), "prod": (prod, prod_inv_left)}
    cons: list = []
    for c in d.crossings:
        slot_vars = {"ui": arcs[c.under_in], "uo": arcs[c.under_out], "ov": arcs[c.over_in]}
        cons.append(
            _TableConstraint(slot_vars, _crossing_eqs((("conj", "ui", "ov", "uo"),), c.sign), tables)
        )
    for v in d.vertices:
        v1, v2 = v.e1, v.e2
        if v.kind == "split" and _SPLIT_SLOT_PERM == "swap":
            v1, v2 = v2, v1
        slot_vars = {"a": arcs[v1], "b": arcs[v2], "c": arcs[v.e3]}
        cons.append(_TableConstraint(slot_vars, (("prod", "a", "b", "c"),), tables))
    return cons


# -- the search engine ---------------------------------------------------------


def _enumerate(
    all_vars: list[str],
    domain_size: int,
    constraints: list,
    fixed: dict[str, int] | None = None,
    domains: dict[str, list[int]] | None = None,
    collect: bool = True,
    budget: int | None = None,
):
    """Backtracking enumeration with constraint propagation.

    Yields assignment dicts in deterministic order: branch variables are
    most-constrained-first with lexicographic tie-break, values ascending.
    """
    var_cons: dict[str, list] = {v: [] for v in all_vars}
    for con in constraints:
        for v in con.vars:
            var_cons[v].append(con)
    full_domains = {v: (domains[v] if domains and v in domains else None) for v in all_vars}
    nodes = 0

    def in_domain(v: str, val: int) -> bool:
        dom = full_domains[v]
        return dom is None or val in dom

    def propagate(assign, trail, queue) -> bool:
        while queue:
            con = queue.pop()
            result = con.propagate(assign)
            if result is False:
                return False
            for var, val in result:
                if var in assign:
                    if assign[var] != val:
                        return False
                    continue
                if not in_domain(var, val):
                    return False
                assign[var] = val
                trail.append(var)
                for c2 in var_cons[var]:
                    queue.append(c2)
        return True

    def pick_var(assign) -> str | None:
        best = None
        best_score = -1
        for v in all_vars:
            if v in assign:
                continue
            score = 0
            for con in var_cons[v]:
                score += sum(1 for w in con.vars if w in assign)
            if score > best_score or (score == best_score and best is not None and v < best):
                best, best_score = v, score
        return best

    def search(assign):
        nonlocal nodes
        var = pick_var(assign)
        if var is None:
            yield dict(assign) if collect else assign
            return
        dom = full_domains[var]
        values = dom if dom is not None else range(domain_size)
        for val in values:
            nodes += 1
            if budget is not None and nodes > budget:
                raise SizeBoundExceededError(f"enumeration exceeded branch budget {budget}")
            trail = [var]
            assign[var] = val
            queue = list(var_cons[var])
            if propagate(assign, trail, queue):
                yield from search(assign)
            for v in trail:
                del assign[v]

    init = dict(fixed) if fixed else {}
    for v, val in init.items():
        if not in_domain(v, val):
            return
    trail0: list[str] = []
    queue0 = [c for v in init for c in var_cons.get(v, [])]
    base = dict(init)
    if propagate(base, trail0, queue0):
        yield from search(base)


def _enumerate_maybe_threaded(
    vars_, domain_size, constraints, fixed, domains, collect, budget, threads
):
    """Partition the first branch variable across workers; merge in order."""
    if threads <= 1:
        yield from _enumerate(
            vars_, domain_size, constraints, fixed=fixed, domains=domains,
            collect=collect, budget=budget,
        )
        return
    from concurrent.futures import ThreadPoolExecutor

    fixed = dict(fixed) if fixed else {}
    branch = next((v for v in vars_ if v not in fixed), None)
    if branch is None:
        yield from _enumerate(
            vars_, domain_size, constraints, fixed=fixed, domains=domains,
            collect=collect, budget=budget,
        )
        return
    dom = domains.get(branch) if domains else None
    values = list(dom) if dom is not None else list(range(domain_size))

    def work(val):
        sub = dict(fixed)
        sub[branch] = val
        return list(
            _enumerate(
                vars_, domain_size, constraints, fixed=sub, domains=domains,
                collect=True, budget=budget,
            )
        )

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for chunk in pool.map(work, values):
            yield from chunk


def _report(
    d: Diagram,
    x,
    on_arcs: bool,
    constraints,
    domain_size: int,
    want_list: bool,
    fixed=None,
    domains=None,
    budget=None,
    threads: int = 1,
) -> ColoringSetReport:
    vars_ = coloring_vars(d, on_arcs)
    count = 0
    out: list[Coloring] | None = [] if want_list else None
    for assign in _enumerate_maybe_threaded(
        vars_, domain_size, constraints, fixed, domains, want_list, budget, threads
    ):
        count += 1
        if want_list:
            out.append(Coloring(x, dict(assign)))
    return ColoringSetReport(count=count, colorings=out)


# -- public operations -----------------------------------------------------------


def enumerate_colorings_mcb(
    d: Diagram, x: MCB, want_list: bool = False, fixed=None, domains=None,
    budget=None, threads: int = 1,
) -> ColoringSetReport:
    d.validate(allow_open=True)
    return _report(
        d, x, False, _mcb_constraints(d, x), x.n, want_list, fixed, domains, budget, threads
    )


def enumerate_colorings_mcq(
    d: Diagram, x: MCQ, want_list: bool = False, fixed=None, domains=None,
    budget=None, threads: int = 1,
) -> ColoringSetReport:
    d.validate(allow_open=True)
    return _report(
        d, x, True, _mcq_constraints(d, x), x.n, want_list, fixed, domains, budget, threads
    )


def enumerate_colorings(d: Diagram, x, **kw) -> ColoringSetReport:
    if isinstance(x, MCB):
        return enumerate_colorings_mcb(d, x, **kw)
    return enumerate_colorings_mcq(d, x, **kw)


def brute_force_colorings(d: Diagram, x, bound: int = 10**6) -> int:
    """Independent oracle: test every assignment against every constraint."""
    from itertools import product as iproduct

    on_arcs = isinstance(x, MCQ)
    vars_ = coloring_vars(d, on_arcs)
    cons = _mcq_constraints(d, x) if on_arcs else _mcb_constraints(d, x)
    total = x.n ** len(vars_)
    if total > bound:
        raise SizeBoundExceededError(f"brute force space {total} exceeds bound {bound}")
    count = 0
    for combo in iproduct(range(x.n), repeat=len(vars_)):
        assign = dict(zip(vars_, combo))
        if all(c.check(assign) for c in cons):
            count += 1
    return count


def enumerate_flows(d: Diagram, g: FiniteGroup, budget=None) -> list[Flow]:
    """All G-flows by constraint propagation over arcs, deterministic order."""
    d.validate(allow_open=True)
    vars_ = coloring_vars(d, True)
    cons = _flow_constraints(d, g)
    flows = []
    for assign in _enumerate(vars_, g.n, cons, budget=budget):
        flows.append(Flow(g, tuple(sorted(assign.items()))))
    return flows


def _flow_domains(d: Diagram, f: GFamilyQ | GFamilyB, flow: Flow, assoc_n: int):
    """Per-semi-arc (or arc) domains of associated-structure colors matching the flow."""
    arcs = arcs_of(d)
    fd = flow.as_dict()
    ng = f.group.n
    missing = [a for a in set(arcs.values()) if a not in fd]
    if missing:
        raise FlowInvalidError(f"flow misses arcs {sorted(missing)}")
    domains: dict[str, list[int]] = {}
    on_arcs = isinstance(f, GFamilyQ)
    keys = coloring_vars(d, on_arcs)
    for k in keys:
        g = fd[k if on_arcs else arcs[k]]
        domains[k] = [x * ng + g for x in range(f.n)]
    return domains


def colorings_by_flow(
    d: Diagram, f: GFamilyQ | GFamilyB, flow: Flow, want_list: bool = False, budget=None
) -> ColoringSetReport:
    """Colorings of the associated MCQ/MCB whose group projection equals the flow."""
    if isinstance(f, GFamilyQ):
        x = associated_mcq(f)
        domains = _flow_domains(d, f, flow, x.n)
        return enumerate_colorings_mcq(d, x, want_list=want_list, domains=domains, budget=budget)
    x = associated_mcb(f)
    domains = _flow_domains(d, f, flow, x.n)
    return enumerate_colorings_mcb(d, x, want_list=want_list, domains=domains, budget=budget)


def per_flow_counts(d: Diagram, f: GFamilyQ | GFamilyB, budget=None) -> dict[Flow, int]:
    return {
        flow: colorings_by_flow(d, f, flow, budget=budget).count
        for flow in enumerate_flows(d, f.group, budget=budget)
    }


@dataclass
class CorrespondenceReport:
    count_mcb: int
    count_mcq: int
    equal: bool
    per_flow_equal: bool | None = None
    per_flow: list[tuple[Flow, int, int]] | None = None
    dims_equal: bool | None = None


def verify_correspondence(
    d: Diagram, x: MCB, family: GFamilyB | None = None, budget=None
) -> CorrespondenceReport:
    """Compare |Col_X(D)| with |Col_{Q(X)}(D)|.

    Given the G-family behind an associated MCB, per-flow counts are compared
    as well, plus module dimensions on the linear path for Alexander families
    over a field.
    """
    from hlcolor.gfamily import qg_map
    from hlcolor.mcqb import q_functor_mcb

    count_mcb = enumerate_colorings_mcb(d, x, budget=budget).count
    qx = q_functor_mcb(x)
    count_mcq = enumerate_colorings_mcq(d, qx, budget=budget).count
    report = CorrespondenceReport(count_mcb, count_mcq, count_mcb == count_mcq)
    if family is not None:
        qfam = qg_map(family)
        alexander_field = (
            getattr(family, "alexander", None) is not None and family.alexander[1].is_field
        )
        rows = []
        ok = True
        dims_ok = True if alexander_field else None
        for flow in enumerate_flows(d, family.group, budget=budget):
            nb = colorings_by_flow(d, family, flow, budget=budget).count
            nq = colorings_by_flow(d, qfam, flow, budget=budget).count
            rows.append((flow, nb, nq))
            ok = ok and nb == nq
            if alexander_field:
                dim_b = linear_colorings(d, family, flow).module_info[0]
                dim_q = linear_colorings(d, qfam, flow).module_info[0]
                dims_ok = dims_ok and dim_b == dim_q
        report.per_flow_equal = ok
        report.per_flow = rows
        report.dims_equal = dims_ok
    return report


def linear_colorings(
    d: Diagram, f: GFamilyQ | GFamilyB, flow: Flow, bound: int = 10**6
) -> ColoringSetReport:
    """Flow-filtered colorings of an Alexander family via exact linear algebra.

    One linear equation over the family's coefficient ring per local rule;
    over a field the report carries the solution module's dimension and a
    basis (vectors indexed by sorted variable order).
    """
    from hlcolor.rings import solve_linear

    if getattr(f, "alexander", None) is None:
        raise ValueError("linear path requires an Alexander family")
    arcs = arcs_of(d)
    fd = flow.as_dict()
    missing = [a for a in set(arcs.values()) if a not in fd]
    if missing:
        raise FlowInvalidError(f"flow misses arcs {sorted(missing)}")
    on_arcs = isinstance(f, GFamilyQ)
    vars_ = coloring_vars(d, on_arcs)
    index = {v: i for i, v in enumerate(vars_)}
    if on_arcs:
        kind, ring, u = f.alexander
    else:
        kind, ring, t, s = f.alexander
    rows: list[list] = []
    rhs: list = []

    def row(*terms):
        r = [ring.zero] * len(vars_)
        for var, coef in terms:
            r[index[var]] = ring.add(r[index[var]], coef)
        rows.append(r)
        rhs.append(ring.zero)

    one, neg_one = ring.one, ring.neg(ring.one)
    for c in d.crossings:
        h = fd[arcs[c.over_in]]
        if on_arcs:
            uh = ring.pow(u, h)
            a_in, a_out, a_ov = arcs[c.under_in], arcs[c.under_out], arcs[c.over_in]
            src, dst = (a_in, a_out) if c.sign > 0 else (a_out, a_in)
            # dst = u^h src + (1 - u^h) over
            row((dst, one), (src, ring.neg(uh)), (a_ov, ring.sub(uh, one)))
        else:
            th, sh = ring.pow(t, h), ring.pow(s, h)
            if c.sign > 0:
                g = fd[arcs[c.under_in]]
                # uo = t^h ui + (s^h - t^h) oo ;  oi = s^g oo
                row((c.under_out, one), (c.under_in, ring.neg(th)),
                    (c.over_out, ring.sub(th, sh)))
                row((c.over_in, one), (c.over_out, ring.neg(ring.pow(s, g))))
            else:
                g = fd[arcs[c.under_out]]
                row((c.under_in, one), (c.under_out, ring.neg(th)),
                    (c.over_in, ring.sub(th, sh)))
                row((c.over_out, one), (c.over_in, ring.neg(ring.pow(s, g))))
    for v in d.vertices:
        if on_arcs:
            a1, a2, a3 = arcs[v.e1], arcs[v.e2], arcs[v.e3]
            if a1 != a2:
                row((a1, one), (a2, neg_one))
            if a3 != a2:
                row((a3, one), (a2, neg_one))
        else:
            # e1 = b over e2 and e3 = b . e2:  x_e1 = s^{flow(e2)} x_e2, x_e3 = x_e2
            sg = ring.pow(s, fd[arcs[v.e2]])
            row((v.e1, one), (v.e2, ring.neg(sg)))
            row((v.e3, one), (v.e2, neg_one))
    if not rows:
        rows = [[ring.zero] * len(vars_)]
        rhs = [ring.zero]
    sol = solve_linear(ring, rows, rhs, bound=bound)
    module_info = None
    if sol.dimension is not None:
        module_info = (sol.dimension, sol.basis)
    return ColoringSetReport(count=sol.cardinality, module_info=module_info)


def braid_boundary_determinism(d: Diagram, x) -> bool:
    """True iff distinct colorings restrict to distinct top-boundary tuples."""
    d.validate(allow_open=True)
    top = d.top_boundary()
    if d.is_closed() or not top:
        raise NotBraidShapedError("diagram has no top boundary semi-arcs")
    if isinstance(x, MCQ):
        arcs = arcs_of(d)
        keys = sorted({arcs[s] for s in top})
    else:
        keys = top
    seen = set()
    rep = enumerate_colorings(d, x, want_list=True)
    for col in rep.colorings:
        key = col.restrict(keys)
        if key in seen:
            return False
        seen.add(key)
    return True
