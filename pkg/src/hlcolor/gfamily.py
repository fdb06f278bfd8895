"""G-families of quandles and biquandles, their associated MCQs/MCBs, and
the passage from biquandle families to quandle families.

A family stores one n-by-n operation table per group element; Alexander
families over cyclic groups come from ring units, and any finite (bi)quandle
of type m yields a Z_{km}-family through iterated (bracket) operations.
"""

from __future__ import annotations

import numpy as np

from hlcolor.algebra import (
    AxiomReport,
    Biquandle,
    Quandle,
    _first_where,
    type_of,
)
from hlcolor.groups import FiniteGroup, cyclic_group
from hlcolor.mcqb import MCB, MCQ
from hlcolor.rings import Element, FiniteRing, NonUnitError


class OrderMismatchError(ValueError):
    """Raised when a unit's order does not divide the requested group order."""


class GFamilyQ:
    """A G-family of quandles: ops[g][x][y] = x *^g y.

    ``alexander`` is set by the Alexander constructors to ("quandle", ring, u)
    and enables the linear coloring path.
    """

    def __init__(self, group: FiniteGroup, ops, labels: list | None = None, alexander=None):
        self.group = group
        self.ops = np.asarray(ops, dtype=np.int64)
        if self.ops.shape[0] != group.n or self.ops.shape[1] != self.ops.shape[2]:
            raise ValueError("family ops must have shape (|G|, n, n)")
        self.n = self.ops.shape[1]
        self.labels = labels
        self.alexander = alexander


class GFamilyB:
    """A G-family of biquandles: under_ops[g], over_ops[g].

    ``alexander`` is ("biquandle", ring, t, s) for Alexander families.
    """

    def __init__(self, group: FiniteGroup, under_ops, over_ops, labels: list | None = None, alexander=None):
        self.group = group
        self.under_ops = np.asarray(under_ops, dtype=np.int64)
        self.over_ops = np.asarray(over_ops, dtype=np.int64)
        if self.under_ops.shape != self.over_ops.shape:
            raise ValueError("under/over family shapes differ")
        if self.under_ops.shape[0] != group.n or self.under_ops.shape[1] != self.under_ops.shape[2]:
            raise ValueError("family ops must have shape (|G|, n, n)")
        self.n = self.under_ops.shape[1]
        self.labels = labels
        self.alexander = alexander


# -- axiom checks -----------------------------------------------------------


def gfq_check(f: GFamilyQ) -> AxiomReport:
    """Exhaustive verification over (x, y, z, g, h); O(n^3 |G|^2)."""
    violations: list[tuple[str, tuple]] = []
    g_ = f.group
    ops = f.ops
    n = f.n
    rng = np.arange(n)
    for g in range(g_.n):
        w = _first_where(ops[g][rng, rng] != rng)
        if w is not None:
            violations.append(("gf-idempotence", (g, w[0])))
            break
    e = g_.identity
    w = _first_where(ops[e] != rng[:, None])
    if w is not None:
        violations.append(("gf-unit", w))
    done = False
    for g in range(g_.n):
        for h in range(g_.n):
            gh = g_.mul(g, h)
            # x *^{gh} y = (x *^g y) *^h y
            rhs = ops[h][ops[g], np.broadcast_to(rng[None, :], (n, n))]
            w = _first_where(ops[gh] != rhs)
            if w is not None:
                violations.append(("gf-product", (g, h) + w))
                done = True
                break
        if done:
            break
    xs = rng[:, None, None]
    ys = rng[None, :, None]
    zs = rng[None, None, :]
    done = False
    for g in range(g_.n):
        for h in range(g_.n):
            c = g_.conj(g, h)
            lhs = ops[h][ops[g][xs, ys], np.broadcast_to(zs, (n, n, n))]
            rhs = ops[c][ops[h][xs, zs], ops[h][ys, zs]]
            w = _first_where(lhs != rhs)
            if w is not None:
                violations.append(("gf-exchange", (g, h) + w))
                done = True
                break
        if done:
            break
    return AxiomReport(not violations, violations)


def gfb_check(f: GFamilyB) -> AxiomReport:
    """Exhaustive verification of the G-family-of-biquandles axioms."""
    violations: list[tuple[str, tuple]] = []
    g_ = f.group
    u, o = f.under_ops, f.over_ops
    n = f.n
    rng = np.arange(n)
    for g in range(g_.n):
        w = _first_where(u[g][rng, rng] != o[g][rng, rng])
        if w is not None:
            violations.append(("gfb-diagonal", (g, w[0])))
            break
    e = g_.identity
    for name, tbl in (("gfb-unit-under", u), ("gfb-unit-over", o)):
        w = _first_where(tbl[e] != rng[:, None])
        if w is not None:
            violations.append((name, w))
    cols = np.broadcast_to(rng[None, :], (n, n))
    for name, tbl in (("gfb-product-under", u), ("gfb-product-over", o)):
        done = False
        for g in range(g_.n):
            diag = tbl[g][rng, rng]
            for h in range(g_.n):
                gh = g_.mul(g, h)
                rhs = tbl[h][tbl[g], np.broadcast_to(diag[None, :], (n, n))]
                w = _first_where(tbl[gh] != rhs)
                if w is not None:
                    violations.append((name, (g, h) + w))
                    done = True
                    break
            if done:
                break
    xs = rng[:, None, None]
    ys = rng[None, :, None]
    zs = rng[None, None, :]
    done = False
    for g in range(g_.n):
        for h in range(g_.n):
            c = g_.conj(g, h)
            zoy = o[g][np.broadcast_to(zs, (n, n, n)), np.broadcast_to(ys, (n, n, n))]
            laws = [
                ("gfb-exchange-uu", u[h][u[g][xs, ys], zoy], u[c][u[h][xs, zs], u[h][ys, zs]]),
                ("gfb-exchange-ou", u[h][o[g][xs, ys], zoy], o[c][u[h][xs, zs], u[h][ys, zs]]),
                ("gfb-exchange-oo", o[h][o[g][xs, ys], zoy], o[c][o[h][xs, zs], u[h][ys, zs]]),
            ]
            for name, lhs, rhs in laws:
                w = _first_where(lhs != rhs)
                if w is not None:
                    violations.append((name, (g, h) + w))
                    done = True
                    break
            if done:
                break
        if done:
            break
    return AxiomReport(not violations, violations)


# -- constructors -----------------------------------------------------------


def gfamily_alexander_q(ring: FiniteRing, n: int, u: Element) -> GFamilyQ:
    """Z_n-family on the ring carrier: x *^i y = u^i x + (1 - u^i) y."""
    if not ring.is_unit(u):
        raise NonUnitError("Alexander family unit u is not invertible")
    if ring.pow(u, n) != ring.one:
        raise OrderMismatchError(f"u^{n} != 1 for u={u}")
    els = ring.elements()
    index = {e: i for i, e in enumerate(els)}
    ops = np.empty((n, len(els), len(els)), dtype=np.int64)
    for i in range(n):
        ui = ring.pow(u, i)
        one_minus = ring.sub(ring.one, ui)
        for a_idx, a in enumerate(els):
            for b_idx, b in enumerate(els):
                ops[i, a_idx, b_idx] = index[ring.add(ring.mul(ui, a), ring.mul(one_minus, b))]
    return GFamilyQ(cyclic_group(n), ops, labels=els, alexander=("quandle", ring, u))


def gfamily_alexander_b(ring: FiniteRing, n: int, t: Element, s: Element) -> GFamilyB:
    """Z_n-family: x under^i y = t^i x + (s^i - t^i) y, x over^i y = s^i x."""
    for name, val in (("t", t), ("s", s)):
        if not ring.is_unit(val):
            raise NonUnitError(f"Alexander family unit {name} is not invertible")
        if ring.pow(val, n) != ring.one:
            raise OrderMismatchError(f"{name}^{n} != 1")
    els = ring.elements()
    index = {e: i for i, e in enumerate(els)}
    m = len(els)
    under = np.empty((n, m, m), dtype=np.int64)
    over = np.empty((n, m, m), dtype=np.int64)
    for i in range(n):
        ti, si = ring.pow(t, i), ring.pow(s, i)
        smt = ring.sub(si, ti)
        for a_idx, a in enumerate(els):
            sa = index[ring.mul(si, a)]
            ta = ring.mul(ti, a)
            for b_idx, b in enumerate(els):
                under[i, a_idx, b_idx] = index[ring.add(ta, ring.mul(smt, b))]
                over[i, a_idx, b_idx] = sa
    return GFamilyB(cyclic_group(n), under, over, labels=els, alexander=("biquandle", ring, t, s))


def zkm_family_from_quandle(q: Quandle, k: int) -> GFamilyQ:
    """The Z_{km}-family (m = type of q) with *^i the i-fold star."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = type_of(q)
    order = k * m
    n = q.n
    cols = np.broadcast_to(np.arange(n)[None, :], (n, n))
    ops = np.empty((order, n, n), dtype=np.int64)
    ops[0] = np.broadcast_to(np.arange(n)[:, None], (n, n))
    for i in range(1, order):
        ops[i] = q.table[ops[i - 1], cols]
    return GFamilyQ(cyclic_group(order), ops, labels=q.labels)


def zkm_family_from_biquandle(b: Biquandle, k: int) -> GFamilyB:
    """The Z_{km}-family (m = type of b) of bracket powers of b."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = type_of(b)
    order = k * m
    n = b.n
    under = np.empty((order, n, n), dtype=np.int64)
    over = np.empty((order, n, n), dtype=np.int64)
    for which, tbl, out in (("under", b.under, under), ("over", b.over, over)):
        a = np.broadcast_to(np.arange(n)[:, None], (n, n)).copy()
        c = np.broadcast_to(np.arange(n)[None, :], (n, n)).copy()
        for i in range(order):
            out[i] = a
            a, c = tbl[a, c], tbl[c, c]
    return GFamilyB(cyclic_group(order), under, over, labels=b.labels)


# -- associated structures ---------------------------------------------------


def _assoc_labels(f, nblocks: int):
    labels = []
    for x in range(nblocks):
        base = f.labels[x] if f.labels is not None else x
        for g in range(f.group.n):
            labels.append((base, g))
    return labels


def _assoc_partition_product(f):
    ng = f.group.n
    total = f.n * ng
    block_of = [x for x in range(f.n) for _ in range(ng)]
    prod = np.full((total, total), -1, dtype=np.int64)
    for x in range(f.n):
        base = x * ng
        for g in range(ng):
            for h in range(ng):
                prod[base + g, base + h] = base + f.group.mul(g, h)
    return block_of, prod


def associated_mcq(f: GFamilyQ) -> MCQ:
    """Carrier X x G, blocks {x} x G, (x,g)*(y,h) = (x *^h y, h^{-1} g h)."""
    ng = f.group.n
    total = f.n * ng
    block_of, prod = _assoc_partition_product(f)
    star = np.empty((total, total), dtype=np.int64)
    for x in range(f.n):
        for g in range(ng):
            a = x * ng + g
            for y in range(f.n):
                for h in range(ng):
                    star[a, y * ng + h] = int(f.ops[h, x, y]) * ng + f.group.conj(g, h)
    return MCQ(block_of, prod, star, labels=_assoc_labels(f, f.n))


def associated_mcb(f: GFamilyB) -> MCB:
    """(x,g) under (y,h) = (x under^h y, h^{-1} g h); (x,g) over (y,h) = (x over^h y, g)."""
    ng = f.group.n
    total = f.n * ng
    block_of, prod = _assoc_partition_product(f)
    under = np.empty((total, total), dtype=np.int64)
    over = np.empty((total, total), dtype=np.int64)
    for x in range(f.n):
        for g in range(ng):
            a = x * ng + g
            for y in range(f.n):
                for h in range(ng):
                    b = y * ng + h
                    under[a, b] = int(f.under_ops[h, x, y]) * ng + f.group.conj(g, h)
                    over[a, b] = int(f.over_ops[h, x, y]) * ng + g
    return MCB(block_of, prod, under, over, labels=_assoc_labels(f, f.n))


def qg_map(f: GFamilyB) -> GFamilyQ:
    """The quandle family x *^g y = (x under^g y) over^{g^{-1}} (y over^g y)."""
    g_ = f.group
    n = f.n
    ops = np.empty((g_.n, n, n), dtype=np.int64)
    rng = np.arange(n)
    for g in range(g_.n):
        ginv = g_.inv(g)
        diag = f.over_ops[g][rng, rng]
        ops[g] = f.over_ops[ginv][f.under_ops[g], np.broadcast_to(diag[None, :], (n, n))]
    alexander = None
    if f.alexander is not None:
        _, ring, t, s = f.alexander
        alexander = ("quandle", ring, ring.mul(ring.inverse(s), t))
    return GFamilyQ(g_, ops, labels=f.labels, alexander=alexander)


def verify_qg_compat(f: GFamilyB) -> bool:
    """True iff Q(associated MCB) equals the associated MCQ of the quandle family."""
    from hlcolor.mcqb import q_functor_mcb

    left = q_functor_mcb(associated_mcb(f))
    right = associated_mcq(qg_map(f))
    return left == right
