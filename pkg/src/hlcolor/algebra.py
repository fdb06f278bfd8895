"""Finite quandles and biquandles as operation tables.

Carriers are integers [0, n); Alexander constructors keep a ``labels`` list
mapping indices to ring elements.  Axiom checks are exhaustive (vectorized
with numpy) and report the lexicographically first witness per axiom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from hlcolor.rings import Element, FiniteRing, NonUnitError


@dataclass
class AxiomReport:
    ok: bool
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _as_table(table, name: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise ValueError(f"{name} carrier must be non-empty")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"{name} table entries must lie in [0, {n})")
    return arr


def _first_where(mask: np.ndarray) -> tuple | None:
    """Lexicographically first index where mask holds, or None."""
    idx = np.argwhere(mask)
    if idx.size == 0:
        return None
    # np.argwhere returns indices in C order = lexicographic
    return tuple(int(v) for v in idx[0])


def _column_inverse(table: np.ndarray, name: str) -> np.ndarray:
    """inv[a][b] = the x with table[x][b] = a; requires permutation columns."""
    n = table.shape[0]
    inv = np.full((n, n), -1, dtype=np.int64)
    rows = np.arange(n)
    for b in range(n):
        col = table[:, b]
        if len(np.unique(col)) != n:
            raise ValueError(f"{name} column {b} is not a permutation; no inverse table")
        inv[col, b] = rows
    return inv


class Quandle:
    """Finite quandle (X, *) given by table[a][b] = a * b."""

    def __init__(self, table, labels: list | None = None):
        self.table = _as_table(table, "quandle")
        self.n = self.table.shape[0]
        self.labels = labels
        self._inv: np.ndarray | None = None

    @property
    def inv_table(self) -> np.ndarray:
        """inv_table[a][b] solves x * b = a."""
        if self._inv is None:
            self._inv = _column_inverse(self.table, "quandle")
        return self._inv

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def op_inv(self, a: int, b: int) -> int:
        return int(self.inv_table[a, b])

    def __eq__(self, other) -> bool:
        return isinstance(other, Quandle) and np.array_equal(self.table, other.table)


class Biquandle:
    """Finite biquandle (X, under, over); under[a][b] is the under-operation a act b."""

    def __init__(self, under, over, labels: list | None = None):
        self.under = _as_table(under, "biquandle under")
        self.over = _as_table(over, "biquandle over")
        if self.under.shape != self.over.shape:
            raise ValueError("under/over tables differ in size")
        self.n = self.under.shape[0]
        self.labels = labels
        self._under_inv: np.ndarray | None = None
        self._over_inv: np.ndarray | None = None
        self._diag_inv: dict[str, np.ndarray] = {}

    @property
    def under_inv(self) -> np.ndarray:
        if self._under_inv is None:
            self._under_inv = _column_inverse(self.under, "biquandle under")
        return self._under_inv

    @property
    def over_inv(self) -> np.ndarray:
        if self._over_inv is None:
            self._over_inv = _column_inverse(self.over, "biquandle over")
        return self._over_inv

    def diag_inverse(self, which: str) -> np.ndarray:
        """Inverse of the bijection x -> x op x for the chosen operation."""
        if which not in self._diag_inv:
            tbl = self.under if which == "under" else self.over
            diag = tbl[np.arange(self.n), np.arange(self.n)]
            if len(np.unique(diag)) != self.n:
                raise ValueError(f"diagonal of {which} is not a bijection")
            inv = np.empty(self.n, dtype=np.int64)
            inv[diag] = np.arange(self.n)
            self._diag_inv[which] = inv
        return self._diag_inv[which]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Biquandle)
            and np.array_equal(self.under, other.under)
            and np.array_equal(self.over, other.over)
        )


# -- axiom checks -----------------------------------------------------------


def quandle_check(q: Quandle) -> AxiomReport:
    """Exhaustive O(n^3) verification of the three quandle axioms."""
    t = q.table
    n = q.n
    violations: list[tuple[str, tuple]] = []
    idem = t[np.arange(n), np.arange(n)] != np.arange(n)
    w = _first_where(idem)
    if w is not None:
        violations.append(("idempotence", w))
    for b in range(n):
        if len(np.unique(t[:, b])) != n:
            col = t[:, b]
            seen: dict[int, int] = {}
            for a in range(n):
                v = int(col[a])
                if v in seen:
                    violations.append(("right-bijectivity", (seen[v], a, b)))
                    break
                seen[v] = a
            break
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = t[t[x, y], z]
    rhs = t[t[x, z], t[y, z]]
    w = _first_where(lhs != rhs)
    if w is not None:
        violations.append(("self-distributivity", w))
    return AxiomReport(not violations, violations)


def biquandle_check(b: Biquandle) -> AxiomReport:
    """Diagonal law, three bijectivity conditions, and three exchange laws."""
    u, o = b.under, b.over
    n = b.n
    violations: list[tuple[str, tuple]] = []
    rng = np.arange(n)
    w = _first_where(u[rng, rng] != o[rng, rng])
    if w is not None:
        violations.append(("diagonal", w))
    for name, tbl in (("under-bijectivity", u), ("over-bijectivity", o)):
        for col in range(n):
            if len(np.unique(tbl[:, col])) != n:
                violations.append((name, (col,)))
                break
    # pair map S(x, y) = (y over x, x under y)
    xs = np.repeat(rng, n)
    ys = np.tile(rng, n)
    pairs = o[ys, xs] * n + u[xs, ys]
    if len(np.unique(pairs)) != n * n:
        seen: dict[int, tuple] = {}
        for x in range(n):
            done = False
            for y in range(n):
                key = int(o[y, x]) * n + int(u[x, y])
                if key in seen:
                    violations.append(("pair-map-bijectivity", seen[key] + (x, y)))
                    done = True
                    break
                seen[key] = (x, y)
            if done:
                break
    x = rng[:, None, None]
    y = rng[None, :, None]
    z = rng[None, None, :]
    laws = [
        ("exchange-uu", u[u[x, y], u[z, y]], u[u[x, z], o[y, z]]),
        ("exchange-uo", o[u[x, y], u[z, y]], u[o[x, z], o[y, z]]),
        ("exchange-oo", o[o[x, y], o[z, y]], o[o[x, z], u[y, z]]),
    ]
    for name, lhs, rhs in laws:
        w = _first_where(lhs != rhs)
        if w is not None:
            violations.append((name, w))
    return AxiomReport(not violations, violations)


# -- constructors -----------------------------------------------------------


def alexander_quandle(ring: FiniteRing, t: Element) -> Quandle:
    """a * b = t a + (1 - t) b on the carrier of ``ring``; t must be a unit."""
    if not ring.is_unit(t):
        raise NonUnitError(f"Alexander parameter t must be a unit")
    els = ring.elements()
    index = {e: i for i, e in enumerate(els)}
    one_minus_t = ring.sub(ring.one, t)
    table = [
        [index[ring.add(ring.mul(t, a), ring.mul(one_minus_t, b))] for b in els]
        for a in els
    ]
    return Quandle(table, labels=els)


def alexander_biquandle(ring: FiniteRing, s: Element, t: Element) -> Biquandle:
    """under: a -> t a + (s - t) b, over: a -> s a; s, t must be units."""
    for name, val in (("s", s), ("t", t)):
        if not ring.is_unit(val):
            raise NonUnitError(f"Alexander parameter {name} must be a unit")
    els = ring.elements()
    index = {e: i for i, e in enumerate(els)}
    s_minus_t = ring.sub(s, t)
    under = [
        [index[ring.add(ring.mul(t, a), ring.mul(s_minus_t, b))] for b in els]
        for a in els
    ]
    over = [[index[ring.mul(s, a)] for _b in els] for a in els]
    return Biquandle(under, over, labels=els)


def quandle_lift(q: Quandle) -> Biquandle:
    """The biquandle (X, *, proj1): under = quandle table, x over y = x."""
    n = q.n
    over = np.tile(np.arange(n)[:, None], (1, n))
    return Biquandle(q.table.copy(), over, labels=q.labels)


def trivial_quandle(n: int) -> Quandle:
    return Quandle(np.tile(np.arange(n)[:, None], (1, n)))


def dihedral_quandle(n: int) -> Quandle:
    """a * b = 2b - a mod n."""
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    return Quandle((2 * b - a) % n)


# -- bracket powers and type ------------------------------------------------


def bracket_pow(b: Biquandle, a: int, c: int, n: int, which: str = "under") -> int:
    """The n-th bracket power a op^[n] c (op = under or over); any integer n."""
    tbl = b.under if which == "under" else b.over
    x, y = a, c
    while n > 0:
        x, y = int(tbl[x, y]), int(tbl[y, y])
        n -= 1
    if n < 0:
        inv = b.under_inv if which == "under" else b.over_inv
        diag_inv = b.diag_inverse(which)
        while n < 0:
            y = int(diag_inv[y])
            x = int(inv[x, y])
            n += 1
    return x


def _perm_order(perm: np.ndarray) -> int:
    """Order of a permutation given as an image array."""
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = int(perm[cur])
            length += 1
        order = lcm(order, length)
    return order


def _pair_step_order(tbl: np.ndarray) -> int:
    """Order of the pair permutation (a, b) -> (a op b, b op b)."""
    n = tbl.shape[0]
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    img = tbl[a, b] * n + tbl[b, b]
    return _perm_order(img)


def type_of(s: Quandle | Biquandle) -> int:
    """Least n >= 1 making the n-fold (bracket) operations trivial for all pairs.

    Computed as the lcm of per-pair cycle lengths; finite carriers guarantee
    termination with no search cap.
    """
    if isinstance(s, Quandle):
        order = 1
        for bcol in range(s.n):
            order = lcm(order, _perm_order(s.table[:, bcol]))
        return order
    return lcm(_pair_step_order(s.under), _pair_step_order(s.over))


def alexander_quandle_type(ring: FiniteRing, t: Element) -> int:
    """Fast path: the type of an Alexander quandle is the order of t."""
    return ring.unit_order(t)


def alexander_biquandle_type(ring: FiniteRing, s: Element, t: Element) -> int:
    """Fast path: lcm of the unit orders of s and t."""
    return lcm(ring.unit_order(s), ring.unit_order(t))


# -- the quandle shadow of a biquandle ---------------------------------------


def q_functor_biquandle(b: Biquandle) -> Quandle:
    """The quandle x * y = (x under y) over^{-1} y on the same carrier."""
    n = b.n
    y = np.arange(n)[None, :]
    table = b.over_inv[b.under, np.broadcast_to(y, (n, n))]
    return Quandle(table, labels=b.labels)
