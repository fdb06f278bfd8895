"""Finite groups as Cayley tables."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from hlcolor.algebra import AxiomReport, _first_where


class FiniteGroup:
    """A finite group given by its Cayley table cayley[a][b] = a·b."""

    def __init__(self, cayley, labels: list | None = None):
        self.cayley = np.asarray(cayley, dtype=np.int64)
        if self.cayley.ndim != 2 or self.cayley.shape[0] != self.cayley.shape[1]:
            raise ValueError("Cayley table must be square")
        self.n = self.cayley.shape[0]
        if self.n and (self.cayley.min() < 0 or self.cayley.max() >= self.n):
            raise ValueError("Cayley table entries out of range")
        self.labels = labels
        self.identity = self._find_identity()
        self.inverse = self._build_inverses()

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.cayley[e, a] == a and self.cayley[a, e] == a for a in range(self.n)):
                return e
        raise ValueError("Cayley table has no identity element")

    def _build_inverses(self) -> np.ndarray:
        inv = np.full(self.n, -1, dtype=np.int64)
        for a in range(self.n):
            hits = np.where(self.cayley[a] == self.identity)[0]
            if len(hits) != 1 or self.cayley[hits[0], a] != self.identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        return inv

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, h: int) -> int:
        """h^{-1} g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.cayley, other.cayley)

    def __hash__(self) -> int:
        return hash(self.cayley.tobytes())


def group_check(g: FiniteGroup) -> AxiomReport:
    """Exhaustive associativity plus latin-square verification."""
    violations: list[tuple[str, tuple]] = []
    c = g.cayley
    n = g.n
    for a in range(n):
        if len(np.unique(c[a])) != n:
            violations.append(("row-bijectivity", (a,)))
            break
    for b in range(n):
        if len(np.unique(c[:, b])) != n:
            violations.append(("column-bijectivity", (b,)))
            break
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    w = _first_where(c[c[x, y], z] != c[x, c[y, z]])
    if w is not None:
        violations.append(("associativity", w))
    return AxiomReport(not violations, violations)


def cyclic_group(n: int) -> FiniteGroup:
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, labels=list(range(n)))


def symmetric_group(k: int) -> FiniteGroup:
    """S_k with elements ordered lexicographically by permutation tuple."""
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(k))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(table, labels=perms)
