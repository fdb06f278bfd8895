"""Exact arithmetic and linear algebra over finite commutative rings Z_m[x]/(f).

Elements are canonical little-endian coefficient tuples of length max(deg f, 1),
entries reduced into [0, m).  With deg f = 0 the ring is Z_m itself and elements
are 1-tuples.  All operations are pure; a ring handle is immutable and safe to
share.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Element = tuple[int, ...]


class NonUnitError(ValueError):
    """Raised when an inverse (or unit order) of a non-invertible element is requested."""


class SizeBoundExceededError(RuntimeError):
    """Raised when no exact solving path fits within the configured size bound."""


class FiniteRing:
    """The quotient ring Z_m[x]/(f) for a monic polynomial f over Z_m.

    ``poly`` is the little-endian coefficient list of f including the leading 1;
    an empty list (or omitted poly) means the ring is Z_m.
    """

    def __init__(self, m: int, poly: Sequence[int] = ()):
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        poly = [c % m for c in poly]
        while poly and poly[-1] == 0:
            raise ValueError("defining polynomial has zero leading coefficient")
        if poly:
            if len(poly) == 1:
                raise ValueError("defining polynomial must have degree >= 1")
            if poly[-1] != 1:
                raise ValueError(f"defining polynomial must be monic, got leading {poly[-1]}")
        self.m = m
        self.poly = tuple(poly)
        self.degree = max(len(poly) - 1, 0)
        self.width = max(self.degree, 1)
        self.size = m ** self.degree if self.degree else m
        self.zero: Element = (0,) * self.width
        self.one: Element = (1,) + (0,) * (self.width - 1)
        self._inverses: dict[Element, Element] | None = None
        self._is_field: bool | None = None

    def __repr__(self) -> str:
        if not self.degree:
            return f"FiniteRing(Z_{self.m})"
        return f"FiniteRing(Z_{self.m}[x]/({format_poly(self.poly)}))"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteRing) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self) -> int:
        return hash((self.m, self.poly))

    # -- element plumbing ---------------------------------------------------

    def element(self, coeffs: Iterable[int] | int) -> Element:
        """Canonicalize an int or coefficient iterable into a ring element."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        cs = [c % self.m for c in coeffs]
        if len(cs) > self.width:
            cs = self._reduce(cs)
        cs += [0] * (self.width - len(cs))
        return tuple(cs)

    def elements(self) -> list[Element]:
        """All ring elements in lexicographic coefficient order."""
        return [tuple(c) for c in product(range(self.m), repeat=self.width)]

    def _reduce(self, cs: list[int]) -> list[int]:
        # long division by the monic f, coefficients mod m
        if not self.degree:
            return [cs[0] % self.m] if cs else [0]
        cs = [c % self.m for c in cs]
        d = self.degree
        for i in range(len(cs) - 1, d - 1, -1):
            c = cs[i]
            if c:
                for j, fj in enumerate(self.poly[:-1]):
                    cs[i - d + j] = (cs[i - d + j] - c * fj) % self.m
                cs[i] = 0
        return cs[:d]

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.m for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.m for x in a)

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % self.m for x, y in zip(a, b))

    def mul(self, a: Element, b: Element) -> Element:
        if not self.degree:
            return ((a[0] * b[0]) % self.m,)
        acc = [0] * (2 * self.width)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    acc[i + j] += x * y
        return tuple(self._reduce(acc))

    def scalar_mul(self, k: int, a: Element) -> Element:
        return tuple((k * x) % self.m for x in a)

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.pow(self.inverse(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def _inverse_table(self) -> dict[Element, Element]:
        if self._inverses is None:
            inv: dict[Element, Element] = {}
            els = self.elements()
            for a in els:
                if a in inv:
                    continue
                for b in els:
                    if self.mul(a, b) == self.one:
                        inv[a] = b
                        inv[b] = a
                        break
            self._inverses = inv
        return self._inverses

    def is_unit(self, a: Element) -> bool:
        return a in self._inverse_table()

    def inverse(self, a: Element) -> Element:
        """Multiplicative inverse, found by exhaustive search (desk scale)."""
        inv = self._inverse_table().get(a)
        if inv is None:
            raise NonUnitError(f"{format_element(a)} is not a unit in {self!r}")
        return inv

    def unit_order(self, a: Element) -> int:
        """Least n >= 1 with a^n = 1."""
        if not self.is_unit(a):
            raise NonUnitError(f"{format_element(a)} is not a unit in {self!r}")
        n, cur = 1, a
        while cur != self.one:
            cur = self.mul(cur, a)
            n += 1
        return n

    @property
    def is_field(self) -> bool:
        """True iff every nonzero element is invertible (checked exhaustively)."""
        if self._is_field is None:
            table = self._inverse_table()
            self._is_field = all(a in table for a in self.elements() if a != self.zero)
        return self._is_field


def ring_make(m: int, poly: Sequence[int] = ()) -> FiniteRing:
    """Construct Z_m[x]/(f); ``poly`` little-endian including the leading 1."""
    return FiniteRing(m, poly)


# -- linear systems ---------------------------------------------------------


@dataclass
class LinearSystemSolution:
    """Solution set of A x = b over a finite ring.

    ``dimension`` and ``basis`` are reported only over fields, where the
    solution set is an affine subspace;  over Z_m only the exact cardinality
    (and a particular solution when one exists) is reported.
    """

    cardinality: int
    dimension: int | None = None
    basis: list[list[Element]] | None = None
    particular: list[Element] | None = None


def solve_linear(
    ring: FiniteRing,
    rows: Sequence[Sequence[Element]],
    rhs: Sequence[Element],
    bound: int = 10**6,
) -> LinearSystemSolution:
    """Solve A x = b exactly.

    Fields take the Gaussian-elimination path; plain Z_m takes a Smith normal
    form path; other quotient rings fall back to exhaustive enumeration below
    ``bound`` assignments.
    """
    if len(rows) != len(rhs):
        raise ValueError("matrix/vector size mismatch")
    ncols = len(rows[0]) if rows else _infer_cols(rhs)
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    if not rows:
        # no constraints at all: count unknowns from context (caller passes ncols via rows)
        ncols = 0
    if ring.is_field:
        return _solve_field(ring, [list(r) for r in rows], list(rhs))
    if ring.degree == 0:
        return _solve_zm(ring, rows, rhs)
    return _solve_bruteforce(ring, rows, rhs, bound)


def _infer_cols(rhs: Sequence[Element]) -> int:
    return 0


def _solve_field(ring: FiniteRing, a: list[list[Element]], b: list[Element]) -> LinearSystemSolution:
    nrows, ncols = len(a), (len(a[0]) if a else 0)
    # forward elimination with partial pivoting by first unit entry
    pivot_cols: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if a[r][col] != ring.zero), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        b[row], b[piv] = b[piv], b[row]
        inv = ring.inverse(a[row][col])
        a[row] = [ring.mul(inv, x) for x in a[row]]
        b[row] = ring.mul(inv, b[row])
        for r in range(nrows):
            if r != row and a[r][col] != ring.zero:
                factor = a[r][col]
                a[r] = [ring.sub(x, ring.mul(factor, y)) for x, y in zip(a[r], a[row])]
                b[r] = ring.sub(b[r], ring.mul(factor, b[row]))
        pivot_cols.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if b[r] != ring.zero:
            return LinearSystemSolution(cardinality=0)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    particular = [ring.zero] * ncols
    for i, col in enumerate(pivot_cols):
        particular[col] = b[i]
    basis: list[list[Element]] = []
    for fc in free_cols:
        vec = [ring.zero] * ncols
        vec[fc] = ring.one
        for i, col in enumerate(pivot_cols):
            vec[col] = ring.neg(a[i][fc])
        basis.append(vec)
    dim = len(free_cols)
    return LinearSystemSolution(
        cardinality=ring.size**dim, dimension=dim, basis=basis, particular=particular
    )


def smith_normal_form(mat: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Integer Smith normal form: returns (D, U, V) with U @ mat @ V = D diagonal."""
    a = [row[:] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(nrows, ncols):
        # find a nonzero pivot in the remaining block
        piv = next(
            ((i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]), None
        )
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            reduced = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        reduced = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        reduced = False
            if reduced:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    # enforce divisibility d_i | d_{i+1}
    for i in range(t - 1):
        for j in range(i + 1, t):
            if a[j][j] % a[i][i]:
                addmul_col(i, j, 1)
                # re-eliminate the 2x2 block
                while a[j][i]:
                    q = a[i][i] // a[j][i] if a[j][i] else 0
                    if abs(a[j][i]) <= abs(a[i][i]):
                        q = a[i][i] // a[j][i]
                        addmul_row(i, j, -q)
                    a[i], a[j] = a[j], a[i]
                    u[i], u[j] = u[j], u[i]
                if a[i][j]:
                    q = a[i][j] // a[i][i]
                    addmul_col(j, i, -q)
                if a[i][i] < 0:
                    a[i] = [-x for x in a[i]]
                    u[i] = [-x for x in u[i]]
                if a[j][j] < 0:
                    a[j] = [-x for x in a[j]]
                    u[j] = [-x for x in u[j]]
    return a, u, v


def _solve_zm(ring: FiniteRing, rows: Sequence[Sequence[Element]], rhs: Sequence[Element]) -> LinearSystemSolution:
    m = ring.m
    nrows, ncols = len(rows), (len(rows[0]) if rows else 0)
    if ncols == 0:
        ok = all(x == ring.zero for x in rhs)
        return LinearSystemSolution(cardinality=1 if ok else 0, particular=[] if ok else None)
    imat = [[int(e[0]) for e in r] for r in rows]
    ivec = [int(e[0]) for e in rhs]
    d, u, _v = smith_normal_form(imat)
    c = [sum(u[i][k] * ivec[k] for k in range(nrows)) % m for i in range(nrows)]
    count = 1
    y = [0] * ncols
    for i in range(min(nrows, ncols)):
        di = d[i][i] % m
        g = gcd(di, m)
        if c[i] % g:
            return LinearSystemSolution(cardinality=0)
        count *= g
        # one solution of di * y = c[i] (mod m)
        mg = m // g
        y[i] = (c[i] // g) * pow((di // g) % mg, -1, mg) % m if mg > 1 else 0
    for i in range(ncols, nrows):
        if c[i] % m:
            return LinearSystemSolution(cardinality=0)
    count *= m ** max(ncols - nrows, 0)
    x = [sum(_v[i][k] * y[k] for k in range(ncols)) % m for i in range(ncols)]
    particular = [ring.element(xi) for xi in x]
    for r, want in zip(rows, rhs):
        acc = ring.zero
        for coef, xi in zip(r, particular):
            acc = ring.add(acc, ring.mul(coef, xi))
        assert acc == want, "internal SNF solve error"
    return LinearSystemSolution(cardinality=count, particular=particular)


def _solve_bruteforce(ring, rows, rhs, bound) -> LinearSystemSolution:
    ncols = len(rows[0]) if rows else 0
    total = ring.size**ncols
    if total > bound:
        raise SizeBoundExceededError(
            f"{total} assignments exceed bound {bound} for non-field quotient ring"
        )
    count = 0
    particular = None
    for xs in product(ring.elements(), repeat=ncols):
        ok = True
        for r, want in zip(rows, rhs):
            acc = ring.zero
            for coef, xi in zip(r, xs):
                acc = ring.add(acc, ring.mul(coef, xi))
            if acc != want:
                ok = False
                break
        if ok:
            count += 1
            if particular is None:
                particular = list(xs)
    return LinearSystemSolution(cardinality=count, particular=particular)


# -- literals ---------------------------------------------------------------


def format_poly(poly: Sequence[int], var: str = "x") -> str:
    terms = []
    for i, c in enumerate(poly):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{var}" if c == 1 else f"{c}*{var}")
        else:
            terms.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return " + ".join(terms) if terms else "0"


def format_element(a: Element) -> str:
    """Compact bracket form, e.g. (2t+1 in a degree-2 quotient) -> ``[1,2]``."""
    return "[" + ",".join(str(c) for c in a) + "]"


def format_ring_literal(ring: FiniteRing) -> str:
    if not ring.degree:
        return f"ring m={ring.m}"
    return f"ring m={ring.m} poly={','.join(str(c) for c in ring.poly)}"


def parse_ring_literal(text: str) -> FiniteRing:
    """Parse ``ring m=<int> poly=<c0,c1,...,1>`` (poly omitted for Z_m)."""
    parts = text.split()
    if not parts or parts[0] != "ring":
        raise ValueError(f"ring literal must start with 'ring': {text!r}")
    m = None
    poly: list[int] = []
    for p in parts[1:]:
        if p.startswith("m="):
            m = int(p[2:])
        elif p.startswith("poly="):
            poly = [int(c) for c in p[5:].split(",") if c]
        else:
            raise ValueError(f"unrecognized ring literal field {p!r}")
    if m is None:
        raise ValueError(f"ring literal missing m=: {text!r}")
    return FiniteRing(m, poly)


def parse_element(ring: FiniteRing, text: str) -> Element:
    """Parse ``[c0,c1,...]`` or a polynomial expression like ``2+t`` / ``1+2*x^3``."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        body = text[1:-1].strip()
        cs = [int(c) for c in body.split(",")] if body else [0]
        return ring.element(cs)
    coeffs = [0] * ring.width
    expr = text.replace("-", "+-").replace(" ", "")
    for term in expr.split("+"):
        if not term:
            continue
        c, p = _parse_term(term)
        if p >= len(coeffs):
            padded = coeffs + [0] * (p + 1 - len(coeffs))
            padded[p] += c
            coeffs = padded
        else:
            coeffs[p] += c
    return ring.element(coeffs)


def _parse_term(term: str) -> tuple[int, int]:
    sign = 1
    if term.startswith("-"):
        sign, term = -1, term[1:]
    if term.isdigit():
        return sign * int(term), 0
    # forms: v, c*v, cv, v^k, c*v^k, cv^k   with v a single letter
    i = 0
    while i < len(term) and (term[i].isdigit()):
        i += 1
    c = int(term[:i]) if i else 1
    rest = term[i:]
    if rest.startswith("*"):
        if i == 0:
            raise ValueError(f"cannot parse element term {term!r}")
        rest = rest[1:]
    if not rest or not rest[0].isalpha():
        raise ValueError(f"cannot parse element term {term!r}")
    rest = rest[1:]
    if not rest:
        return sign * c, 1
    if rest.startswith("^"):
        return sign * c, int(rest[1:])
    raise ValueError(f"cannot parse element term {term!r}")
