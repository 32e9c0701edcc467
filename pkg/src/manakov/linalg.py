"""Exact dense linear algebra over rationals, rational functions or any
commutative Q-algebra.

Rank and kernel are computed by exact Gaussian elimination when entries lie
in a field; a fraction-free Bareiss elimination covers determinants and rank
over polynomial domains without dividing by ring elements.  Characteristic
polynomials use the Faddeev-LeVerrier recursion, which only ever divides by
the integers 1..n.
"""

from __future__ import annotations

from fractions import Fraction


class ExactMatrix:
    """Rectangular matrix with entries in one shared exact domain."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        zero = one * 0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols, zero=Fraction(0)):
        return cls([[zero] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def __add__(self, other):
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def scale(self, c):
        return ExactMatrix([[e * c for e in row] for row in self.entries])

    def transpose(self):
        return ExactMatrix([list(col) for col in zip(*self.entries)]) if self.rows else self

    def trace(self):
        acc = self.entries[0][0]
        for i in range(1, self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)

    __repr__ = __str__


def exact_rank(m: ExactMatrix):
    """Rank and an exact kernel basis; entries must lie in a field.

    Returns ``(rank, kernel)`` where ``kernel`` is a list of column vectors
    (plain lists) spanning the right null space, with rank + len(kernel)
    equal to the number of columns.
    """
    if m.rows == 0 or m.cols == 0:
        return 0, _trivial_kernel(m)
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [e / inv for e in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * q for e, q in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    one = _one_like(m)
    zero = one * 0
    kernel = []
    for fc in free:
        vec = [zero] * cols
        vec[fc] = one
        for pr, pc in enumerate(pivots):
            vec[pc] = -a[pr][fc]
        kernel.append(vec)
    return r, kernel


def _trivial_kernel(m):
    one = _one_like(m)
    zero = one * 0
    kernel = []
    for fc in range(m.cols):
        vec = [zero] * m.cols
        vec[fc] = one
        kernel.append(vec)
    return kernel


def _one_like(m):
    for row in m.entries:
        for e in row:
            if e != 0:
                return e / e
    return Fraction(1)


def bareiss_det(m: ExactMatrix):
    """Fraction-free determinant; entries in any integral domain with
    exact division (``/`` for fields, ``divexact`` for polynomials)."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m.entries]
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev is not None:
                    val = _exact_div(val, prev)
                a[i][j] = val
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def bareiss_rank(m: ExactMatrix):
    """Fraction-free rank over an integral domain (no field division)."""
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    prev = None
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                val = a[i][j] * a[r][c] - a[i][c] * a[r][j]
                if prev is not None:
                    val = _exact_div(val, prev)
                a[i][j] = val
            a[i][c] = a[r][c] * 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def _exact_div(val, d):
    if hasattr(val, "divexact"):
        return val.divexact(d)
    return val / d


def char_poly(m: ExactMatrix, one=Fraction(1)):
    """Coefficients [1, c_{n-1}, ..., c_0] of det(t*E - m), highest first.

    Faddeev-LeVerrier recursion: the only divisions are by the integers
    1..n, which are units in every coefficient domain used here.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [one]
    mk = ExactMatrix.identity(n, one=one)
    for k in range(1, n + 1):
        am = m @ mk
        ck = am.trace() * Fraction(-1, k)
        coeffs.append(ck)
        if k < n:
            mk = am + ExactMatrix.identity(n, one=one).scale(ck)
    return coeffs


def invert(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse over a field; raises ValueError if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    one = _one_like(m)
    zero = one * 0
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m.entries)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[c], a[pivot] = a[pivot], a[c]
        inv = a[c][c]
        a[c] = [e / inv for e in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * q for e, q in zip(a[i], a[c])]
    return ExactMatrix([row[n:] for row in a])


def solve(m: ExactMatrix, rhs):
    """One exact solution of m @ x = rhs over a field, or None if inconsistent."""
    rows, cols = m.rows, m.cols
    a = [list(row) + [rhs[i]] for i, row in enumerate(m.entries)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [e / inv for e in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * q for e, q in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    one = _one_like(m)
    zero = one * 0
    x = [zero] * cols
    for pr, pc in enumerate(pivots):
        x[pc] = a[pr][cols]
    return x


def minor_expansion_det(m: ExactMatrix):
    """Independent oracle: determinant by Laplace expansion on the first row."""
    n = m.rows
    if n != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m.entries[0][0]
    total = None
    for j in range(n):
        c = m.entries[0][j]
        if c == 0:
            continue
        sub = ExactMatrix([row[:j] + row[j + 1 :] for row in m.entries[1:]])
        term = c * minor_expansion_det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m.entries[0][0] * 0
    return total


def minor_expansion_rank(m: ExactMatrix):
    """Independent oracle: rank as the largest k with a nonzero k x k minor."""
    from itertools import combinations

    best = 0
    for k in range(1, min(m.rows, m.cols) + 1):
        found = False
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = ExactMatrix([[m.entries[i][j] for j in cols] for i in rows])
                if minor_expansion_det(sub) != 0:
                    found = True
                    break
            if found:
                break
        if found:
            best = k
        else:
            break
    return best
