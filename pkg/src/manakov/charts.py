"""Exact Jacobian-rank checks at rational chart points.

Two charts are supported: canonical (x, p) coordinates on punctured T*R^n,
with x sampled on rational-radius spheres so the radical r evaluates to a
rational, and a 2N-dimensional local chart on T*SO(n) given by a Cayley
parameter S (seeding X = (I-S)(I+S)^{-1}) together with the left-momentum
values.  Right momenta are expanded through the chart and differentiated
exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .brackets import LiePoissonPoly, PhasePoly, canonical_bracket, lie_poisson_bracket
from .linalg import ExactMatrix, exact_rank, invert
from .report import VerificationReport
from .son import (
    DegenerateSampleError,
    SkewMatrix,
    basis_element,
    cayley_orthogonal,
    pair_list,
    random_rational,
    random_skew,
    right_from_left,
)


class CotangentChart:
    """Rational point of T*R^n with r = sqrt(x^2) exactly rational."""

    __slots__ = ("n", "x", "p", "r")

    def __init__(self, n, x, p, r=None):
        self.n = n
        self.x = tuple(Fraction(v) for v in x)
        self.p = tuple(Fraction(v) for v in p)
        x2 = sum(v * v for v in self.x)
        if r is None:
            r = _rational_sqrt(x2)
            if r is None:
                raise ValueError("x^2 is not the square of a rational; sample on a sphere")
        r = Fraction(r)
        if r * r != x2 or r <= 0:
            raise ValueError("inconsistent radius for the given x")
        self.r = r

    @classmethod
    def random(cls, n, rng, bound=10):
        """Stereographic sample: rational radius, rational coordinates."""
        radius = Fraction(rng.randint(1, bound), rng.randint(1, bound))
        t = [random_rational(rng, bound) for _ in range(n - 1)]
        tt = sum(v * v for v in t)
        denom = 1 + tt
        x = [2 * radius * v / denom for v in t] + [radius * (1 - tt) / denom]
        p = [random_rational(rng, bound) for _ in range(n)]
        return cls(n, x, p, r=radius)

    def gradient_row(self, f: PhasePoly):
        """(df/dx_1..df/dx_n, df/dp_1..df/dp_n) evaluated exactly."""
        try:
            row = [f.dx(i).eval(self.x, self.r, self.p) for i in range(1, self.n + 1)]
            row += [f.dp(i).eval(self.x, self.r, self.p) for i in range(1, self.n + 1)]
        except ZeroDivisionError:
            raise DegenerateSampleError("pole hit while evaluating gradient; resample point")
        return row


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    num = _int_sqrt_exact(q.numerator)
    den = _int_sqrt_exact(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_sqrt_exact(v):
    from math import isqrt

    r = isqrt(v)
    return r if r * r == v else None


class GroupChart:
    """Rational point of T*SO(n): Cayley seed S and left-momentum values."""

    __slots__ = ("n", "s", "pl", "x", "pr", "_dpr_s", "_dpr_pl")

    def __init__(self, n, s: SkewMatrix, pl: SkewMatrix):
        self.n = n
        self.s = s
        self.pl = pl
        self.x = cayley_orthogonal(s)
        self.pr = right_from_left(self.x, pl)
        self._dpr_s = None
        self._dpr_pl = None

    @classmethod
    def random(cls, n, rng, bound=10**6):
        return cls(n, random_skew(n, rng, bound), random_skew(n, rng, bound))

    def _momentum_derivatives(self):
        """d(PR coords)/d(chart coords), coordinates ordered by pair_list."""
        if self._dpr_s is not None:
            return self._dpr_s, self._dpr_pl
        n = self.n
        pairs = pair_list(n)
        eye = ExactMatrix.identity(n)
        m = invert(eye + self.s.to_dense())
        x = self.x
        xt = x.transpose()
        pld = self.pl.to_dense()
        ipx = eye + x
        dpr_s = []
        dpr_pl = []
        for (a, b) in pairs:
            dab = basis_element(n, a, b).to_dense()
            dx = (ipx @ dab @ m).scale(Fraction(-1))
            dmat = dx @ pld @ xt + x @ pld @ dx.transpose()
            dpr_s.append([dmat.entries[i - 1][j - 1] for (i, j) in pairs])
            dmat2 = x @ dab @ xt
            dpr_pl.append([dmat2.entries[i - 1][j - 1] for (i, j) in pairs])
        self._dpr_s = dpr_s
        self._dpr_pl = dpr_pl
        return dpr_s, dpr_pl

    def gradient_row(self, f: LiePoissonPoly):
        """Gradient in the 2N chart coordinates (S pairs then PL pairs)."""
        n = self.n
        pairs = pair_list(n)
        if f.side == "L":
            vals = self.pl.coords()
            row = [Fraction(0)] * len(pairs)
            row += [f.poly.diff(k).eval(vals) for k in range(len(pairs))]
            return row
        vals = self.pr.coords()
        g = [f.poly.diff(k).eval(vals) for k in range(len(pairs))]
        dpr_s, dpr_pl = self._momentum_derivatives()
        row = []
        for a in range(len(pairs)):
            row.append(sum((g[c] * dpr_s[a][c] for c in range(len(pairs))), Fraction(0)))
        for a in range(len(pairs)):
            row.append(sum((g[c] * dpr_pl[a][c] for c in range(len(pairs))), Fraction(0)))
        return row


def jacobian_rank(fs, at) -> int:
    """Exact rank of the Jacobian of the given functions at a chart point."""
    rows = [at.gradient_row(f) for f in fs]
    rank, _ = exact_rank(ExactMatrix(rows))
    return rank


def involution_report(
    a, b, engine, labels_a=None, labels_b=None, anchor="", id_prefix="involution"
) -> VerificationReport:
    """Compute every pairwise bracket between the two batches.

    ``engine`` is "canonical", "lie-poisson" or a callable; nonzero brackets
    are recorded verbatim as failure witnesses.
    """
    if engine == "canonical":
        engine = canonical_bracket
    elif engine == "lie-poisson":
        engine = lie_poisson_bracket
    labels_a = labels_a or [f"A{i}" for i in range(len(a))]
    labels_b = labels_b or [f"B{j}" for j in range(len(b))]
    report = VerificationReport()
    for i, f in enumerate(a):
        for j, g in enumerate(b):
            br = engine(f, g)
            ok = br.is_zero()
            report.add(
                f"{id_prefix}/{{{labels_a[i]},{labels_b[j]}}}",
                anchor,
                ok,
                witness="0" if ok else str(br),
            )
    return report
