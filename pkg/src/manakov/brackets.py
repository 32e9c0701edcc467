"""Exact Poisson bracket engines.

Two phase spaces are covered: the cotangent bundle of punctured R^n with
canonical coordinates (x, p), and the momentum picture of T*SO(n) where
polynomials live in the left- (or right-) invariant momentum components.

Sign convention, pinned by test_bracket_sign_convention: the elementary
bracket is {p_i, x_j} = delta_ij, which reproduces {P_12, P_23} = +P_13 and
matches the operator commutator [p_i-hat, x_j] = delta_ij.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .radical import RadicalElement, x_vars
from .ratfunc import MultiPoly, RationalFunction
from .son import SkewMatrix, pair_index, pair_list


class PhasePoly:
    """Polynomial on T*R^n: sum of coefficient(x, r) * p-monomial terms.

    Coefficients are elements of the radical extension (rational functions
    in x adjoined r = sqrt(x^2)); the exponent tuples index powers of
    p_1..p_n.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        if isinstance(c, (int, Fraction)):
            c = RadicalElement.const(n, c)
        return cls(n, {(0,) * n: c})

    @classmethod
    def coordinate(cls, n, i):
        return cls.const(n, RadicalElement.coordinate(n, i))

    @classmethod
    def momentum(cls, n, i):
        mono = [0] * n
        mono[i - 1] = 1
        return cls(n, {tuple(mono): RadicalElement.const(n, 1)})

    @classmethod
    def radius(cls, n):
        return cls.const(n, RadicalElement.radius(n))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PhasePoly):
            if other.n != self.n:
                raise ValueError("mixed dimensions")
            return other
        if isinstance(other, (int, Fraction)):
            return PhasePoly.const(self.n, RadicalElement.const(self.n, other))
        if isinstance(other, MultiPoly):
            other = RationalFunction(other, reduce=False)
        if isinstance(other, RationalFunction):
            other = RadicalElement(self.n, other)
        if isinstance(other, RadicalElement):
            return PhasePoly.const(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = terms[m] + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
            else:
                terms[m] = c
        out = PhasePoly(self.n)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = PhasePoly(self.n)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                if m in terms:
                    s = terms[m] + c
                    if s.is_zero():
                        del terms[m]
                    else:
                        terms[m] = s
                elif not c.is_zero():
                    terms[m] = c
        out = PhasePoly(self.n)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        result = PhasePoly.const(self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------

    def dp(self, i):
        """d/dp_i (1-based)."""
        terms = {}
        for m, c in self.terms.items():
            e = m[i - 1]
            if e == 0:
                continue
            mm = list(m)
            mm[i - 1] = e - 1
            terms[tuple(mm)] = c * e
        out = PhasePoly(self.n)
        out.terms = terms
        return out

    def dx(self, i):
        """d/dx_i (1-based), acting on the radical coefficients."""
        out = PhasePoly(self.n)
        out.terms = {m: d for m, c in self.terms.items() if not (d := c.diff(i)).is_zero()}
        return out

    def p_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def top_p_part(self):
        d = self.p_degree()
        out = PhasePoly(self.n)
        out.terms = {m: c for m, c in self.terms.items() if sum(m) == d}
        return out

    def eval(self, x_values, r_value, p_values):
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c.eval(x_values, r_value)
            for e, pv in zip(m, p_values):
                if e:
                    v = v * pv**e
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            mono = "*".join(
                f"p{i+1}" if e == 1 else f"p{i+1}^{e}" for i, e in enumerate(m) if e
            )
            c = str(self.terms[m])
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


def canonical_bracket(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """{f, g} = sum_i df/dp_i dg/dx_i - df/dx_i dg/dp_i."""
    if f.n != g.n:
        raise ValueError("mixed dimensions")
    acc = PhasePoly.zero(f.n)
    for i in range(1, f.n + 1):
        fp = f.dp(i)
        if fp.terms:
            acc = acc + fp * g.dx(i)
        fx = f.dx(i)
        if fx.terms:
            acc = acc - fx * g.dp(i)
    return acc


# -- Lie-Poisson side ---------------------------------------------------------


@lru_cache(maxsize=None)
def momentum_vars(n):
    return tuple(f"P{i}_{j}" for (i, j) in pair_list(n))


def _signed_pair(i, j):
    if i == j:
        return None
    return ((i, j), 1) if i < j else ((j, i), -1)


@lru_cache(maxsize=None)
def structure_table(n):
    """{(u, v): (w, sign)} with u < v var indices and {P_u, P_v} = sign * P_w.

    Encodes {P_ij, P_hk} = -d_ih P_jk - d_jk P_ih + d_ik P_jh + d_jh P_ik;
    at most one delta fires for distinct ordered pairs.
    """
    plist = pair_list(n)
    pidx = pair_index(n)
    table = {}
    for u in range(len(plist)):
        i, j = plist[u]
        for v in range(u + 1, len(plist)):
            h, k = plist[v]
            deltas = []
            if i == h:
                deltas.append((-1, j, k))
            if j == k:
                deltas.append((-1, i, h))
            if i == k:
                deltas.append((1, j, h))
            if j == h:
                deltas.append((1, i, k))
            acc = {}
            for sgn, a, b in deltas:
                sp = _signed_pair(a, b)
                if sp is None:
                    continue
                w, s = sp
                acc[w] = acc.get(w, 0) + sgn * s
            acc = {w: s for w, s in acc.items() if s}
            if acc:
                ((w, s),) = acc.items()
                table[(u, v)] = (pidx[w], s)
    return table


class LiePoissonPoly:
    """Polynomial in the N = n(n-1)/2 invariant momentum components.

    ``side`` records whether the variables are the left- or right-invariant
    momenta ("L"/"R"); the two families mutually Poisson-commute and the
    right family carries opposite-sign structure constants.
    """

    __slots__ = ("n", "side", "poly")

    def __init__(self, n, poly: MultiPoly, side="L"):
        if poly.vars != momentum_vars(n):
            raise ValueError("polynomial over the wrong variable set")
        if side not in ("L", "R"):
            raise ValueError("side must be 'L' or 'R'")
        self.n = n
        self.side = side
        self.poly = poly

    @classmethod
    def zero(cls, n, side="L"):
        return cls(n, MultiPoly.zero(momentum_vars(n)), side)

    @classmethod
    def const(cls, n, c, side="L"):
        return cls(n, MultiPoly.const(momentum_vars(n), c), side)

    @classmethod
    def gen(cls, n, pair, side="L"):
        i, j = pair
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if i == j:
            return cls.zero(n, side)
        mono = MultiPoly.gen(momentum_vars(n), pair_index(n)[(i, j)])
        return cls(n, mono * sign, side)

    def _coerce(self, other):
        if isinstance(other, LiePoissonPoly):
            if other.n != self.n:
                raise ValueError("mixed dimensions")
            if other.side != self.side:
                raise ValueError("mixed momentum sides in polynomial arithmetic")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return LiePoissonPoly.const(self.n, other, self.side)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LiePoissonPoly(self.n, self.poly + other.poly, self.side)

    __radd__ = __add__

    def __neg__(self):
        return LiePoissonPoly(self.n, -self.poly, self.side)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return LiePoissonPoly(self.n, self.poly * other, self.side)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LiePoissonPoly(self.n, self.poly * other.poly, self.side)

    __rmul__ = __mul__

    def __pow__(self, k):
        return LiePoissonPoly(self.n, self.poly**k, self.side)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash((self.n, self.side, self.poly))

    def is_zero(self):
        return self.poly.is_zero()

    def total_degree(self):
        return self.poly.total_degree()

    def top_degree_part(self):
        d = self.poly.total_degree()
        terms = {m: c for m, c in self.poly.terms.items() if sum(m) == d}
        return LiePoissonPoly(self.n, MultiPoly(self.poly.vars, terms), self.side)

    def eval(self, values):
        """Evaluate at a SkewMatrix or at a sequence ordered like pair_list."""
        if isinstance(values, SkewMatrix):
            values = values.coords()
        return self.poly.eval(list(values))

    def map_coeffs(self, fn):
        return LiePoissonPoly(self.n, self.poly.map_coeffs(fn), self.side)

    def __str__(self):
        tag = "" if self.side == "L" else " [right]"
        return f"{self.poly}{tag}"

    __repr__ = __str__


def lie_poisson_bracket(f: LiePoissonPoly, g: LiePoissonPoly) -> LiePoissonPoly:
    """Derivation extension of the momentum structure constants.

    Brackets between a left- and a right-side polynomial vanish identically;
    right-with-right uses the opposite-sign constants.
    """
    if f.n != g.n:
        raise ValueError("mixed dimensions")
    if f.side != g.side:
        return LiePoissonPoly.zero(f.n, f.side)
    n = f.n
    vars = momentum_vars(n)
    df = {}
    dg = {}
    for u in range(len(vars)):
        pf = f.poly.diff(u)
        if not pf.is_zero():
            df[u] = pf
        pg = g.poly.diff(u)
        if not pg.is_zero():
            dg[u] = pg
    acc = MultiPoly.zero(vars)
    for (u, v), (w, s) in structure_table(n).items():
        term = None
        if u in df and v in dg:
            term = df[u] * dg[v]
        if v in df and u in dg:
            t2 = df[v] * dg[u]
            term = (term - t2) if term is not None else -t2
        if term is None or term.is_zero():
            continue
        acc = acc + term * (MultiPoly.gen(vars, w) * s)
    if f.side == "R":
        acc = -acc
    return LiePoissonPoly(n, acc, f.side)
