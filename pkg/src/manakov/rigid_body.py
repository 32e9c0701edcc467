"""The free n-dimensional rigid body on T*SO(n), classical side.

Everything is expressed in the left-invariant momentum components P_ij with
coefficients in the moments-of-inertia field: the quadratic Hamiltonian
H = 1/2 sum P_ij^2/(l_i+l_j), the trace-generated commuting integrals
c_{k,k-2l}, the counting formulas for centrality and the defect of
integrability as functions of the multiplicity partition q, and the greedy
assembly of a full integrable set (Casimirs, block Casimirs, a defect-filling
subset of integrals, and right momenta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brackets import LiePoissonPoly, lie_poisson_bracket, momentum_vars
from .charts import GroupChart, jacobian_rank
from .linalg import ExactMatrix, char_poly, solve
from .ratfunc import MultiPoly, RationalFunction
from .report import VerificationReport
from .son import DegenerateSampleError, MomentSpec, pair_list, random_skew, sigma_triple

from .son import dim_so


@dataclass(frozen=True)
class ManakovIndex:
    """Index (k, l) of the integral c_{k,k-2l}: degree 2l in the momenta,
    coefficient degree 2(k-2l) in the moments."""

    k: int
    l: int

    def __post_init__(self):
        if self.l < 1 or self.k - 2 * self.l < 0:
            raise ValueError(f"invalid integral index k={self.k}, l={self.l}")

    @property
    def j(self):
        return self.k - 2 * self.l

    def label(self):
        return f"c{self.k},{self.j}"


def manakov_indices(n, max_degree=None):
    """All independent indices for dimension n: k = 2..n, l = 1..[k/2],
    ordered lexicographically by (k, l)."""
    out = []
    for k in range(2, n + 1):
        for l in range(1, k // 2 + 1):
            idx = ManakovIndex(k, l)
            if max_degree is None or 2 * l <= max_degree:
                out.append(idx)
    return out


def _one(spec: MomentSpec):
    return spec.coeff_one()


def hamiltonian(spec: MomentSpec) -> LiePoissonPoly:
    """H = 1/2 sum_{i<j} P_ij^2 / (l_i + l_j)."""
    n = spec.n
    vars = momentum_vars(n)
    one = _one(spec)
    terms = {}
    for k, (i, j) in enumerate(pair_list(n)):
        mono = [0] * len(vars)
        mono[k] = 2
        coef = one / (2 * (spec.lambdas[i - 1] + spec.lambdas[j - 1]))
        terms[tuple(mono)] = coef
    return LiePoissonPoly(n, MultiPoly(vars, terms))


def euler_bracket_closed_form(spec: MomentSpec, i, j) -> LiePoissonPoly:
    """{H, P_ij} = (l_i - l_j) sum_k P_ik P_kj / ((l_i+l_k)(l_k+l_j))."""
    n = spec.n
    one = _one(spec)
    lam = spec.lambdas
    acc = LiePoissonPoly.zero(n)
    for k in range(1, n + 1):
        if k == i or k == j:
            continue
        coef = (one * (lam[i - 1] - lam[j - 1])) / (
            (lam[i - 1] + lam[k - 1]) * (lam[k - 1] + lam[j - 1])
        )
        term = LiePoissonPoly.gen(n, (i, k)) * LiePoissonPoly.gen(n, (k, j))
        acc = acc + term * coef
    return acc


def manakov_coefficient(idx: ManakovIndex, indices, spec: MomentSpec):
    """a^{i1..i_{2l}}_{k,k-2l}: complete homogeneous sum of squared moments.

    Sum over exponents b_1..b_{2l} >= 0 with total k-2l of the products
    l_{i1}^{2b_1} ... l_{i_{2l}}^{2b_{2l}}.
    """
    if len(indices) != 2 * idx.l:
        raise ValueError("index tuple length must be 2l")
    lam2 = [spec.lambdas[i - 1] ** 2 for i in indices]
    one = _one(spec)
    total = idx.j
    acc = [one * 0]

    def rec(pos, remaining, prod):
        if pos == len(lam2) - 1:
            acc[0] = acc[0] + prod * lam2[pos] ** remaining
            return
        for b in range(remaining + 1):
            rec(pos + 1, remaining - b, prod * lam2[pos] ** b)

    if total == 0:
        return one
    rec(0, total, one)
    return acc[0]


def manakov_integral(idx: ManakovIndex, n, spec: MomentSpec) -> LiePoissonPoly:
    """c_{k,k-2l} = (1/4l) sum over closed index walks of a * P_{i1 i2} ... P_{i_2l i1}."""
    if idx.k > n:
        raise ValueError(f"index k={idx.k} exceeds dimension {n}")
    vars = momentum_vars(n)
    from .son import pair_index

    pidx = pair_index(n)
    two_l = 2 * idx.l
    acc_terms = {}
    scale = Fraction(1, 4 * idx.l)

    def walks(prefix):
        if len(prefix) == two_l:
            if prefix[-1] == prefix[0]:
                return
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if prefix and v == prefix[-1]:
                continue
            prefix.append(v)
            yield from walks(prefix)
            prefix.pop()

    for tup in walks([]):
        sign = 1
        mono = [0] * len(vars)
        cycle = list(tup) + [tup[0]]
        for a, b in zip(cycle, cycle[1:]):
            if a < b:
                mono[pidx[(a, b)]] += 1
            else:
                mono[pidx[(b, a)]] += 1
                sign = -sign
        coef = manakov_coefficient(idx, tup, spec) * (scale * sign)
        key = tuple(mono)
        cur = acc_terms.get(key)
        acc_terms[key] = coef if cur is None else cur + coef
    return LiePoissonPoly(n, MultiPoly(vars, acc_terms))


def hamiltonian_as_integral_combination(spec: MomentSpec):
    """Solve H = sum_k beta_k c_{k,k-2} exactly; returns {k: beta_k}.

    The linear system has one equation per momentum pair; a None return
    means the system is inconsistent for this set of moments.
    """
    n = spec.n
    one = _one(spec)
    ks = list(range(2, n + 1))
    rows = []
    rhs = []
    for (i, j) in pair_list(n):
        row = [manakov_coefficient(ManakovIndex(k, 1), (i, j), spec) for k in ks]
        rows.append(row)
        rhs.append(-(one / (spec.lambdas[i - 1] + spec.lambdas[j - 1])))
    sol = solve(ExactMatrix(rows), rhs)
    if sol is None:
        return None
    return dict(zip(ks, sol))


# -- counting ------------------------------------------------------------------


def centrality_defect(spec: MomentSpec):
    """(rank B^lambda, centrality k, defect r, central count kbar) from the
    closed forms in the multiplicity partition q."""
    n = spec.n
    q = spec.q
    d = spec.d
    two_n = 2 * dim_so(n)
    if spec.u == 1:
        rank = two_n - n // 2
        k = n // 2
        r = 0
    else:
        s1 = sum(q[i] * q[j] for i in range(len(q)) for j in range(i + 1, len(q)))
        rank = two_n - s1
        k = n // 2 + sum(s // 2 for s in q)
        r = s1 - k
    kbar = Fraction(n * n + 2 * n - sum(s * s for s in q), 4) - Fraction((d + 1) // 2, 2)
    if kbar.denominator != 1:
        raise AssertionError("central count formula must be an integer")
    kbar = int(kbar)
    if r % 2 != 0 or kbar != k + r // 2:
        raise AssertionError("counting invariants violated")
    return rank, k, r, kbar


def centrality_defect_sampled(spec: MomentSpec, rng, points=3, bound=10**6):
    """The same counts from exact kernel dimensions at random momentum values.

    Uses rank = 2N - s1, k = s + s2 - s3 and r = s1 - k at each sampled
    point; raises DegenerateSampleError if the samples disagree.
    """
    from .son import ad_kernel_dim

    results = set()
    for _ in range(points):
        a = random_skew(spec.n, rng, bound)
        s1, s2, s3 = sigma_triple(a, spec)
        sigma = ad_kernel_dim(a)
        rank = 2 * dim_so(spec.n) - s1
        k = sigma + s2 - s3
        r = s1 - k
        results.add((rank, k, r, k + r // 2))
    if len(results) != 1:
        raise DegenerateSampleError(f"sampled counts disagree: {sorted(results)}")
    return results.pop()


def partitions(n):
    """All partitions of n as non-decreasing tuples, ordered by (length, lex)."""
    out = []

    def rec(remaining, minimum, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(minimum, remaining + 1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, 1, [])
    return sorted(out, key=lambda q: (len(q), q))


# the reference catalog lists 10 of the 11 partitions of 6; (2,2,2) is absent
_CATALOG_SKIP = {(6, (2, 2, 2))}


def table3(max_n=6, all_partitions=False):
    """Rows (n, q, k(B^lambda), r(B^lambda), kbar(q)) for 3 <= n <= max_n.

    By default reproduces the 25 reference rows; pass all_partitions=True to
    include every partition (adds (2,2,2) at n=6).
    """
    rows = []
    for n in range(3, max_n + 1):
        for q in partitions(n):
            if not all_partitions and (n, q) in _CATALOG_SKIP:
                continue
            spec = MomentSpec.from_partition(q)
            _, k, r, kbar = centrality_defect(spec)
            rows.append((n, q, k, r, kbar))
    return rows


# -- Casimir-based central sets -------------------------------------------------


def momentum_matrix(n, indices=None) -> ExactMatrix:
    """The skew matrix of momentum variables restricted to ``indices``."""
    indices = list(indices) if indices is not None else list(range(1, n + 1))
    vars = momentum_vars(n)
    from .son import pair_index

    pidx = pair_index(n)
    zero = MultiPoly.zero(vars)
    size = len(indices)
    entries = [[zero] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            i, j = indices[a], indices[b]
            if i == j:
                continue
            if i < j:
                entries[a][b] = MultiPoly.gen(vars, pidx[(i, j)])
            else:
                entries[a][b] = -MultiPoly.gen(vars, pidx[(j, i)])
    return ExactMatrix(entries)


def casimir_polynomials(n, indices=None):
    """Standard Casimirs of the momentum matrix on ``indices``: the even-shift
    characteristic coefficients, as momentum polynomials."""
    indices = list(indices) if indices is not None else list(range(1, n + 1))
    m = momentum_matrix(n, indices)
    one = MultiPoly.const(momentum_vars(n), 1)
    coeffs = char_poly(m, one=one)
    out = []
    size = len(indices)
    for shift in range(1, size + 1):
        c = coeffs[shift]
        if shift % 2 == 1:
            if not c.is_zero():
                raise AssertionError("odd characteristic coefficient nonzero")
        else:
            out.append(LiePoissonPoly(n, c))
    return out


def z_lambda(spec: MomentSpec):
    """The set Z^lambda: full Casimirs, plus the block Casimirs of every
    equal-moment class when there are at least two classes.

    Returns (functions, labels); the count is [n/2] + sum [q_j/2] for u > 1
    and [n/2] for u = 1.
    """
    n = spec.n
    funcs = casimir_polynomials(n)
    labels = [f"C{k}" for k in range(1, len(funcs) + 1)]
    if spec.u > 1:
        for cls in spec.classes:
            if len(cls) < 2:
                continue
            blocks = casimir_polynomials(n, cls)
            tag = "".join(str(i) for i in cls)
            funcs.extend(blocks)
            labels.extend([f"C({tag}){k}" for k in range(1, len(blocks) + 1)])
    return funcs, labels


def z_lambda_count(spec: MomentSpec):
    if spec.u == 1:
        return spec.n // 2
    return spec.n // 2 + sum(s // 2 for s in spec.q)


# -- full integrable set assembly ------------------------------------------------


@dataclass
class RigidBodySet:
    """Assembled integrable set: central = Z^lambda plus r/2 trace integrals,
    noncentral = equal-moment left momenta and right momenta chosen for rank
    growth."""

    spec: MomentSpec
    z: list
    z_labels: list
    central_integrals: list
    central_integral_labels: list
    noncentral_pairs: tuple  # entries ("L"|"R", (i, j))
    counts: tuple

    @property
    def right_pairs(self):
        return tuple(p for side, p in self.noncentral_pairs if side == "R")

    @property
    def central(self):
        return list(self.z) + list(self.central_integrals)

    @property
    def functions(self):
        n = self.spec.n
        extra = [LiePoissonPoly.gen(n, p, side=side) for side, p in self.noncentral_pairs]
        return self.central + extra

    @property
    def labels(self):
        return (
            list(self.z_labels)
            + list(self.central_integral_labels)
            + [f"P{side}{i}{j}" for side, (i, j) in self.noncentral_pairs]
        )

    @property
    def size(self):
        return len(self.z) + len(self.central_integrals) + len(self.noncentral_pairs)


def assemble_integrable_set(spec: MomentSpec, chart: GroupChart) -> RigidBodySet:
    """Greedy construction of a full integrable set at the given chart point.

    Candidates are scanned in deterministic order (integral indices by
    (k, l), then right-momentum pairs lexicographically); a candidate is kept
    iff it increases the exact Jacobian rank.  The final set has 2N - kbar
    elements of rank 2N - kbar, with kbar of them central.
    """
    if spec.is_symbolic:
        raise ValueError("assembly needs explicit rational moments")
    n = spec.n
    rank_counts = centrality_defect(spec)
    _, k, r, kbar = rank_counts
    target_total = 2 * dim_so(n) - kbar
    z, z_labels = z_lambda(spec)
    chosen = list(z)
    rank = jacobian_rank(chosen, chart)
    if rank != len(chosen):
        raise DegenerateSampleError("Casimir set not independent at this point")
    integrals = []
    integral_labels = []
    need = r // 2
    for idx in manakov_indices(n):
        if len(integrals) == need:
            break
        if idx.j == 0:
            continue  # c_{2m,0} duplicates the full Casimirs
        cand = manakov_integral(idx, n, spec)
        new_rank = jacobian_rank(chosen + [cand], chart)
        if new_rank > rank:
            chosen.append(cand)
            integrals.append(cand)
            integral_labels.append(idx.label())
            rank = new_rank
    if len(integrals) != need:
        raise DegenerateSampleError(
            f"only {len(integrals)} of {need} defect-filling integrals found"
        )
    # noncentral candidates come from B^lambda: the equal-moment left
    # momenta first, then the right momenta, in lexicographic pair order
    candidates = [("L", p) for p in spec.equal_moment_pairs()]
    candidates += [("R", p) for p in pair_list(n)]
    noncentral = []
    for side, p in candidates:
        if len(chosen) == target_total:
            break
        cand = LiePoissonPoly.gen(n, p, side=side)
        new_rank = jacobian_rank(chosen + [cand], chart)
        if new_rank > rank:
            chosen.append(cand)
            noncentral.append((side, p))
            rank = new_rank
    if len(chosen) != target_total or rank != target_total:
        raise DegenerateSampleError(
            f"rank target {target_total} unreachable (got {rank} with {len(chosen)})"
        )
    return RigidBodySet(
        spec=spec,
        z=z,
        z_labels=z_labels,
        central_integrals=integrals,
        central_integral_labels=integral_labels,
        noncentral_pairs=tuple(noncentral),
        counts=rank_counts,
    )


# -- verification suites ----------------------------------------------------------


def _integer_scaled(f: LiePoissonPoly) -> LiePoissonPoly:
    """Rescale a rational-coefficient polynomial to integer coefficients
    (zero-preserving); symbolic coefficients pass through unchanged."""
    from math import gcd

    denom = 1
    for c in f.poly.terms.values():
        if not isinstance(c, (int, Fraction)):
            return f
        denom = denom * c.denominator // gcd(denom, c.denominator)
    if denom == 1:
        return f
    return f * Fraction(denom)


def verify_involution_family(n, spec: MomentSpec, report=None, include_hamiltonian=True):
    """{c, c'} = 0 for all integral pairs and {c, H} = 0, exact in the
    coefficient field of ``spec``.

    Zero checks are run on integer-rescaled polynomials when the moments are
    explicit rationals; rescaling cannot change vanishing.
    """
    report = report if report is not None else VerificationReport()
    anchor = "rigid-classical/involution"
    items = [
        (idx.label(), _integer_scaled(manakov_integral(idx, n, spec)))
        for idx in manakov_indices(n)
    ]
    if include_hamiltonian:
        items.append(("H", _integer_scaled(hamiltonian(spec))))
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            br = lie_poisson_bracket(items[a][1], items[b][1])
            ok = br.is_zero()
            report.add(
                f"rigid/{{{items[a][0]},{items[b][0]}}}",
                anchor,
                ok,
                witness="0" if ok else str(br),
            )
    return report


def verify_euler_closed_form(spec: MomentSpec, report=None):
    """{H, P_ij} equals the quadratic closed form, as an identity in the
    moment field."""
    report = report if report is not None else VerificationReport()
    h = hamiltonian(spec)
    n = spec.n
    for (i, j) in pair_list(n):
        br = lie_poisson_bracket(h, LiePoissonPoly.gen(n, (i, j)))
        expected = euler_bracket_closed_form(spec, i, j)
        ok = br == expected
        report.add(
            f"rigid/euler-form/P{i}{j}",
            "rigid-classical/euler-equations",
            ok,
            witness="match" if ok else f"{br} != {expected}",
        )
    return report


def verify_z_lambda(spec: MomentSpec, rng, report=None, points=3, chart_bound=40):
    """{Z^lambda, B^lambda} = 0 exactly and rank Z^lambda = z^lambda at
    sampled chart points."""
    report = report if report is not None else VerificationReport()
    n = spec.n
    funcs, labels = z_lambda(spec)
    count = z_lambda_count(spec)
    report.add(
        "rigid/z-count",
        "rigid-classical/central-set",
        len(funcs) == count,
        witness=f"{len(funcs)} functions, formula {count}",
    )
    lam_pairs = spec.equal_moment_pairs()
    for f, lb in zip(funcs, labels):
        bad = None
        for p in lam_pairs:
            br = lie_poisson_bracket(f, LiePoissonPoly.gen(n, p))
            if not br.is_zero():
                bad = (p, br)
                break
        report.add(
            f"rigid/{{{lb},B-lambda}}",
            "rigid-classical/central-set",
            bad is None,
            witness="0" if bad is None else f"nonzero at P{bad[0]}: {bad[1]}",
        )
    for s in range(points):
        chart = GroupChart.random(n, rng, bound=chart_bound)
        rank = jacobian_rank(funcs, chart)
        report.add(
            f"rigid/z-rank/sample{s}",
            "rigid-classical/central-set",
            rank == count,
            witness=f"rank {rank} of {count}",
            generic=True,
        )
    return report
