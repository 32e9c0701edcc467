"""Classical integrable sets for rotation-invariant systems on T*R^n.

Covers the angular-momentum family (H, P^2; L), the Runge-Lenz extension of
the 1/r potential, the isotropic-oscillator and f(P^2) sets, and the
recursive coordinate-splitting construction that realizes every central
count k = 2..n, with the catalog rows for n = 4 and n = 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .brackets import PhasePoly, canonical_bracket
from .charts import CotangentChart, involution_report, jacobian_rank
from .radical import RadicalElement
from .report import VerificationReport


def momentum(n, i, j) -> PhasePoly:
    """P_ij = x_i p_j - x_j p_i."""
    return PhasePoly.coordinate(n, i) * PhasePoly.momentum(n, j) - PhasePoly.coordinate(
        n, j
    ) * PhasePoly.momentum(n, i)


def momenta(n):
    """All N = n(n-1)/2 momenta in lexicographic pair order."""
    if n < 2:
        raise ValueError("need n >= 2")
    return [momentum(n, i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def p_squared(n, subset=None) -> PhasePoly:
    """Sum of P_ij^2 over pairs inside ``subset`` (default: all coordinates)."""
    subset = sorted(subset) if subset is not None else list(range(1, n + 1))
    if any(not 1 <= i <= n for i in subset):
        raise ValueError("subset index out of range")
    acc = PhasePoly.zero(n)
    for a in range(len(subset)):
        for b in range(a + 1, len(subset)):
            pij = momentum(n, subset[a], subset[b])
            acc = acc + pij * pij
    return acc


def kinetic(n) -> PhasePoly:
    return sum((PhasePoly.momentum(n, i) ** 2 for i in range(1, n + 1)), PhasePoly.zero(n))


def r_squared(n) -> PhasePoly:
    return sum((PhasePoly.coordinate(n, i) ** 2 for i in range(1, n + 1)), PhasePoly.zero(n))


def x_dot_p(n) -> PhasePoly:
    return sum(
        (PhasePoly.coordinate(n, i) * PhasePoly.momentum(n, i) for i in range(1, n + 1)),
        PhasePoly.zero(n),
    )


def inverse_radius(n) -> PhasePoly:
    return PhasePoly.const(n, RadicalElement.radius(n).inverse())


def runge_lenz_vector(n, alpha):
    """A_i = sum_j P_ij p_j - alpha x_i / r, for i = 1..n."""
    alpha = Fraction(alpha)
    rinv = RadicalElement.radius(n).inverse()
    out = []
    for i in range(1, n + 1):
        a = sum(
            (momentum(n, i, j) * PhasePoly.momentum(n, j) for j in range(1, n + 1) if j != i),
            PhasePoly.zero(n),
        )
        a = a - PhasePoly.const(n, rinv * alpha) * PhasePoly.coordinate(n, i)
        out.append(a)
    return out


def kepler_hamiltonian(n, alpha) -> PhasePoly:
    return Fraction(1, 2) * kinetic(n) - Fraction(alpha) * inverse_radius(n)


def oscillator_hamiltonian(n) -> PhasePoly:
    return Fraction(1, 2) * (kinetic(n) + r_squared(n))


def generic_hamiltonian(n) -> PhasePoly:
    """A concrete f(p^2, r, P^2) instance with all three slots active."""
    return Fraction(1, 2) * kinetic(n) + r_squared(n) + p_squared(n)


@dataclass
class IntegrableSetSpec:
    """A candidate integrable set: the central elements first, then the rest.

    ``labels`` name the functions in display order (central then noncentral);
    verification status lives only in reports produced by
    ``verify_integrable_set``.
    """

    n: int
    central: list
    noncentral: list
    labels: list
    label: str
    k: int = field(init=False)

    def __post_init__(self):
        self.k = len(self.central)
        if len(self.labels) != len(self.central) + len(self.noncentral):
            raise ValueError("one label per function required")

    @property
    def functions(self):
        return list(self.central) + list(self.noncentral)

    @property
    def size(self):
        return len(self.central) + len(self.noncentral)


def pair_label(i, j):
    return f"P{i}{j}" if max(i, j) < 10 else f"P{i}_{j}"


def subset_label(subset):
    return "P2_(" + "".join(str(i) for i in sorted(subset)) + ")"


# -- recursive splitting construction ----------------------------------------


@dataclass(frozen=True)
class SplitTree:
    """Binary splitting of a coordinate subset; a node without children is a
    stopped subset contributing its total square and a default momentum list."""

    indices: tuple
    children: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        if self.children is not None:
            left, right = self.children
            if set(left.indices) & set(right.indices):
                raise ValueError("children overlap")
            if set(left.indices) | set(right.indices) != set(self.indices):
                raise ValueError("children do not partition the node")

    @classmethod
    def leaf(cls, indices):
        return cls(tuple(indices))

    @classmethod
    def split(cls, left, right):
        lt = left if isinstance(left, SplitTree) else cls.leaf(left)
        rt = right if isinstance(right, SplitTree) else cls.leaf(right)
        return cls(tuple(lt.indices + rt.indices), (lt, rt))

    def depth(self):
        if self.children is None:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def describe(self):
        if self.children is None:
            return "{" + ",".join(map(str, self.indices)) + "}"
        return "(" + "|".join(c.describe() for c in self.children) + ")"


def default_momentum_choice(subset):
    """2m-4 momenta of an m-element subset: pairs (s1, sj) and (s2, sj), j >= 3."""
    s = sorted(subset)
    out = [(s[0], j) for j in s[2:]]
    out += [(s[1], j) for j in s[2:]]
    return out


def recursive_set_structure(n, tree: SplitTree):
    """Structural description of the central set Z and momentum list L.

    Returns (z_items, l_items) where each item is ("square", subset) or
    ("pair", (i, j)).  A stopped subset of size >= 3 contributes its total
    momentum square plus 2m-4 momenta; a pair subset contributes the single
    momentum P_ij (splitting a pair is ineffective and treated as stopping);
    singletons contribute nothing.
    """
    if set(tree.indices) != set(range(1, n + 1)):
        raise ValueError("tree must partition {1..n}")

    def walk(node):
        idx = node.indices
        m = len(idx)
        if m == 1:
            return [], []
        if m == 2 or node.children is None:
            if m == 2:
                return [("pair", idx)], []
            lpairs = default_momentum_choice(idx)
            return [("square", idx)], [("pair", p) for p in lpairs]
        left, right = node.children
        z1, l1 = walk(left)
        z2, l2 = walk(right)
        return [("square", idx)] + z1 + z2, l1 + l2

    z_items, l_items = walk(tree)
    expected_l = 2 * (n - len(z_items) - 1)
    if len(l_items) != expected_l:
        raise AssertionError(f"momentum list size {len(l_items)} != {expected_l}")
    return z_items, l_items


def _item_label(n, item):
    kind, data = item
    if kind == "pair":
        return pair_label(*data)
    return "P2" if len(data) == n else subset_label(data)


def _item_function(n, item) -> PhasePoly:
    kind, data = item
    if kind == "pair":
        return momentum(n, *data)
    return p_squared(n, data)


def build_recursive_sets(n, tree: SplitTree):
    """Central set Z and momentum list L for a splitting of {1..n}.

    Returns (Z, L, z_labels, l_labels); see recursive_set_structure for the
    construction rules.
    """
    z_items, l_items = recursive_set_structure(n, tree)
    z = [_item_function(n, it) for it in z_items]
    l = [_item_function(n, it) for it in l_items]
    zl = [_item_label(n, it) for it in z_items]
    ll = [_item_label(n, it) for it in l_items]
    return z, l, zl, ll


def recursive_set_spec(n, tree, hamiltonian=None, label=None) -> IntegrableSetSpec:
    h = hamiltonian if hamiltonian is not None else generic_hamiltonian(n)
    z, l, zl, ll = build_recursive_sets(n, tree)
    return IntegrableSetSpec(
        n=n,
        central=[h] + z,
        noncentral=l,
        labels=["H"] + zl + ll,
        label=label or f"split {tree.describe()}",
    )


def all_split_trees(indices, max_depth):
    """Every splitting tree on the given index set up to the given depth.

    Pair subsets are not split (ineffective); deduplication is by structure.
    """
    indices = tuple(sorted(indices))
    out = [SplitTree.leaf(indices)]
    if max_depth == 0 or len(indices) <= 2:
        return out
    rest = indices[1:]
    first = indices[0]
    for mask in range(2 ** len(rest) - 1):
        left = [first] + [v for k, v in enumerate(rest) if mask >> k & 1]
        right = [v for k, v in enumerate(rest) if not mask >> k & 1]
        for lt in all_split_trees(left, max_depth - 1):
            for rt in all_split_trees(right, max_depth - 1):
                out.append(SplitTree(indices, (lt, rt)))
    return out


# -- the four closed-form families -------------------------------------------


def catalog(n, family, alpha=None) -> IntegrableSetSpec:
    """The integrable sets attached to the four closed-form Hamiltonian
    families: generic f(p^2, r, P^2), the 1/r potential, the isotropic
    oscillator, and f(P^2)."""
    if n < 2:
        raise ValueError("need n >= 2")
    lpairs = default_momentum_choice(range(1, n + 1))
    l_funcs = [momentum(n, i, j) for i, j in lpairs]
    l_labels = [pair_label(i, j) for i, j in lpairs]
    if family == "generic_f":
        return IntegrableSetSpec(
            n=n,
            central=[generic_hamiltonian(n), p_squared(n)],
            noncentral=l_funcs,
            labels=["H", "P2"] + l_labels,
            label=f"n={n} generic rotation-invariant family",
        )
    if family == "kepler":
        if alpha is None:
            raise ValueError("the 1/r family needs a rational coupling alpha")
        h = kepler_hamiltonian(n, alpha)
        a1 = runge_lenz_vector(n, alpha)[0]
        return IntegrableSetSpec(
            n=n,
            central=[h],
            noncentral=[p_squared(n)] + l_funcs + [a1],
            labels=["H", "P2"] + l_labels + ["A1"],
            label=f"n={n} 1/r potential, alpha={alpha}",
        )
    if family == "oscillator":
        h = oscillator_hamiltonian(n)
        his = [
            Fraction(1, 2)
            * (PhasePoly.momentum(n, i) ** 2 + PhasePoly.coordinate(n, i) ** 2)
            for i in range(1, n)
        ]
        p1js = [momentum(n, 1, j) for j in range(2, n + 1)]
        return IntegrableSetSpec(
            n=n,
            central=[h],
            noncentral=his + p1js,
            labels=["H"]
            + [f"H{i}" for i in range(1, n)]
            + [pair_label(1, j) for j in range(2, n + 1)],
            label=f"n={n} isotropic oscillator",
        )
    if family == "f_of_P2":
        return IntegrableSetSpec(
            n=n,
            central=[p_squared(n)],
            noncentral=[kinetic(n), PhasePoly.radius(n)] + l_funcs,
            labels=["P2", "p2", "r"] + l_labels,
            label=f"n={n} f(P^2) family",
        )
    raise ValueError(f"unknown family {family!r}")


# -- verification -------------------------------------------------------------


def verify_integrable_set(spec: IntegrableSetSpec, rng, points=3) -> VerificationReport:
    """Exact involution of the central subset against the whole set, plus
    Jacobian rank = set size at randomly sampled chart points."""
    report = involution_report(
        spec.central,
        spec.functions,
        "canonical",
        labels_a=spec.labels[: spec.k],
        labels_b=spec.labels,
        anchor="central-force/involution",
        id_prefix=f"{spec.label}/involution",
    )
    size = spec.size
    for s in range(points):
        pt = CotangentChart.random(spec.n, rng)
        rank = jacobian_rank(spec.functions, pt)
        report.add(
            f"{spec.label}/rank/sample{s}",
            "central-force/independence",
            rank == size,
            witness=f"rank {rank} of {size}",
            generic=True,
        )
    return report


def runge_lenz_check(n, alpha) -> VerificationReport:
    """{H, A_i} = 0 for every component and A^2 = 2 P^2 H + alpha^2, exactly."""
    alpha = Fraction(alpha)
    h = kepler_hamiltonian(n, alpha)
    a = runge_lenz_vector(n, alpha)
    report = VerificationReport()
    for i, ai in enumerate(a, start=1):
        br = canonical_bracket(h, ai)
        report.add(
            f"runge-lenz/{{H,A{i}}}",
            "central-force/conserved-vector",
            br.is_zero(),
            witness="0" if br.is_zero() else str(br),
        )
    a2 = sum((ai * ai for ai in a), PhasePoly.zero(n))
    residual = a2 - (2 * p_squared(n) * h + alpha * alpha)
    report.add(
        "runge-lenz/square-identity",
        "central-force/conserved-vector",
        residual.is_zero(),
        witness="0" if residual.is_zero() else str(residual),
    )
    return report


# -- catalog tables for n = 4 and n = 5 ---------------------------------------


def _row(n, central_items, noncentral_items, label):
    central = [generic_hamiltonian(n)]
    labels = ["H"]
    for item in central_items:
        f, name = _item(n, item)
        central.append(f)
        labels.append(name)
    noncentral = []
    for item in noncentral_items:
        f, name = _item(n, item)
        noncentral.append(f)
        labels.append(name)
    return IntegrableSetSpec(n=n, central=central, noncentral=noncentral, labels=labels, label=label)


def _item(n, item):
    if item == "P2":
        return p_squared(n), "P2"
    if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], int):
        return momentum(n, *item), pair_label(*item)
    return p_squared(n, item), subset_label(item)


def table_rows(n):
    """The verified catalog rows for n = 4 (4 rows) and n = 5 (7 rows)."""
    if n == 4:
        return [
            _row(4, ["P2"], [(1, 3), (1, 4), (2, 3), (2, 4)], "n=4 row 1"),
            _row(4, ["P2", [1, 2, 3]], [(1, 2), (1, 3)], "n=4 row 2"),
            _row(4, ["P2", [1, 2, 3], (1, 2)], [], "n=4 row 3"),
            _row(4, ["P2", (1, 2), (3, 4)], [], "n=4 row 4"),
        ]
    if n == 5:
        return [
            _row(5, ["P2"], [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)], "n=5 row 1"),
            _row(5, ["P2", [1, 2, 3, 4]], [(1, 3), (1, 4), (2, 3), (2, 4)], "n=5 row 2"),
            _row(5, ["P2", [1, 2, 3, 4], [1, 2, 3]], [(1, 3), (2, 3)], "n=5 row 3"),
            _row(5, ["P2", [1, 2, 3, 4], [1, 2, 3], (1, 2)], [], "n=5 row 4"),
            _row(5, ["P2", [1, 2, 3, 4], (1, 2), (3, 4)], [], "n=5 row 5"),
            _row(5, ["P2", [1, 2, 3], (4, 5)], [(1, 2), (1, 3)], "n=5 row 6"),
            _row(5, ["P2", [1, 2, 3], (4, 5), (1, 2)], [], "n=5 row 7"),
        ]
    raise ValueError("catalog tables cover n = 4 and n = 5")


def emit_tables(n, rng, points=3):
    """Catalog rows together with a verification report for each row."""
    rows = []
    for spec in table_rows(n):
        report = verify_integrable_set(spec, rng, points=points)
        rows.append((spec, report))
    return rows
