import random
from fractions import Fraction

import pytest

from manakov.brackets import (
    LiePoissonPoly,
    PhasePoly,
    canonical_bracket,
    lie_poisson_bracket,
    structure_table,
)
from manakov.central_force import kinetic, momenta, momentum, p_squared, r_squared, x_dot_p
from manakov.charts import CotangentChart, GroupChart, involution_report, jacobian_rank
from manakov.son import bracket as matrix_bracket
from manakov.son import basis_element, pair_list


def test_bracket_sign_convention():
    # the single most error-prone convention: {p_i, x_j} = delta_ij
    n = 2
    p1 = PhasePoly.momentum(n, 1)
    x1 = PhasePoly.coordinate(n, 1)
    x2 = PhasePoly.coordinate(n, 2)
    assert canonical_bracket(p1, x1) == PhasePoly.const(n, 1)
    assert canonical_bracket(x1, p1) == PhasePoly.const(n, -1)
    assert canonical_bracket(p1, x2).is_zero()


def test_momentum_bracket_relations():
    n = 3
    assert canonical_bracket(momentum(n, 1, 2), momentum(n, 2, 3)) == momentum(n, 1, 3)
    # {x_i, P_jk} = d_ij x_k - d_ik x_j and the momentum analogue
    assert canonical_bracket(PhasePoly.coordinate(n, 1), momentum(n, 2, 3)).is_zero()
    assert canonical_bracket(PhasePoly.coordinate(n, 2), momentum(n, 2, 3)) == PhasePoly.coordinate(n, 3)
    assert canonical_bracket(PhasePoly.momentum(n, 2), momentum(n, 2, 3)) == PhasePoly.momentum(n, 3)


def test_momentum_brackets_match_matrix_brackets():
    # {P_ij, P_hk} realizes the same structure constants as [D_ij, D_hk]
    n = 4
    for (i, j) in pair_list(n):
        for (h, k) in pair_list(n):
            br = canonical_bracket(momentum(n, i, j), momentum(n, h, k))
            mat = matrix_bracket(basis_element(n, i, j), basis_element(n, h, k))
            expected = PhasePoly.zero(n)
            for (a, b), c in mat.upper.items():
                expected = expected + c * momentum(n, a, b)
            assert br == expected


def test_p_squared_involution():
    n = 4
    p2 = p_squared(n)
    for (i, j) in pair_list(n):
        assert canonical_bracket(p2, momentum(n, i, j)).is_zero()


def test_p2_r2_bracket():
    n = 3
    assert canonical_bracket(kinetic(n), r_squared(n)) == 4 * x_dot_p(n)


def test_scalars_commute_with_momenta():
    n = 4
    for f in (r_squared(n), kinetic(n)):
        for (i, j) in pair_list(n):
            assert canonical_bracket(f, momentum(n, i, j)).is_zero()


def test_canonical_jacobi_and_leibniz():
    rng = random.Random(3)
    n = 3

    def rand_poly():
        acc = PhasePoly.zero(n)
        for _ in range(rng.randint(1, 2)):
            t = PhasePoly.const(n, Fraction(rng.randint(-3, 3)))
            for _ in range(rng.randint(0, 3)):
                if rng.random() < 0.5:
                    t = t * PhasePoly.coordinate(n, rng.randint(1, n))
                else:
                    t = t * PhasePoly.momentum(n, rng.randint(1, n))
            acc = acc + t
        return acc

    for _ in range(25):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        jac = (
            canonical_bracket(canonical_bracket(f, g), h)
            + canonical_bracket(canonical_bracket(g, h), f)
            + canonical_bracket(canonical_bracket(h, f), g)
        )
        assert jac.is_zero()
        assert canonical_bracket(f, g * h) == canonical_bracket(f, g) * h + g * canonical_bracket(f, h)
        assert (canonical_bracket(f, g) + canonical_bracket(g, f)).is_zero()


def test_lie_poisson_structure():
    n = 4
    assert lie_poisson_bracket(
        LiePoissonPoly.gen(n, (1, 2)), LiePoissonPoly.gen(n, (1, 3))
    ) == -LiePoissonPoly.gen(n, (2, 3))
    c1 = sum(
        (LiePoissonPoly.gen(n, p) ** 2 for p in pair_list(n)), LiePoissonPoly.zero(n)
    )
    for p in pair_list(n):
        assert lie_poisson_bracket(c1, LiePoissonPoly.gen(n, p)).is_zero()


def test_lie_poisson_jacobi_and_antisymmetry():
    rng = random.Random(11)
    n = 4
    plist = pair_list(n)

    def rand_poly():
        acc = LiePoissonPoly.zero(n)
        for _ in range(rng.randint(1, 3)):
            t = LiePoissonPoly.const(n, Fraction(rng.randint(-3, 3)))
            for _ in range(rng.randint(1, 3)):
                t = t * LiePoissonPoly.gen(n, plist[rng.randrange(len(plist))])
            acc = acc + t
        return acc

    for _ in range(20):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        jac = (
            lie_poisson_bracket(lie_poisson_bracket(f, g), h)
            + lie_poisson_bracket(lie_poisson_bracket(g, h), f)
            + lie_poisson_bracket(lie_poisson_bracket(h, f), g)
        )
        assert jac.is_zero()
        assert lie_poisson_bracket(f, f).is_zero()
        assert lie_poisson_bracket(f, g * h) == lie_poisson_bracket(f, g) * h + g * lie_poisson_bracket(f, h)


def test_left_right_momenta_commute_and_right_sign():
    n = 3
    left = LiePoissonPoly.gen(n, (1, 2), side="L")
    right = LiePoissonPoly.gen(n, (1, 3), side="R")
    assert lie_poisson_bracket(left, right).is_zero()
    r12 = LiePoissonPoly.gen(n, (1, 2), side="R")
    r13 = LiePoissonPoly.gen(n, (1, 3), side="R")
    assert lie_poisson_bracket(r12, r13) == LiePoissonPoly.gen(n, (2, 3), side="R")


def test_structure_table_single_term():
    # distinct ordered pairs bracket to at most one signed generator
    for n in (3, 4, 5):
        for (u, v), (w, s) in structure_table(n).items():
            assert u < v
            assert s in (-1, 1)


def test_rank_of_momentum_map():
    rng = random.Random(5)
    n = 3
    pt = CotangentChart.random(n, rng)
    pi = [p_squared(n), momentum(n, 1, 3), momentum(n, 2, 3)]
    assert jacobian_rank(pi, pt) == 2 * n - 3


def test_rank_full_set_free_particle():
    rng = random.Random(7)
    n = 4
    h = Fraction(1, 2) * kinetic(n)
    funcs = [h, p_squared(n)] + [momentum(n, i, j) for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)]]
    pt = CotangentChart.random(n, rng)
    assert jacobian_rank(funcs, pt) == 2 * n - 2


def test_rank_momenta_left_right_and_b():
    rng = random.Random(9)
    for n in (3, 4, 5):
        gc = GroupChart.random(n, rng, bound=12)
        nn = len(pair_list(n))
        pl = [LiePoissonPoly.gen(n, p, side="L") for p in pair_list(n)]
        pr = [LiePoissonPoly.gen(n, p, side="R") for p in pair_list(n)]
        assert jacobian_rank(pl, gc) == nn
        assert jacobian_rank(pr, gc) == nn
        assert jacobian_rank(pl + pr, gc) == 2 * nn - n // 2


def test_rank_b_lambda():
    from manakov.rigid_body import partitions

    rng = random.Random(13)
    for n in (3, 4, 5):
        for q in partitions(n):
            if len(q) == 1:
                continue
            mus = []
            while len(mus) < len(q):
                v = Fraction(rng.randint(1, 20), rng.randint(1, 20))
                if v not in mus:
                    mus.append(v)
            from manakov.son import MomentSpec

            spec = MomentSpec.from_partition_values(q, mus)
            gc = GroupChart.random(n, rng, bound=12)
            nn = len(pair_list(n))
            funcs = [LiePoissonPoly.gen(n, p, side="L") for p in spec.equal_moment_pairs()]
            funcs += [LiePoissonPoly.gen(n, p, side="R") for p in pair_list(n)]
            s1 = sum(q[i] * q[j] for i in range(len(q)) for j in range(i + 1, len(q)))
            assert jacobian_rank(funcs, gc) == 2 * nn - s1


def test_involution_report_witnesses():
    n = 3
    rep = involution_report(
        [p_squared(n)], [momentum(n, 1, 2), kinetic(n)], "canonical", labels_a=["P2"], labels_b=["P12", "p2"]
    )
    assert rep.ok
    rep2 = involution_report([kinetic(n)], [r_squared(n)], "canonical")
    assert not rep2.ok
    assert "p" in rep2.checks[0].witness  # the nonzero bracket 4 x.p is recorded


def test_sphere_chart_is_exact():
    rng = random.Random(21)
    for n in (2, 3, 5):
        for _ in range(5):
            pt = CotangentChart.random(n, rng)
            assert sum(v * v for v in pt.x) == pt.r**2
            assert pt.r > 0


def test_chart_rejects_irrational_radius():
    with pytest.raises(ValueError):
        CotangentChart(2, [Fraction(1), Fraction(1)], [Fraction(0), Fraction(0)])
