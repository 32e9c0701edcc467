import random
from fractions import Fraction

import pytest

from manakov.brackets import PhasePoly, canonical_bracket
from manakov.central_force import SplitTree, momentum, p_squared
from manakov.radical import RadicalElement
from manakov.weyl import (
    WeylOperator,
    commutator,
    compose,
    conserved_vector_operators,
    diamond,
    kepler_operator,
    laplace_operator,
    momentum_operator,
    momentum_square_operator,
    multiplication_by_r_squared,
    quantum_central_force_suite,
    quantum_recursive_set,
    standard_quantize,
    symmetrize,
    x_dot_p_operator,
)


def test_canonical_commutation():
    n = 3
    p1 = WeylOperator.momentum(n, 1)
    x1 = WeylOperator.position(n, 1)
    x2 = WeylOperator.position(n, 2)
    assert commutator(p1, x1) == WeylOperator.const(n, 1)
    assert commutator(p1, x2).is_zero()
    assert compose(p1, x1) == compose(x1, p1) + WeylOperator.const(n, 1)


def test_compose_examples():
    n = 3
    # p1 o (1/r) = (1/r) p1 - x1 r / (x^2)^2
    rinv = WeylOperator.const(n, RadicalElement.radius(n).inverse())
    got = compose(WeylOperator.momentum(n, 1), rinv)
    d = RadicalElement.radius(n).inverse().diff(1)
    expected = compose(rinv, WeylOperator.momentum(n, 1)) + WeylOperator.const(n, d)
    assert got == expected
    # (x1 p2) o (x2 p1) = x1 x2 p1 p2 + x1 p1
    lhs = compose(
        compose(WeylOperator.position(n, 1), WeylOperator.momentum(n, 2)),
        compose(WeylOperator.position(n, 2), WeylOperator.momentum(n, 1)),
    )
    rhs = (
        compose(
            compose(WeylOperator.position(n, 1), WeylOperator.position(n, 2)),
            compose(WeylOperator.momentum(n, 1), WeylOperator.momentum(n, 2)),
        )
        + compose(WeylOperator.position(n, 1), WeylOperator.momentum(n, 1))
    )
    assert lhs == rhs


def test_compose_associative_randomized():
    rng = random.Random(3)
    n = 2

    def rand_op():
        acc = WeylOperator.zero(n)
        for _ in range(rng.randint(1, 2)):
            t = WeylOperator.const(n, Fraction(rng.randint(-3, 3)))
            for _ in range(rng.randint(0, 2)):
                if rng.random() < 0.5:
                    t = compose(t, WeylOperator.position(n, rng.randint(1, n)))
                else:
                    t = compose(t, WeylOperator.momentum(n, rng.randint(1, n)))
            acc = acc + t
        return acc

    for _ in range(25):
        a, b, c = rand_op(), rand_op(), rand_op()
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_momentum_operator_brackets_match_classical():
    n = 3
    assert commutator(momentum_operator(n, 1, 2), momentum_operator(n, 1, 3)) == -momentum_operator(
        n, 2, 3
    )


def test_laplace_r2_commutator():
    for n in (2, 3, 4, 5, 6):
        c = commutator(laplace_operator(n), multiplication_by_r_squared(n))
        assert c == x_dot_p_operator(n).scale(4) + WeylOperator.const(n, 2 * n)


def test_symmetrize_examples():
    n = 3
    f = PhasePoly.coordinate(n, 1) * PhasePoly.momentum(n, 1)
    assert symmetrize(f) == compose(
        WeylOperator.position(n, 1), WeylOperator.momentum(n, 1)
    ) + WeylOperator.const(n, Fraction(1, 2))
    # linear-in-p functions are fixed by symmetrization
    pij = momentum(n, 1, 2)
    assert symmetrize(pij) == momentum_operator(n, 1, 2)


def test_symmetrization_shift_all_n():
    for n in range(2, 7):
        shift = momentum_square_operator(n) - symmetrize(p_squared(n))
        assert shift == WeylOperator.const(n, Fraction(n * (n - 1), 4))


def test_standard_quantize_isomorphism():
    n = 3
    f = momentum(n, 1, 2)
    g = momentum(n, 2, 3)
    lhs = commutator(standard_quantize(f), standard_quantize(g))
    rhs = standard_quantize(canonical_bracket(f, g))
    assert lhs == rhs
    assert standard_quantize(PhasePoly.const(n, 1)) == WeylOperator.const(n, 1)
    with pytest.raises(ValueError):
        standard_quantize(p_squared(n))


def test_standard_quantize_isomorphism_randomized():
    rng = random.Random(7)
    n = 3

    def rand_linear():
        acc = PhasePoly.zero(n)
        for _ in range(rng.randint(1, 3)):
            coef = PhasePoly.const(n, Fraction(rng.randint(-3, 3)))
            for _ in range(rng.randint(0, 2)):
                coef = coef * PhasePoly.coordinate(n, rng.randint(1, n))
            if rng.random() < 0.7:
                coef = coef * PhasePoly.momentum(n, rng.randint(1, n))
            acc = acc + coef
        return acc

    for _ in range(25):
        f, g = rand_linear(), rand_linear()
        if f.p_degree() > 1 or g.p_degree() > 1:
            continue
        br = canonical_bracket(f, g)
        assert br.p_degree() <= 1
        assert commutator(standard_quantize(f), standard_quantize(g)) == standard_quantize(br)


def test_principal_symbol_homomorphism():
    n = 3
    a = momentum_square_operator(n)
    b = compose(momentum_operator(n, 1, 2), momentum_operator(n, 1, 3))
    prod = compose(a, b)
    sym = prod.principal_symbol()
    expected = (a.principal_symbol() * b.principal_symbol()).top_p_part()
    assert sym == expected
    # symbol of a symmetrized polynomial is its top-degree part
    f = p_squared(n) + 3 * momentum(n, 1, 2)
    assert symmetrize(f).principal_symbol() == f.top_p_part()


def test_momentum_square_identity():
    for n in (2, 3, 4):
        lhs = momentum_square_operator(n)
        r2 = multiplication_by_r_squared(n)
        xp = x_dot_p_operator(n)
        rhs = compose(r2, laplace_operator(n)) - compose(xp, xp) - xp.scale(n - 2)
        assert lhs == rhs


def test_quantum_kepler_vector():
    n = 3
    alpha = Fraction(2)
    h = kepler_operator(n, alpha)
    a_ops = conserved_vector_operators(n, alpha)
    for ai in a_ops:
        assert commutator(h, ai).is_zero()
    a2 = sum((compose(ai, ai) for ai in a_ops), WeylOperator.zero(n))
    rhs = compose(
        h, momentum_square_operator(n) - WeylOperator.const(n, Fraction((n - 1) ** 2, 4))
    ).scale(2) + WeylOperator.const(n, alpha * alpha)
    assert a2 == rhs


def test_diamond_is_symmetrized_product():
    n = 2
    a = momentum_operator(n, 1, 2)
    b = WeylOperator.momentum(n, 2)
    assert diamond(a, b) == (compose(a, b) + compose(b, a)).scale(Fraction(1, 2))


def test_quantum_recursive_sets_small():
    n = 4
    tree = SplitTree.split(SplitTree.leaf([1, 2, 3]), [4])
    ops, labels, symbols = quantum_recursive_set(n, tree)
    z_count = sum(1 for lb in labels if lb.startswith("Z"))
    for zi in range(z_count):
        for op in ops:
            assert commutator(ops[zi], op).is_zero()
    # degenerate n=2 case: a single momentum operator
    ops2, labels2, _ = quantum_recursive_set(2, SplitTree.leaf([1, 2]))
    assert len(ops2) == 1 and labels2 == ["Z:P12"]


def test_quantum_suite_n2_degenerates():
    rep = quantum_central_force_suite(2, 1)
    assert rep.ok
    # P-hat^2 equals the square of the single momentum operator
    assert momentum_square_operator(2) == compose(momentum_operator(2, 1, 2), momentum_operator(2, 1, 2))


def test_quantum_suite_n3():
    rng = random.Random(5)
    rep = quantum_central_force_suite(3, 1, rng=rng, trees=[SplitTree.split([1, 2], [3])])
    assert rep.ok, [c.id for c in rep.failures]
