import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horocp import (
    BallCapError,
    GroupSpec,
    LengthFunction,
    NormSpec,
    H3_A,
    H3_B,
    H3_C,
    central_heisenberg_table,
)


def test_heisenberg_product():
    h3 = GroupSpec.heisenberg3()
    assert h3.multiply((1, 0, 0), (0, 1, 0)) == (1, 1, 1)


def test_inverse_examples():
    z2 = GroupSpec.free_abelian(2)
    assert z2.inverse((3, -2)) == (-3, 2)
    c4 = GroupSpec.finite_cyclic(4)
    assert c4.multiply((3,), (2,)) == (1,)
    assert c4.inverse((3,)) == (1,)


def test_heisenberg_commutator_is_c():
    h3 = GroupSpec.heisenberg3()
    a_inv, b_inv = h3.inverse(H3_A), h3.inverse(H3_B)
    comm = h3.multiply(h3.multiply(a_inv, b_inv), h3.multiply(H3_A, H3_B))
    assert comm == H3_C


small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def group_and_elements(draw):
    kind = draw(st.sampled_from(["z2", "h3", "c6", "zxc"]))
    if kind == "z2":
        g = GroupSpec.free_abelian(2)
        elem = st.tuples(small_ints, small_ints)
    elif kind == "h3":
        g = GroupSpec.heisenberg3()
        elem = st.tuples(small_ints, small_ints, small_ints)
    elif kind == "c6":
        g = GroupSpec.finite_cyclic(6)
        elem = st.tuples(st.integers(min_value=0, max_value=5))
    else:
        g = GroupSpec.free_abelian_times_cyclic(1, 3)
        elem = st.tuples(small_ints, st.integers(min_value=0, max_value=2))
    return g, draw(elem), draw(elem), draw(elem)


@given(group_and_elements())
@settings(max_examples=120, deadline=None)
def test_group_axioms(data):
    g, a, b, c = data
    e = g.identity()
    assert g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c))
    assert g.multiply(a, e) == a and g.multiply(e, a) == a
    assert g.multiply(a, g.inverse(a)) == e
    assert g.inverse(g.inverse(a)) == a


def test_word_length_z2_matches_l1_oracle(len_z2):
    # independent oracle: standard generators realize the l1 norm
    assert len_z2.length((3, -2)) == 5
    for g in len_z2.ball(6):
        assert len_z2.length(g) == abs(g[0]) + abs(g[1])


def test_ball_count_z(len_z1):
    assert len(len_z1.ball(3)) == 7


def test_ball_order_deterministic(len_z2):
    ball = len_z2.ball(4)
    assert ball.elements[0] == (0, 0)
    keys = [(ball.values[g], g) for g in ball.elements[1:]]
    assert keys == sorted(keys)
    again = LengthFunction.word(GroupSpec.free_abelian(2)).ball(4)
    assert again.elements == ball.elements


def test_ball_monotone_in_radius(len_z2):
    sizes = [len(len_z2.ball(r)) for r in range(6)]
    assert sizes == sorted(sizes)


def test_heisenberg_central_length(len_h3):
    assert len_h3.length(H3_C) == 4


def test_finite_cyclic_word_length_matches_formula():
    c6 = GroupSpec.finite_cyclic(6)
    spec = LengthFunction.word(c6)
    for k in range(6):
        assert spec.length((k,)) == min(k, 6 - k)
    ball = spec.ball(math.inf)
    assert len(ball) == 6 and ball.complete_group


def test_axioms_word_length(len_z1):
    report = len_z1.check_axioms(10)
    assert report.max_violation == 0


def test_axioms_norm_restriction():
    z2 = GroupSpec.free_abelian(2)
    spec = LengthFunction.norm_restriction(z2, NormSpec.l1())
    assert spec.check_axioms(6).max_violation == 0


def test_axioms_corrupted_table():
    z1 = GroupSpec.free_abelian(1)
    table = {(k,): abs(k) for k in range(-6, 7)}
    table[(2,)] = 9  # breaks l(1+1) <= l(1) + l(1)
    spec = LengthFunction.explicit_table(z1, table)
    report = spec.check_axioms(6)
    assert report.max_violation > 0


def test_ball_cap_error():
    z2 = GroupSpec.free_abelian(2)
    spec = LengthFunction.word(z2, cap=10)
    with pytest.raises(BallCapError):
        spec.ball(5)


def test_norm_restriction_values():
    z2 = GroupSpec.free_abelian(2)
    assert LengthFunction.norm_restriction(z2, NormSpec.l1()).length((3, -4)) == 7
    assert LengthFunction.norm_restriction(z2, NormSpec.linf()).length((3, -4)) == 4
    l2 = LengthFunction.norm_restriction(z2, NormSpec.l2())
    assert abs(l2.length((3, -4)) - 5.0) < 1e-12


def test_polytope_norm_ball_matches_filter_oracle():
    z2 = GroupSpec.free_abelian(2)
    diamond = NormSpec.polytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    spec = LengthFunction.norm_restriction(z2, diamond)
    ball = spec.ball(3)
    expected = {
        (x, y)
        for x in range(-3, 4)
        for y in range(-3, 4)
        if abs(x) + abs(y) <= 3
    }
    assert set(ball.elements) == expected


def test_explicit_table_outside_domain():
    z1 = GroupSpec.free_abelian(1)
    spec = LengthFunction.explicit_table(z1, central_heisenberg_table(10))
    with pytest.raises(ValueError):
        spec.length((11,))


def test_free_abelian_times_cyclic_length():
    g = GroupSpec.free_abelian_times_cyclic(1, 3)
    spec = LengthFunction.word(g)
    # (2, 1) needs two free steps and one torsion step
    assert spec.length((2, 1)) == 3
    assert spec.length((0, 2)) == 1  # the inverse torsion generator


def test_generator_validation():
    with pytest.raises(ValueError):
        GroupSpec.free_abelian(2, generators=[(1, 0), (0, 1)])  # not symmetric
    with pytest.raises(ValueError):
        GroupSpec.free_abelian(1, generators=[(0,), (1,), (-1,)])  # identity listed
