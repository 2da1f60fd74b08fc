import random

import pytest

from tropquot.corpus import corpus_fan
from tropquot.errors import ChartError, ParseError
from tropquot.extended import INF, make_point
from tropquot.polyhedra import cone, zero_cone
from tropquot.sampling import random_unit, random_unit_word
from tropquot.tropicalize import section, trop
from tropquot.valued import (
    K,
    SemigroupPolynomial,
    TensorPoint,
    TensorPolynomial,
    act,
    eval_seminorm,
    eval_tensor,
    is_affinoid_unit,
    k_point,
    k_point_from_chart,
    monomial_coordinate,
    parse_scalar,
    t,
    torus_point,
    torus_pullbacks,
    val,
)

P = SemigroupPolynomial.from_dict


def test_valuations():
    assert val(K.zero) is INF
    assert val(t**2 + t**5) == 2
    assert val((3 * t + t**2) / (2 - t)) == 1
    assert val(1 / t**3) == -3
    assert val(parse_scalar("7/2")) == 0


def test_parse_scalar():
    assert parse_scalar("t^2*(3+t)") == t**2 * (3 + t)
    assert parse_scalar("(1+t)/(1-t)") == (1 + t) / (1 - t)
    for bad in ("t^", "x+1", "__import__('os')", "1/0"):
        with pytest.raises(ParseError):
            parse_scalar(bad)


def test_monomial_coordinates():
    a2 = corpus_fan("A2")
    x = torus_point(a2, [t**2, 3 + t])
    assert monomial_coordinate(x, (1, 1)) == t**2 * (3 + t)
    assert monomial_coordinate(x, (0, 0)) == 1
    assert monomial_coordinate(x, (-1, 0)) == t**-2
    y = k_point(a2, cone((1, 0)), [3 + t])
    assert monomial_coordinate(y, (1, 0)) == 0
    assert monomial_coordinate(y, (0, 1)) == 3 + t
    with pytest.raises(ChartError):
        monomial_coordinate(y, (-1, 0))


def test_point_from_chart_values():
    a2 = corpus_fan("A2")
    x = k_point_from_chart(a2, cone((1, 0), (0, 1)), [0, 3 + t])
    assert x.orbit == cone((1, 0))
    assert x.coords == (3 + t,)
    origin = k_point_from_chart(a2, cone((1, 0), (0, 1)), [0, 0])
    assert origin.orbit == cone((1, 0), (0, 1))
    sing = corpus_fan("SING")
    # generators (1,0), (1,1), (1,2): values must be multiplicative
    with pytest.raises(ValueError):
        k_point_from_chart(sing, cone((2, -1), (0, 1)), [t, t, t**3])
    y = k_point_from_chart(sing, cone((2, -1), (0, 1)), [t, t**2, t**3])
    assert monomial_coordinate(y, (2, 1)) == t**3


def test_seminorm_examples():
    a1 = corpus_fan("A1")
    u2 = section(make_point(a1, zero_cone(1), [2]))
    assert eval_seminorm(u2, P({(0,): 5, (1,): 1, (3,): 1})) == 0
    x = torus_point(a1, [1 + t])
    f = P({(1,): 1, (0,): -1})
    assert eval_seminorm(x, f) == 1
    assert eval_seminorm(x, SemigroupPolynomial()) is INF
    assert eval_seminorm(u2, SemigroupPolynomial()) is INF


def test_pullbacks():
    f = P({(0,): 2, (1,): 1})
    pi, mu = torus_pullbacks(f)
    assert pi == TensorPolynomial.from_dict({((0,), (0,)): 2, ((0,), (1,)): 1})
    assert mu == TensorPolynomial.from_dict({((0,), (0,)): 2, ((1,), (1,)): 1})
    chi = SemigroupPolynomial.monomial((1, 2))
    assert torus_pullbacks(chi) == (TensorPolynomial.from_dict({((0, 0), (1, 2)): 1}),
                                    TensorPolynomial.from_dict({((1, 2), (1, 2)): 1}))
    assert torus_pullbacks(SemigroupPolynomial()) == (TensorPolynomial(), TensorPolynomial())


def test_tensor_evaluation_examples():
    a1 = corpus_fan("A1")
    x = torus_point(a1, [t + t**3])
    assert eval_tensor(x, TensorPolynomial.from_dict({((1,), (1,)): 1})) == 1
    y = torus_point(a1, [1 + t])
    pi, mu = torus_pullbacks(P({(1,): 1, (0,): -1}))
    assert eval_tensor(y, pi) == 1
    assert eval_tensor(y, mu) == 0
    assert eval_tensor(TensorPoint(y), mu) == 0


def test_torus_action_examples():
    a1 = corpus_fan("A1")
    x = torus_point(a1, [t])
    one = torus_point(a1, [1])
    assert act(one, x) == x
    g = torus_point(a1, [1 + t])
    assert act(g, x).coords == (t * (1 + t),)
    assert is_affinoid_unit(g)
    assert trop(act(g, x)) == trop(x)
    h = torus_point(a1, [t])
    assert not is_affinoid_unit(h)
    assert act(h, x).coords == (t**2,)
    assert trop(act(h, x)).rep == (2,)


def test_action_on_boundary_orbits_uses_the_orbit_lattice():
    a2 = corpus_fan("A2")
    y = k_point(a2, cone((1, 0)), [3 + t])
    g = torus_point(a2, [t, 1 - t])
    assert act(g, y).coords == ((3 + t) * (1 - t),)


def test_random_units_have_valuation_zero():
    rng = random.Random(0)
    p2 = corpus_fan("P2")
    for _ in range(50):
        assert val(random_unit(rng)) == 0
        assert is_affinoid_unit(random_unit_word(p2, rng))


def test_coordinates_must_be_nonzero():
    with pytest.raises(ValueError):
        torus_point(corpus_fan("A1"), [0])


from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

coeffs = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


def laurent(cs, shift):
    out = K.zero
    for i, c in enumerate(cs):
        out += c * t ** (i + shift) if i + shift >= 0 else c / t ** -(i + shift)
    return out


@settings(max_examples=80, deadline=None)
@given(coeffs, st.integers(-3, 3), coeffs, st.integers(-3, 3))
def test_valuation_is_a_valuation(a, i, b, j):
    x, y = laurent(a, i), laurent(b, j)
    vx, vy = val(x), val(y)
    assert val(x * y) == (INF if INF in (vx, vy) else vx + vy)
    assert val(x + y) >= min(vx, vy)
    if x:
        assert val(1 / x) == -vx
