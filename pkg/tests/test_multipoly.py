import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from findyn.errors import ArityMismatch, IncompleteTable, ParseError, WrongCharacteristic
from findyn.multipoly import (
    And,
    Const,
    MPoly,
    Not,
    Or,
    Var,
    Xor,
    all_points,
    bool_to_poly,
    format_mpoly,
    mp_eval,
    mp_eval_many,
    mp_interpolate,
    mp_reduce,
    mp_support,
    mp_table,
    parse_bool,
    parse_poly,
)

from conftest import brute_states


def test_eval_examples():
    f2 = parse_poly("x1 + x2", 2, 4)
    assert mp_eval(f2, (1, 0, 0, 0)) == 1
    assert mp_eval(parse_poly("x1 + x2 + x3 + x4", 2, 4), (1, 1, 0, 0)) == 0
    assert mp_eval(parse_poly("x1*x2", 3, 2), (2, 2)) == 1


def test_eval_arity():
    with pytest.raises(ArityMismatch):
        mp_eval(parse_poly("x1", 2, 2), (1,))


def test_reduce_examples():
    assert mp_reduce(2, 1, [((2,), 1)]) == {(1,): 1}
    assert mp_reduce(3, 1, [((3,), 1)]) == {(1,): 1}
    assert mp_reduce(2, 1, [((2,), 1), ((1,), 1)]) == {}
    assert mp_reduce(5, 1, [((9,), 1)]) == {(1,): 1}
    assert mp_reduce(5, 1, [((4,), 1)]) == {(4,): 1}


def test_interpolate_examples():
    AND = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1}
    OR = {(0, 0): 0, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert mp_interpolate(2, 2, AND) == parse_poly("x1*x2", 2, 2)
    assert mp_interpolate(2, 2, OR) == parse_poly("x1 + x2 + x1*x2", 2, 2)
    assert mp_interpolate(3, 2, [0] * 9).is_zero()


def test_interpolate_incomplete():
    with pytest.raises(IncompleteTable):
        mp_interpolate(2, 2, {(0, 0): 1})
    with pytest.raises(IncompleteTable):
        mp_interpolate(2, 2, [0, 1, 1])


def test_bool_examples():
    assert bool_to_poly(Not(Var(1)), 1) == parse_poly("x1 + 1", 2, 1)
    assert bool_to_poly(Or(Var(1), Var(2)), 2) == parse_poly("x1 + x2 + x1*x2", 2, 2)
    assert bool_to_poly(Xor(Var(1), Var(1)), 1).is_zero()
    with pytest.raises(WrongCharacteristic):
        bool_to_poly(Var(1), 1, p=3)


def test_support_examples():
    assert mp_support(parse_poly("x1 + x2", 2, 4)) == {1, 2}
    assert mp_support(MPoly.const(2, 3, 1)) == frozenset()
    assert mp_support(parse_poly("x1 + x1", 2, 2)) == frozenset()


def test_point_order_is_little_endian():
    assert list(all_points(2, 2)) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert list(all_points(3, 2)) == brute_states(3, 2)


def test_printing():
    assert format_mpoly(parse_poly("1 + x2 + x1 + x1*x2", 2, 2)) == "x1*x2 + x1 + x2 + 1"
    assert format_mpoly(parse_poly("2*x3*x1^2", 3, 3)) == "2*x1^2*x3"
    assert format_mpoly(MPoly.zero(2, 2)) == "0"


def test_parse_errors():
    for bad in ["x1 +", "x5", "x1 ** 2", "(x1", "y"]:
        with pytest.raises(ParseError):
            parse_poly(bad, 2, 2)
    with pytest.raises(ParseError):
        parse_bool("x1 &", 2)


def test_parse_bool_precedence():
    # ! binds tighter than &, then ^, then |
    e = parse_bool("!x1 & x2 | x1 ^ x2", 2)
    for a, b in itertools.product([0, 1], repeat=2):
        assert e((a, b)) == (((not a) and b) or (a != b))


# ---------------------------------------------------------------------------
# properties

tables = st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]).flatmap(
    lambda pn: st.tuples(
        st.just(pn[0]), st.just(pn[1]), st.lists(st.integers(0, pn[0] - 1), min_size=pn[0] ** pn[1], max_size=pn[0] ** pn[1])
    )
)


@given(tables)
def test_interpolation_roundtrip(t):
    p, n, values = t
    f = mp_interpolate(p, n, values)
    for c, v in zip(brute_states(p, n), values):
        assert mp_eval(f, c) == v


@given(tables)
def test_interpolation_uniqueness(t):
    p, n, values = t
    f = mp_interpolate(p, n, values)
    g = mp_interpolate(p, n, {c: mp_eval(f, c) for c in brute_states(p, n)})
    assert g.terms == f.terms


@given(tables)
def test_axis_method_agrees_with_sum(t):
    p, n, values = t
    assert mp_interpolate(p, n, values, "axis") == mp_interpolate(p, n, values, "sum")


def bool_exprs(n):
    leaves = st.one_of(st.builds(Var, st.integers(1, n)), st.builds(Const, st.booleans()))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(Not, kids), st.builds(And, kids, kids), st.builds(Or, kids, kids), st.builds(Xor, kids, kids)
        ),
        max_leaves=8,
    )


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), bool_exprs(n))))
def test_bool_to_poly_agrees_with_direct_evaluation(t):
    n, expr = t
    f = bool_to_poly(expr, n)
    for c in brute_states(2, n):
        assert mp_eval(f, c) == int(bool(expr(c)))


@given(tables)
def test_support_soundness(t):
    p, n, values = t
    f = mp_interpolate(p, n, values)
    supp = mp_support(f)
    table = dict(zip(brute_states(p, n), values))
    for i in range(1, n + 1):
        depends = any(
            table[c] != table[c[: i - 1] + (v,) + c[i:]] for c in table for v in range(p)
        )
        assert depends == (i in supp)


@given(tables)
def test_eval_many_matches_eval(t):
    p, n, values = t
    f = mp_interpolate(p, n, values)
    states = np.array(brute_states(p, n))
    assert mp_eval_many(f, states).tolist() == [mp_eval(f, c) for c in brute_states(p, n)]
    assert mp_table(f).tolist() == list(values)


@given(tables, tables)
def test_arithmetic_is_pointwise(t1, t2):
    p, n, v1 = t1
    if (t2[0], t2[1]) != (p, n):
        return
    f, g = mp_interpolate(p, n, v1), mp_interpolate(p, n, t2[2])
    for c in brute_states(p, n):
        assert (f + g)(*c) == (f(*c) + g(*c)) % p
        assert (f * g)(*c) == f(*c) * g(*c) % p
        assert (f - g)(*c) == (f(*c) - g(*c)) % p


@given(tables)
def test_print_parse_roundtrip(t):
    p, n, values = t
    f = mp_interpolate(p, n, values)
    assert parse_poly(format_mpoly(f), p, n) == f
