import itertools
import random

import pytest
from hypothesis import given, strategies as st

from findyn.errors import (
    ConstantPolynomial,
    DivisionByZero,
    InvalidModulus,
    ModulusMismatch,
    NotCoprimeToX,
    ZeroPolynomial,
)
from findyn.gf import (
    FieldElement,
    UPoly,
    field_ops,
    is_irreducible,
    parse_upoly,
    upoly_divmod,
    upoly_factor,
    upoly_gcd,
    upoly_order,
)


def P(text, p=2):
    return parse_upoly(text, p)


# ---------------------------------------------------------------------------
# oracles


def monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield UPoly(p, list(tail) + [1])


def trial_division_factor(f):
    """Factor by dividing out monic polynomials of increasing degree."""
    out = {}
    f = f.monic()
    d = 1
    while f.degree > 0:
        if 2 * d > f.degree:
            out[f] = out.get(f, 0) + 1
            break
        found = False
        for g in monic_polys(f.p, d):
            q, r = upoly_divmod(f, g)
            if r.is_zero():
                out[g] = out.get(g, 0) + 1
                f = q
                found = True
                break
        if not found:
            d += 1
    return out


def order_by_search(f):
    """Smallest s >= 1 with x^s = 1 mod f."""
    one = UPoly.const(f.p, 1)
    xp = UPoly.x(f.p) % f
    cur = xp
    for s in range(1, f.p ** f.degree):
        if cur == one % f:
            return s
        cur = (cur * xp) % f
    raise AssertionError("no order found")


upolys = st.builds(
    lambda p, cs: UPoly(p, cs),
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(0, 12), min_size=1, max_size=13),
)


# ---------------------------------------------------------------------------
# field elements


def test_field_examples():
    assert field_ops(FieldElement(3, 5), FieldElement(4, 5), "add") == FieldElement(2, 5)
    assert FieldElement(3, 7).inverse() == FieldElement(5, 7)
    assert FieldElement(1, 2) + 1 == FieldElement(0, 2)
    assert field_ops(FieldElement(2, 7), FieldElement(3, 7), "div") * 3 == FieldElement(2, 7)
    assert field_ops(FieldElement(3, 7), 6, "pow") == FieldElement(1, 7)


def test_field_errors():
    with pytest.raises(DivisionByZero):
        FieldElement(1, 5) / FieldElement(0, 5)
    with pytest.raises(ModulusMismatch):
        FieldElement(1, 5) + FieldElement(1, 7)
    with pytest.raises(InvalidModulus):
        FieldElement(1, 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    els = [FieldElement(v, p) for v in range(p)]
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
    for a in els[1:]:
        assert a * a.inverse() == FieldElement(1, p)


# ---------------------------------------------------------------------------
# division


def test_divmod_examples():
    assert upoly_divmod(P("x^2 + x"), P("x + 1")) == (P("x"), UPoly(2))
    assert upoly_divmod(P("x^3 + 1"), P("x + 1")) == (P("x^2 + x + 1"), UPoly(2))
    assert upoly_divmod(P("x", 3), P("x", 3)) == (UPoly.const(3, 1), UPoly(3))


def test_divmod_by_zero():
    with pytest.raises(DivisionByZero):
        upoly_divmod(P("x"), UPoly(2))


@given(upolys, st.lists(st.integers(0, 12), min_size=1, max_size=6))
def test_divmod_reconstruction(a, bc):
    b = UPoly(a.p, bc)
    if b.is_zero():
        return
    q, r = upoly_divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_canonical_coefficients():
    f = UPoly(3, [1, 2, 0, 0])
    assert f.coeffs == (1, 2) and f.degree == 1
    assert UPoly(2, [0, 0]).degree == -1


def test_gcd_monic():
    g = upoly_gcd(P("x^2 + 1", 3) * P("x + 2", 3), P("x + 2", 3) * P("x", 3) * 2)
    assert g == P("x + 2", 3)


# ---------------------------------------------------------------------------
# factorization


def as_dict(factors):
    return {f: e for f, e in factors}


def test_factor_examples():
    assert as_dict(upoly_factor(P("x^4 + x"))) == {P("x"): 1, P("x + 1"): 1, P("x^2 + x + 1"): 1}
    assert upoly_factor(P("x^2")) == [(P("x"), 2)]
    assert upoly_factor(P("x^2 + x + 1")) == [(P("x^2 + x + 1"), 1)]


def test_factor_zero():
    with pytest.raises(ZeroPolynomial):
        upoly_factor(UPoly(2))


def test_factor_matches_trial_division_oracle():
    rng = random.Random(11)
    for _ in range(150):
        p = rng.choice([2, 3, 5])
        f = UPoly(p, [rng.randrange(p) for _ in range(rng.randint(1, 9))] + [1])
        assert as_dict(upoly_factor(f)) == trial_division_factor(f)


@given(upolys)
def test_factor_product_reproduces_monic_input(a):
    if a.degree < 1:
        return
    prod = UPoly.const(a.p, 1)
    for g, e in upoly_factor(a):
        assert is_irreducible(g) and g.lead == 1
        prod = prod * g**e
    assert prod == a.monic()


def test_factor_is_deterministic_and_sorted():
    f = P("x^6 + x^5 + x^3 + x^2 + x + 1")
    fs = upoly_factor(f)
    assert fs == upoly_factor(f)
    assert [g for g, _ in fs] == sorted(g for g, _ in fs)


@pytest.mark.parametrize("p", [7, 13])
def test_factor_larger_fields(p):
    rng = random.Random(p)
    for _ in range(20):
        f = UPoly(p, [rng.randrange(p) for _ in range(rng.randint(2, 16))] + [1])
        prod = UPoly.const(p, 1)
        for g, e in upoly_factor(f):
            prod = prod * g**e
        assert prod == f


# ---------------------------------------------------------------------------
# order


def test_order_examples():
    assert upoly_order(P("x + 1")) == 1
    assert upoly_order(P("x^2 + x + 1")) == 3
    assert upoly_order(P("x^2 + 1")) == 2


def test_order_errors():
    with pytest.raises(NotCoprimeToX):
        upoly_order(P("x^2 + x"))
    with pytest.raises(ConstantPolynomial):
        upoly_order(UPoly.const(2, 1))
    with pytest.raises(ZeroPolynomial):
        upoly_order(UPoly(2))


def test_order_matches_incremental_search():
    rng = random.Random(5)
    checked = 0
    while checked < 120:
        p = rng.choice([2, 3, 5])
        deg = rng.randint(1, 8 if p == 2 else 5)
        f = UPoly(p, [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(deg - 1)] + [1])
        assert upoly_order(f) == order_by_search(f), str(f)
        checked += 1


def test_primitive_polynomial_orders():
    # x^4 + x + 1 is primitive over GF(2); x^4 + x^3 + x^2 + x + 1 divides x^5 - 1
    assert upoly_order(P("x^4 + x + 1")) == 15
    assert upoly_order(P("x^4 + x^3 + x^2 + x + 1")) == 5


def test_parse_and_print_roundtrip():
    for text in ["x^3 + 2*x + 1", "x", "2", "0"]:
        assert str(parse_upoly(text, 3)) == text
