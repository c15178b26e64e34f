#!/usr/bin/env python3
"""
Polynomials over finite semirings, content and the Dedekind-Mertens exponent
"""

import pytest
from hypothesis import given, settings, strategies as st

from app.algebra.catalog import chain_C, lagrassa, nil_chain, small_catalog
from app.algebra.ideals import ideal_scale, is_subtractive_semiring, product_mask, sum_mask
from app.algebra.polynomials import Polynomial, content, dm_exponent, parse_polynomial, star_map
from app.utils.error_handler import BadParams, FoldTooSmall, InputParseError, MixedSemirings

CATALOG = small_catalog(4)
SUBTRACTIVE = sorted(name for name, S in CATALOG.items() if is_subtractive_semiring(S).holds)


def polynomials(S, max_degree=3):
    """Dense polynomials in X with coefficients drawn from S"""
    return st.lists(st.integers(0, S.size - 1), min_size=1, max_size=max_degree + 1).map(
        lambda coeffs: Polynomial.from_coefficients(S, coeffs)
    )


def test_lagrassa_product():
    print("\n1️⃣ Products over the LaGrassa semiring...")
    S = lagrassa()
    f = parse_polynomial(S, "1 + u*X")
    g = parse_polynomial(S, "u + X")
    fg = f * g
    assert str(fg) == "u + u*X + u*X^2"
    assert content(fg).labels() == ["0", "u"]
    assert content(f).is_whole()
    print(f"   ✅ ({f})({g}) = {fg}")


def test_nil_chain_product_and_content():
    S = nil_chain(4)
    f = Polynomial.from_coefficients(S, ["1", "1"])
    g = Polynomial.from_coefficients(S, ["b", "a", "b"])
    assert str(f * g) == "b + b*X + b*X^2 + b*X^3"
    assert content(g).labels() == ["0", "a", "b"]
    assert (f * g).degree() == 3
    assert Polynomial.zero(S).degree() is None


def test_dm_exponent_without_solution():
    print("\n2️⃣ Dedekind-Mertens exponent...")
    S = nil_chain(4)
    f = Polynomial.from_coefficients(S, ["1", "1"])
    g = Polynomial.from_coefficients(S, ["b", "a", "b"])
    report = dm_exponent(f, g, bound=10)
    assert report.exponent is None and not report.found
    assert report.lhs == ["0", "a", "b"]
    assert report.rhs == ["0", "b"]
    unbounded = dm_exponent(f, g)
    assert unbounded.exponent is None and unbounded.exhausted
    print(f"   ✅ no exponent: {report.lhs} vs {report.rhs}")


def test_monomial_has_exponent_zero():
    S = lagrassa()
    f = Polynomial.from_coefficients(S, ["0", "u"])
    g = Polynomial.from_coefficients(S, ["u", "1"])
    assert dm_exponent(f, g).exponent == 0


def test_parse_errors_and_bad_exponents():
    S = chain_C()
    with pytest.raises(InputParseError):
        parse_polynomial(S, "1 + 2*X")
    with pytest.raises(BadParams):
        Polynomial(S, {(-1,): "1"}, ("X",))
    laurent = Polynomial(S, {(-1,): "u", (1,): "1"}, ("X",), laurent=["X"])
    assert str(laurent * laurent) == "u + u*X^-2 + X^2"


def test_mixed_semirings():
    f = Polynomial.from_coefficients(chain_C(), ["1"])
    g = Polynomial.from_coefficients(lagrassa(), ["1"])
    with pytest.raises(MixedSemirings):
        f * g


def test_star_map():
    print("\n3️⃣ Folding two indeterminates into one...")
    C = chain_C()
    f = parse_polynomial(C, "1 + u*X + X*Y", ["X", "Y"])
    g = parse_polynomial(C, "u + Y + u*X^2*Y", ["X", "Y"])
    m = f.degree_in("X") + g.degree_in("X") + 1
    folded = star_map(f * g, "X", "Y", m)
    assert folded == star_map(f, "X", "Y", m) * star_map(g, "X", "Y", m)
    assert sorted(folded.support()) == sorted((f * g).support())
    with pytest.raises(FoldTooSmall):
        star_map(g, "X", "Y", 2)
    print(f"   ✅ m = {m}: (fg)* = {folded}")


def test_json_keeps_terms():
    S = nil_chain(4)
    g = Polynomial.from_coefficients(S, ["b", "a", "b"])
    assert Polynomial.from_json(S, g.to_json()) == g
    with pytest.raises(InputParseError):
        Polynomial.from_json(S, {"terms": [{"coeff": "a"}]})


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_content_of_product_lies_in_product_of_contents(name, data):
    S = CATALOG[name]
    f = data.draw(polynomials(S))
    g = data.draw(polynomials(S))
    cfg = content(f * g).members
    prod = product_mask(S, content(f).members, content(g).members)
    assert cfg & ~prod == 0


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_scaling_scales_content(name, data):
    S = CATALOG[name]
    f = data.draw(polynomials(S))
    s = data.draw(st.integers(0, S.size - 1))
    assert content(f.scale(s)) == ideal_scale(s, content(f))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_content_of_sum_lies_in_sum_of_contents(name, data):
    S = CATALOG[name]
    f = data.draw(polynomials(S))
    g = data.draw(polynomials(S))
    total = sum_mask(S, content(f).members, content(g).members)
    assert content(f + g).members & ~total == 0


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SUBTRACTIVE), st.data())
def test_unit_content_is_multiplicative_when_subtractive(name, data):
    S = CATALOG[name]
    f = data.draw(polynomials(S))
    g = data.draw(polynomials(S))
    both_whole = content(f).is_whole() and content(g).is_whole()
    assert content(f * g).is_whole() == both_whole


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SUBTRACTIVE), st.data())
def test_subtractive_semiring_has_dm_exponent_within_degree(name, data):
    S = CATALOG[name]
    f = data.draw(polynomials(S))
    g = data.draw(polynomials(S))
    report = dm_exponent(f, g)
    assert report.found
    assert report.exponent <= (g.degree() or 0)


def main():
    print("🧪 Testing polynomials...")
    print("=" * 60)
    test_lagrassa_product()
    test_nil_chain_product_and_content()
    test_dm_exponent_without_solution()
    test_monomial_has_exponent_zero()
    test_parse_errors_and_bad_exponents()
    test_mixed_semirings()
    test_star_map()
    test_json_keeps_terms()
    test_content_of_product_lies_in_product_of_contents()
    test_scaling_scales_content()
    test_content_of_sum_lies_in_sum_of_contents()
    test_unit_content_is_multiplicative_when_subtractive()
    test_subtractive_semiring_has_dm_exponent_within_degree()
    print("\n" + "=" * 60)
    print("🎉 Polynomial tests passed")


if __name__ == "__main__":
    main()
