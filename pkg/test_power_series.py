#!/usr/bin/env python3
"""
Truncated power series: arithmetic, content, prime extension and nilpotency
"""

import pytest
from hypothesis import given, settings, strategies as st

from app.algebra.catalog import chain_C, lagrassa, nil_chain, small_catalog
from app.algebra.gaussian import is_weak_gaussian
from app.algebra.ideals import spec
from app.algebra.polynomials import Polynomial
from app.algebra.power_series import (
    TruncatedSeries,
    ps_mul,
    ps_prime_extension_check,
    series_content,
    series_content_check,
    series_nil_check,
)
from app.models.schemas import VerdictStatus
from app.utils.error_handler import BadParams, InputParseError, MixedOrders, MixedSemirings

CATALOG = small_catalog(4)


def test_products_in_nil_chain_vanish():
    print("\n1️⃣ Truncated products...")
    T = nil_chain(4)
    f = TruncatedSeries.from_coefficients(T, ["a", "a"], 3)
    g = TruncatedSeries.from_coefficients(T, ["b", "b"], 3)
    assert ps_mul(f, g).is_zero()
    print("   ✅ (a + aX)(b + bX) = 0")


def test_square_in_chain_C():
    C = chain_C()
    f = TruncatedSeries.from_coefficients(C, ["1", "u"], 2)
    assert f ** 2 == f
    assert str(f ** 2) == "1 + u*X + O(X^2)"


def test_truncation_drops_high_terms():
    S = lagrassa()
    f = TruncatedSeries.from_coefficients(S, ["1", "u", "u", "1"], 2)
    assert f.to_polynomial() == Polynomial.from_coefficients(S, ["1", "u"])
    assert series_content(f).is_whole()


def test_operand_checks():
    T = nil_chain(4)
    with pytest.raises(MixedOrders):
        TruncatedSeries.one(T, 3) * TruncatedSeries.one(T, 4)
    with pytest.raises(MixedSemirings):
        TruncatedSeries.one(T, 3) + TruncatedSeries.one(chain_C(), 3)
    with pytest.raises(BadParams):
        TruncatedSeries(T, 0, {})
    with pytest.raises(InputParseError):
        TruncatedSeries.from_json(T, {"terms": []})


def test_json_carries_order():
    T = nil_chain(4)
    f = TruncatedSeries.from_coefficients(T, ["b", "a"], 5)
    again = TruncatedSeries.from_json(T, f.to_json())
    assert again == f and again.order == 5


def test_series_content_check_examples():
    print("\n2️⃣ Series content against prime subtractivity...")
    lag = series_content_check(lagrassa(), 6, 2)
    assert not lag.sweep.holds and lag.agrees
    assert lag.probes[0]["holds"]
    assert lag.probes[1]["escapes"]
    nil = series_content_check(nil_chain(4), 6, 2)
    assert nil.sweep.holds and nil.agrees
    print(f"   ✅ LaGrassa witness: {lag.sweep.witness['f']} / {lag.sweep.witness['g']}")


def test_series_content_agrees_on_catalog():
    for name, S in CATALOG.items():
        report = series_content_check(S, 6, 2)
        assert report.agrees, name
        assert report.structural.holds == is_weak_gaussian(S).holds


def test_series_prime_extension():
    for name, S in CATALOG.items():
        for P in spec(S):
            assert ps_prime_extension_check(S, P, 6, 2).agrees, (name, P)


def test_support_degree_guard():
    with pytest.raises(BadParams):
        series_content_check(chain_C(), 3, 2)
    with pytest.raises(BadParams):
        series_nil_check(chain_C(), 6, 0)


def test_series_nil_check():
    verdict = series_nil_check(nil_chain(3), 6, 2)
    assert verdict.holds and verdict.status == VerdictStatus.BOUNDED
    assert series_nil_check(nil_chain(4), 6, 2).holds


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_series_product_matches_polynomial_product(name, data):
    S = CATALOG[name]
    coeffs = st.lists(st.integers(0, S.size - 1), min_size=1, max_size=3)
    f = Polynomial.from_coefficients(S, data.draw(coeffs))
    g = Polynomial.from_coefficients(S, data.draw(coeffs))
    order = data.draw(st.integers(1, 6))
    truncated = TruncatedSeries.from_polynomial(f * g, order)
    assert TruncatedSeries.from_polynomial(f, order) * TruncatedSeries.from_polynomial(g, order) == truncated


def main():
    print("🧪 Testing power series...")
    print("=" * 60)
    test_products_in_nil_chain_vanish()
    test_square_in_chain_C()
    test_truncation_drops_high_terms()
    test_operand_checks()
    test_json_carries_order()
    test_series_content_check_examples()
    test_series_content_agrees_on_catalog()
    test_series_prime_extension()
    test_support_degree_guard()
    test_series_nil_check()
    test_series_product_matches_polynomial_product()
    print("\n" + "=" * 60)
    print("🎉 Power series tests passed")


if __name__ == "__main__":
    main()
