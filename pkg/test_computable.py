#!/usr/bin/env python3
"""
Computable tier: tropical, arctic, N0 and B[X] spot checks
"""

from app.algebra.computable import (
    INF,
    TropicalIdeal,
    TropicalPolynomial,
    TropicalSemiring,
    arctic_poly_mul,
    arctic_spot_check,
    boolean_polynomials_spot_check,
    naturals_spot_check,
    tropical_gaussian_check,
    tropical_spot_check,
)
from app.models.schemas import VerdictStatus


def test_tropical_arithmetic():
    print("\n1️⃣ Tropical semiring...")
    f = TropicalPolynomial.from_list([3, INF, 1])
    g = TropicalPolynomial.from_list([2, 5])
    fg = f * g
    assert fg.coeffs == {0: 5, 1: 8, 2: 3, 3: 6}
    assert fg.content() == TropicalIdeal(3)
    assert tropical_gaussian_check(f, g)
    assert str(g) == "2 (+) 5.X^1"
    assert TropicalPolynomial.from_list([INF]).is_zero()
    print(f"   ✅ ({f})({g}) = {fg}")


def test_tropical_interval_law():
    assert TropicalSemiring.in_ideal(7, [4, 9])
    assert not TropicalSemiring.in_ideal(3, [4, 9])
    assert TropicalSemiring.in_ideal(INF, [])
    assert TropicalSemiring.brute_force_member(7, [4, 9], carrier=5)
    assert 5 in TropicalIdeal(4) and 3 not in TropicalIdeal(4)
    assert (TropicalIdeal(2) * TropicalIdeal(3)).lower == 5


def test_tropical_spot_check():
    verdict = tropical_spot_check(pairs=200, carrier=8, seed=7)
    assert verdict.holds and verdict.status == VerdictStatus.SAMPLED


def test_arctic():
    print("\n2️⃣ Arctic semiring, N0 and B[X]...")
    assert arctic_poly_mul([1, 0], [0, 1]) == [1, 2, 1]
    verdict = arctic_spot_check()
    assert verdict.holds
    assert verdict.witness["c(f)c(g)"] == "[0, inf)"


def test_naturals():
    verdict = naturals_spot_check()
    assert verdict.holds
    assert verdict.witness["fg"] == "2*X^0 + 7*X^1 + 3*X^2"


def test_boolean_polynomials():
    verdict = boolean_polynomials_spot_check(2)
    assert verdict.holds and verdict.bound == 2
    print(f"   ✅ {verdict.detail}")


def main():
    print("🧪 Testing the computable tier...")
    print("=" * 60)
    test_tropical_arithmetic()
    test_tropical_interval_law()
    test_tropical_spot_check()
    test_arctic()
    test_naturals()
    test_boolean_polynomials()
    print("\n" + "=" * 60)
    print("🎉 Computable tier tests passed")


if __name__ == "__main__":
    main()
