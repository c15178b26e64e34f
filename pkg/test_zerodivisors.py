#!/usr/bin/env python3
"""
Zero-divisors, Property (A), primal semirings and the zd degree
"""

import pytest

from app.algebra.catalog import chain_C, lagrassa, nil_chain, product_semiring, small_catalog
from app.algebra.zerodivisors import (
    ass_primes,
    is_primal,
    poly_transfer_check,
    prime_covers,
    property_A,
    very_few_zero_divisors,
    zd_degree,
    zd_degree_check,
    zero_divisor_profile,
    zero_divisors,
)
from app.models.schemas import VerdictStatus
from app.utils.error_handler import CapExceeded, NotWeakGaussian

CATALOG = small_catalog(4)


def nil_chain_power(n):
    return product_semiring([nil_chain(3)] * n)


def test_zero_divisor_sets():
    print("\n1️⃣ Zero-divisors and associated primes...")
    T = nil_chain(4)
    assert T.labels(zero_divisors(T)) == ["0", "a", "b"]
    assert [p.labels() for p in ass_primes(T)] == [["0", "a", "b"]]
    C = chain_C()
    assert C.labels(zero_divisors(C)) == ["0"]
    print("   ✅ Z(nil_chain(4)) = {0,a,b}")


def test_finite_members_have_very_few_zero_divisors():
    for name, S in CATALOG.items():
        assert very_few_zero_divisors(S), name
        assert property_A(S).holds, name


def test_property_A_cap():
    with pytest.raises(CapExceeded):
        property_A(nil_chain(4), cap=2)


def test_primal():
    assert is_primal(nil_chain(3))
    assert is_primal(chain_C())
    assert not is_primal(nil_chain_power(2))


def test_zd_degree_of_products():
    print("\n2️⃣ zd degree of nil_chain(3)^n...")
    for n in (1, 2, 3):
        S = nil_chain_power(n)
        assert zd_degree(S, lattice_cap=max(12, S.size)) == n
    assert len(prime_covers(nil_chain_power(2))) == 1
    assert zd_degree(chain_C()) == 1
    print("   ✅ zd = n for n = 1, 2, 3")


def test_zd_degree_needs_weak_gaussian():
    with pytest.raises(NotWeakGaussian):
        zd_degree(lagrassa())
    assert zd_degree_check(lagrassa()).status == VerdictStatus.SKIPPED
    check = zd_degree_check(nil_chain(3))
    assert check.holds and check.witness["zd_degree"] == 1


def test_profile():
    profile = zero_divisor_profile(nil_chain(4))
    assert profile.zset == ["0", "a", "b"]
    assert profile.primal and profile.very_few and profile.few
    assert profile.property_A.holds
    assert profile.zd_degree == 1 and profile.cover_unique


def test_transfer_to_polynomials():
    print("\n3️⃣ Zero-divisors of S[X]...")
    primal = poly_transfer_check(nil_chain(3), 2)
    assert primal.holds and primal.witness["zd_degree"] == 1
    pair = poly_transfer_check(nil_chain_power(2), 2)
    assert pair.holds and pair.witness["zd_degree"] == 2
    triple = nil_chain_power(3)
    assert poly_transfer_check(triple, 1, lattice_cap=triple.size).witness["zd_degree"] == 3
    print(f"   ✅ {pair.detail}")


def test_transfer_skips_non_subtractive():
    assert poly_transfer_check(nil_chain(4), 2).status == VerdictStatus.SKIPPED


def main():
    print("🧪 Testing zero-divisors...")
    print("=" * 60)
    test_zero_divisor_sets()
    test_finite_members_have_very_few_zero_divisors()
    test_property_A_cap()
    test_primal()
    test_zd_degree_of_products()
    test_zd_degree_needs_weak_gaussian()
    test_profile()
    test_transfer_to_polynomials()
    test_transfer_skips_non_subtractive()
    print("\n" + "=" * 60)
    print("🎉 Zero-divisor tests passed")


if __name__ == "__main__":
    main()
