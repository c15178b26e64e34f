#!/usr/bin/env python3
"""
Ideal lattice, subtractivity, primes and radicals
"""

import pytest
from hypothesis import given, settings, strategies as st

from app.algebra.catalog import (
    b_n_i,
    chain_C,
    idempotent_monoid_ext,
    lagrassa,
    nil_chain,
    small_catalog,
    truncation,
)
from app.algebra.ideals import (
    annihilator,
    enumerate_ideals,
    ideal_generated,
    ideal_product,
    ideal_sum,
    is_local,
    is_prime,
    is_subtractive,
    is_subtractive_semiring,
    lattice_summary,
    max_ideals,
    min_primes_intersection,
    nil_index,
    nil_radical,
    prime_avoidance_check,
    radical,
    radical_via_primes,
    spec,
)
from app.utils.error_handler import BadParams, CapExceeded

CATALOG = small_catalog(4)


def test_ideal_generation():
    print("\n1️⃣ Ideals generated by elements...")
    assert ideal_generated(lagrassa(), ["u"]).labels() == ["0", "u"]
    assert ideal_generated(nil_chain(4), ["a", "b"]).labels() == ["0", "a", "b"]
    assert ideal_generated(nil_chain(4), ["1"]).is_whole()
    print("   ✅ (u) = {0,u}, (a,b) = {0,a,b}")


def test_ideal_arithmetic():
    T = nil_chain(4)
    m = ideal_generated(T, ["a", "b"])
    assert ideal_product(m, m).is_zero()
    assert ideal_sum(ideal_generated(T, ["a"]), ideal_generated(T, ["b"])) == m
    assert annihilator(T, ["a"]).labels() == ["0", "a", "b"]


def test_subtractive_semirings():
    print("\n2️⃣ Subtractive semirings...")
    assert is_subtractive_semiring(chain_C()).holds
    assert is_subtractive_semiring(b_n_i(3, 1)).holds
    verdict = is_subtractive_semiring(nil_chain(4))
    assert not verdict.holds
    assert verdict.witness is not None
    print(f"   ✅ nil_chain(4) witness: {verdict.witness}")


def test_b_n_i_prime_not_subtractive():
    S = b_n_i(4, 2)
    P = ideal_generated(S, ["2", "3"])
    assert P.labels() == ["0", "2", "3"]
    assert is_prime(S, P)
    assert not is_subtractive(S, P).holds


def test_chain_C_lattice():
    summary = lattice_summary(chain_C())
    assert summary.ideal_count == 3
    assert sorted(summary.ideals, key=len) == [["0"], ["0", "u"], ["0", "1", "u"]]


def test_unique_prime_of_monoid_extension():
    S = idempotent_monoid_ext(
        {"elements": ["0", "p", "q"], "add": [[0, 1, 2], [1, 1, 2], [2, 2, 2]], "zero": 0}
    )
    assert [p.labels() for p in spec(S)] == [["0", "p", "q"]]


def test_radicals():
    print("\n3️⃣ Radicals...")
    K = truncation(3)
    rad = radical(K, ideal_generated(K, ["1"]))
    assert rad.labels() == ["-inf", "1", "2", "3"]
    assert not is_subtractive(K, rad).holds
    L = lagrassa()
    assert radical(L, ["0", "u"]).labels() == ["0", "u"]
    print(f"   ✅ sqrt(1) in T_3 = {rad!r}")


def test_nil_radical_and_index():
    T = nil_chain(4)
    assert nil_radical(T).labels() == ["0", "a", "b"]
    assert nil_index(T) == 2
    assert nil_index(chain_C()) == 1


def test_locality():
    assert is_local(nil_chain(4))
    assert [m.labels() for m in max_ideals(nil_chain(4))] == [["0", "a", "b"]]


def test_not_an_ideal_is_rejected():
    with pytest.raises(BadParams):
        is_prime(lagrassa(), ["0", "1"])


def test_lattice_cap():
    with pytest.raises(CapExceeded):
        enumerate_ideals(truncation(3), lattice_cap=4)


def test_prime_avoidance():
    for name, S in CATALOG.items():
        assert prime_avoidance_check(S).holds, name


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_radical_is_intersection_of_primes(name, data):
    S = CATALOG[name]
    ideals = list(enumerate_ideals(S))
    I = data.draw(st.sampled_from(ideals))
    assert radical(S, I) == radical_via_primes(S, I)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(CATALOG)))
def test_nil_radical_is_intersection_of_min_primes(name):
    S = CATALOG[name]
    assert nil_radical(S) == min_primes_intersection(S)


def main():
    print("🧪 Testing ideal theory...")
    print("=" * 60)
    test_ideal_generation()
    test_ideal_arithmetic()
    test_subtractive_semirings()
    test_b_n_i_prime_not_subtractive()
    test_chain_C_lattice()
    test_unique_prime_of_monoid_extension()
    test_radicals()
    test_nil_radical_and_index()
    test_locality()
    test_not_an_ideal_is_rejected()
    test_lattice_cap()
    test_prime_avoidance()
    test_radical_is_intersection_of_primes()
    test_nil_radical_is_intersection_of_min_primes()
    print("\n" + "=" * 60)
    print("🎉 Ideal theory tests passed")


if __name__ == "__main__":
    main()
