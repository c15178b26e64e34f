#!/usr/bin/env python3
"""
S[X] as a content S-semialgebra
"""

from app.algebra.catalog import chain_C, lagrassa, nil_chain, small_catalog
from app.algebra.content_semialgebra import (
    linearity_axiom,
    membership_axiom,
    min_prime_correspondence,
    reduced_transfer_check,
    verify_content_semialgebra,
)
from app.algebra.ideals import is_subtractive_semiring
from app.algebra.sweeps import SweepOptions
from app.models.schemas import VerdictStatus

CATALOG = small_catalog(4)


def test_axioms_on_chain_C():
    print("\n1️⃣ Content semialgebra axioms over chain_C...")
    verdict = verify_content_semialgebra(chain_C(), 3)
    assert verdict.axiom1.holds and verdict.axiom2.holds and verdict.axiom3.holds
    assert verdict.overall
    print(f"   ✅ {verdict.axiom3.detail}")


def test_nil_chain_fails_dedekind_mertens():
    verdict = verify_content_semialgebra(nil_chain(4), 2)
    assert verdict.axiom1.holds and verdict.axiom2.holds
    assert not verdict.axiom3.holds
    assert verdict.axiom3.witness is not None
    assert not verdict.overall
    assert verdict.min_prime_bijection.status == VerdictStatus.SKIPPED


def test_overall_matches_subtractivity():
    print("\n2️⃣ Catalog members...")
    for name, S in CATALOG.items():
        verdict = verify_content_semialgebra(S, 2)
        assert verdict.overall == is_subtractive_semiring(S).holds, name
    print(f"   ✅ {len(CATALOG)} members")


def test_membership_and_linearity_always_hold():
    S = lagrassa()
    assert membership_axiom(S, 2).holds
    assert linearity_axiom(S, 2).holds


def test_min_prime_correspondence():
    check = min_prime_correspondence(nil_chain(3), 2)
    assert check.holds and check.status == VerdictStatus.THEOREM_BACKED
    assert check.witness["min_primes"] == [["0", "a"]]
    assert min_prime_correspondence(nil_chain(4), 2).status == VerdictStatus.SKIPPED


def test_reduced_transfer():
    print("\n3️⃣ Reducedness of S[X]...")
    nil = reduced_transfer_check(nil_chain(3), 2)
    assert nil.holds and nil.status == VerdictStatus.BOUNDED
    assert nil.witness["k"] == 2
    reduced = reduced_transfer_check(chain_C(), 2)
    assert reduced.holds and reduced.witness is None
    assert reduced_transfer_check(nil_chain(4), 2).status == VerdictStatus.ADVISORY
    print(f"   ✅ nilpotent witness: {nil.witness['f']}")


def test_over_budget_axiom_is_skipped():
    verdict = verify_content_semialgebra(chain_C(), 3, options=SweepOptions(budget=10))
    assert verdict.axiom3.status == VerdictStatus.SKIPPED
    assert not verdict.overall


def main():
    print("🧪 Testing content semialgebras...")
    print("=" * 60)
    test_axioms_on_chain_C()
    test_nil_chain_fails_dedekind_mertens()
    test_overall_matches_subtractivity()
    test_membership_and_linearity_always_hold()
    test_min_prime_correspondence()
    test_reduced_transfer()
    test_over_budget_axiom_is_skipped()
    print("\n" + "=" * 60)
    print("🎉 Content semialgebra tests passed")


if __name__ == "__main__":
    main()
