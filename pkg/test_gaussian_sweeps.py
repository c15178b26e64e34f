#!/usr/bin/env python3
"""
Gaussian / weak Gaussian classification, Dedekind-Mertens equivalence,
prime extension, McCoy and Nil(S[X])
"""

import pytest

from app.algebra.catalog import (
    b_n_i,
    chain_C,
    chain_lattice,
    lagrassa,
    nil_chain,
    power_set_lattice,
    small_catalog,
    truncation,
)
from app.algebra.gaussian import (
    dm_probe,
    dm_semiring_equivalence,
    gaussian_certificates,
    gaussian_sufficient,
    gaussian_verdict,
    is_gaussian_up_to,
    is_weak_gaussian,
    mccoy_check,
    nil_extension_check,
    prime_extension_check,
    weak_gaussian_sweep,
)
from app.algebra.ideals import generate_mask, is_subtractive_semiring
from app.algebra.sweeps import SweepOptions
from app.models.schemas import GaussianCertificate, VerdictStatus
from app.utils.error_handler import BadParams, BudgetExceeded

CATALOG = small_catalog(4)


def test_lagrassa_is_not_gaussian():
    print("\n1️⃣ LaGrassa semiring...")
    S = lagrassa()
    verdict = is_gaussian_up_to(S, 2)
    assert not verdict.holds
    assert verdict.status == VerdictStatus.BOUNDED and verdict.bound == 2
    assert verdict.witness["c(f)c(g)"] == ["0", "1", "u"]
    assert gaussian_sufficient(S) == GaussianCertificate.NONE
    print(f"   ✅ witness: f = {verdict.witness['f']}, g = {verdict.witness['g']}")


def test_lagrassa_weak_gaussian_witness():
    weak = is_weak_gaussian(lagrassa())
    assert not weak.holds
    assert weak.witness["prime"] == ["0", "u"]
    assert {weak.witness["f"], weak.witness["g"]} == {"1 + u*X", "u + X"}
    assert weak.witness["fg"] == "u + u*X + u*X^2"
    assert weak.witness["escapes"]


def test_certificates():
    print("\n2️⃣ Gaussian certificates...")
    assert gaussian_sufficient(nil_chain(3)) == GaussianCertificate.LOCAL_NIL_MAX
    assert gaussian_sufficient(chain_lattice(4)) == GaussianCertificate.SUM_GENERATION
    assert gaussian_sufficient(chain_C()) == GaussianCertificate.SUM_GENERATION
    assert GaussianCertificate.BDL in gaussian_certificates(power_set_lattice(2))
    print("   ✅ LocalNilMax, SumGeneration, BDL")



def test_sum_generation_reads_distinct_pairs():
    for S in (chain_C(), b_n_i(3, 1)):
        one = S.index("1")
        doubled = int(S.add[one, one])
        assert generate_mask(S, 1 << one) != generate_mask(S, 1 << doubled)
        assert gaussian_sufficient(S) == GaussianCertificate.SUM_GENERATION
        assert is_gaussian_up_to(S, 2).holds

def test_certified_members_pass_the_sweep():
    assert is_gaussian_up_to(nil_chain(3), 3).holds
    assert is_gaussian_up_to(power_set_lattice(3), 2).holds


def test_gaussian_verdict_skips_over_budget():
    verdict = gaussian_verdict(chain_C(), degree=3, options=SweepOptions(budget=10))
    assert verdict.certificate == GaussianCertificate.SUM_GENERATION
    assert verdict.bounded.status == VerdictStatus.SKIPPED


def test_weak_gaussian_exact_verdicts():
    print("\n3️⃣ Weak Gaussian by prime subtractivity...")
    expected = {
        "nil_chain(4)": True,
        "b_n_i(4,2)": False,
        "b_n_i(3,1)": True,
        "chain_C": True,
    }
    for name, value in expected.items():
        assert is_weak_gaussian(CATALOG[name]).holds is value, name
    assert not is_weak_gaussian(truncation(3)).holds
    print("   ✅ exact verdicts match")


def test_weak_gaussian_routes_agree():
    for name, S in CATALOG.items():
        exact = is_weak_gaussian(S).holds
        assert weak_gaussian_sweep(S, 2).holds == exact, name


def test_weak_gaussian_in_more_indeterminates():
    C = chain_C()
    assert weak_gaussian_sweep(C, 1, variables=("X", "Y")).holds
    assert weak_gaussian_sweep(C, 2, laurent=("X",)).holds
    assert not weak_gaussian_sweep(lagrassa(), 1, variables=("X", "Y")).holds


def test_dm_equivalence():
    print("\n4️⃣ Dedekind-Mertens against subtractivity...")
    for name, S in CATALOG.items():
        report = dm_semiring_equivalence(S, 2)
        assert report.agrees, name
        assert report.structural.holds == is_subtractive_semiring(S).holds
    with pytest.raises(BadParams):
        dm_semiring_equivalence(chain_C(), 1)
    print(f"   ✅ {len(CATALOG)} members agree")


def test_dm_probe_on_nil_chain():
    S = nil_chain(4)
    probe = dm_probe(S, S.index("b"), S.index("a"))
    assert probe["exponent"] is None and probe["exhausted"]
    assert probe["f"] == "1 + X"
    assert probe["fg"] == "b + b*X + b*X^2 + b*X^3"
    assert probe["lhs"] == ["0", "a", "b"] and probe["rhs"] == ["0", "b"]


def test_prime_extension():
    lag = prime_extension_check(lagrassa(), ["0", "u"], 2)
    assert lag.agrees and not lag.structural.holds and not lag.sweep.holds
    chain = prime_extension_check(chain_C(), ["0", "u"], 2)
    assert chain.agrees and chain.structural.holds and chain.sweep.holds
    B = b_n_i(4, 2)
    assert prime_extension_check(B, ["0", "2", "3"], 2).agrees


def test_mccoy():
    for name, S in CATALOG.items():
        if is_subtractive_semiring(S).holds:
            assert mccoy_check(S, 2).holds, name


def test_nil_extension():
    verdict = nil_extension_check(nil_chain(3), 2)
    assert verdict.holds and verdict.status == VerdictStatus.BOUNDED
    advisory = nil_extension_check(nil_chain(4), 2)
    assert advisory.status == VerdictStatus.ADVISORY


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        is_gaussian_up_to(truncation(3), 3, SweepOptions(budget=100))


def test_sampled_sweep_is_labelled():
    verdict = is_gaussian_up_to(chain_C(), 2, SweepOptions(sample=5, seed=3))
    assert verdict.holds and verdict.status == VerdictStatus.SAMPLED


def main():
    print("🧪 Testing Gaussian classification...")
    print("=" * 60)
    test_lagrassa_is_not_gaussian()
    test_lagrassa_weak_gaussian_witness()
    test_certificates()
    test_sum_generation_reads_distinct_pairs()
    test_certified_members_pass_the_sweep()
    test_gaussian_verdict_skips_over_budget()
    test_weak_gaussian_exact_verdicts()
    test_weak_gaussian_routes_agree()
    test_weak_gaussian_in_more_indeterminates()
    test_dm_equivalence()
    test_dm_probe_on_nil_chain()
    test_prime_extension()
    test_mccoy()
    test_nil_extension()
    test_budget_is_enforced()
    test_sampled_sweep_is_labelled()
    print("\n" + "=" * 60)
    print("🎉 Gaussian classification tests passed")


if __name__ == "__main__":
    main()
