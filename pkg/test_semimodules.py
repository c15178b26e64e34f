#!/usr/bin/env python3
"""
Semimodules: subtractivity, the semimodule Dedekind-Mertens lemma and
content semimodules
"""

import pytest

from app.algebra.catalog import chain_C, lagrassa, nil_chain, small_catalog
from app.algebra.polynomials import Polynomial
from app.algebra.semimodules import (
    ModulePolynomial,
    content_cM,
    content_equivalences,
    direct_sum,
    dm_semimodule,
    dm_semimodule_equivalence,
    enumerate_subsemimodules,
    is_content_semimodule,
    is_subtractive_semimodule,
    module_content,
    regular_module,
    subsemimodule_generated,
    submodule_content_equivalences,
    validate_semimodule,
    zero_module,
)
from app.utils.error_handler import AxiomViolationError, BadParams, InputParseError, MixedSemirings

CATALOG = small_catalog(3)


def test_regular_module_subtractivity():
    print("\n1️⃣ Regular semimodules...")
    assert is_subtractive_semimodule(regular_module(chain_C())).holds
    verdict = is_subtractive_semimodule(regular_module(nil_chain(4)))
    assert not verdict.holds and verdict.witness is not None
    print(f"   ✅ nil_chain(4) witness: {verdict.witness['subsemimodule']}")


def test_direct_sum_labels():
    C = chain_C()
    R = regular_module(C)
    M = direct_sum(R, R)
    assert M.size == 9
    assert M.label(M.zero) == "(0,0)"
    assert subsemimodule_generated(M, ["(u,0)"]).labels() == ["(0,0)", "(u,0)"]
    with pytest.raises(MixedSemirings):
        direct_sum(R, regular_module(lagrassa()))


def test_zero_module():
    M = zero_module(chain_C())
    assert enumerate_subsemimodules(M) == [M.zero_mask]
    assert is_subtractive_semimodule(M).holds


def test_module_polynomial_action():
    print("\n2️⃣ Module polynomials...")
    S = nil_chain(4)
    M = regular_module(S)
    f = Polynomial.from_coefficients(S, ["1", "1"])
    g = ModulePolynomial.from_coefficients(M, ["b", "a", "b"])
    assert str(g.act(f)) == "b + b*X + b*X^2 + b*X^3"
    assert module_content(g).labels() == ["0", "a", "b"]
    report = dm_semimodule(f, g)
    assert report.exponent is None and report.exhausted
    with pytest.raises(BadParams):
        ModulePolynomial(M, {(0, 1): "a"})
    print(f"   ✅ ({f}).({g}) = {g.act(f)}")


def test_dm_semimodule_equivalence():
    for name, S in CATALOG.items():
        report = dm_semimodule_equivalence(regular_module(S), 2)
        assert report.agrees, name
    chain = dm_semimodule_equivalence(regular_module(chain_C()), 2)
    assert chain.structural.holds and chain.sweep.holds
    nil = dm_semimodule_equivalence(regular_module(nil_chain(4)), 2)
    assert not nil.structural.holds and not nil.sweep.holds
    assert nil.probes and all(p["exponent"] is None for p in nil.probes)
    with pytest.raises(BadParams):
        dm_semimodule_equivalence(regular_module(chain_C()), 1)


def test_content_semimodules():
    print("\n3️⃣ Content semimodules...")
    C = chain_C()
    R = regular_module(C)
    assert content_cM(R, "u").labels() == ["0", "u"]
    assert is_content_semimodule(R).holds
    assert content_equivalences(R).holds
    assert content_equivalences(direct_sum(R, R)).holds
    assert submodule_content_equivalences(R).holds
    print("   ✅ S and S+S are content over chain_C")


def test_validate_semimodule():
    R = regular_module(chain_C())
    again = validate_semimodule(R.tables().model_dump())
    assert again.elements == R.elements
    assert (again.scalar == R.scalar).all()

    bad_shape = R.tables().model_dump()
    bad_shape["scalar"] = bad_shape["scalar"][:2]
    with pytest.raises(InputParseError):
        validate_semimodule(bad_shape)

    bad_axiom = R.tables().model_dump()
    bad_axiom["scalar"][R.semiring.zero] = [0, 1, 2]
    with pytest.raises(AxiomViolationError):
        validate_semimodule(bad_axiom)

    with pytest.raises(InputParseError):
        validate_semimodule({"elements": ["0"]})


def main():
    print("🧪 Testing semimodules...")
    print("=" * 60)
    test_regular_module_subtractivity()
    test_direct_sum_labels()
    test_zero_module()
    test_module_polynomial_action()
    test_dm_semimodule_equivalence()
    test_content_semimodules()
    test_validate_semimodule()
    print("\n" + "=" * 60)
    print("🎉 Semimodule tests passed")


if __name__ == "__main__":
    main()
