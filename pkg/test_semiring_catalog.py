#!/usr/bin/env python3
"""
Semiring tables, validation and the catalog
"""

import pytest
from hypothesis import given, settings, strategies as st

from app.algebra.catalog import (
    b_n_i,
    build_catalog,
    catalog_spec_from_cli,
    chain_C,
    idempotent_monoid_ext,
    lagrassa,
    nil_chain,
    parse_param,
    product_semiring,
    small_catalog,
    truncation,
)
from app.algebra.semiring import structural_flags, validate_semiring
from app.utils.error_handler import AxiomViolationError, BadParams, EmptyProduct, InputParseError

CATALOG = small_catalog(4)


def _op(S, table, a, b):
    return S.label(int(table[S.index(a), S.index(b)]))


def test_canonical_identities():
    print("\n1️⃣ Zero at index 0, one at index 1...")
    for name, S in CATALOG.items():
        assert S.zero == 0 and S.one == 1, name
    print(f"   ✅ {len(CATALOG)} catalog members")


def test_lagrassa_tables():
    S = lagrassa()
    assert S.elements == ("0", "1", "u")
    assert _op(S, S.add, "1", "u") == "u"
    assert _op(S, S.add, "1", "1") == "1"
    assert _op(S, S.mul, "u", "u") == "u"


def test_lagrassa_round_trips_through_validation():
    S = lagrassa()
    again = validate_semiring(S.tables().model_dump(), name="lagrassa")
    assert (again.add == S.add).all() and (again.mul == S.mul).all()


def test_chain_C_and_b_n_i():
    C = chain_C()
    assert _op(C, C.add, "1", "1") == "u"
    assert _op(C, C.add, "u", "1") == "1"
    assert _op(C, C.mul, "u", "1") == "u"

    B = b_n_i(4, 2)
    assert _op(B, B.add, "2", "2") == "2"
    assert _op(B, B.add, "3", "3") == "2"
    assert _op(B, B.add, "2", "3") == "3"
    assert _op(B, B.mul, "3", "3") == "3"


def test_nil_chain_and_truncation():
    T = nil_chain(4)
    assert T.elements == ("0", "1", "a", "b")
    assert _op(T, T.mul, "a", "b") == "0"
    assert _op(T, T.add, "a", "b") == "b"

    K = truncation(3)
    assert K.elements == ("-inf", "0", "1", "2", "3")
    assert _op(K, K.mul, "2", "3") == "3"
    assert _op(K, K.mul, "-inf", "3") == "-inf"


def test_product_semiring():
    S = product_semiring([nil_chain(3), nil_chain(3)])
    assert S.size == 9
    assert S.label(S.zero) == "(0,0)" and S.label(S.one) == "(1,1)"
    with pytest.raises(EmptyProduct):
        product_semiring([])


def test_catalog_from_cli():
    print("\n2️⃣ Catalog specs from CLI parameters...")
    S = build_catalog(catalog_spec_from_cli("nil_chain", ["n=4"]))
    assert S.size == 4
    P = build_catalog(catalog_spec_from_cli(
        "product", ['factors=[{"family": "nil_chain", "params": {"n": 3}}]', "copies=2"]
    ))
    assert P.size == 9
    assert parse_param("name=abc") == ("name", "abc")
    with pytest.raises(InputParseError):
        catalog_spec_from_cli("no_such_family")
    with pytest.raises(InputParseError):
        parse_param("n4")
    with pytest.raises(BadParams):
        build_catalog(catalog_spec_from_cli("b_n_i", ["n=4", "i=4"]))
    print("   ✅ CLI specs build the expected semirings")


@pytest.mark.parametrize("monoid", [
    {"elements": ["0", "p"], "add": [[0, 5], [5, 1]], "zero": 0},
    {"elements": ["0", "p"], "add": [[0, 1], [1, 1]], "zero": "z"},
    {"elements": ["0", "p"], "add": [[0, 1], [1, 1]], "zero": 1.5},
    {"elements": ["0", "p"], "add": 7, "zero": 0},
])
def test_bad_monoid_parameters_are_bad_params(monoid):
    with pytest.raises(BadParams):
        build_catalog({"family": "idempotent_monoid_ext", "params": {"monoid": monoid}})


def test_monoid_zero_by_label():
    S = idempotent_monoid_ext({"elements": ["p", "0"], "add": [[0, 0], [0, 1]], "zero": "0"})
    assert list(S.elements) == ["0", "1", "p"]


def test_axiom_violation_is_reported():
    bad = {
        "elements": ["0", "1", "x"],
        "add": [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
        # 1 is not a multiplicative identity here
        "mul": [[0, 0, 0], [0, 2, 2], [0, 2, 2]],
        "zero": 0,
        "one": 1,
    }
    with pytest.raises(AxiomViolationError) as info:
        validate_semiring(bad)
    assert info.value.violations
    assert all(v.describe() for v in info.value.violations)


def test_malformed_tables_are_parse_errors():
    with pytest.raises(InputParseError):
        validate_semiring({"elements": ["0", "1"], "add": [[0, 1]], "mul": [[0, 0], [0, 1]], "zero": 0, "one": 1})
    with pytest.raises(InputParseError):
        validate_semiring({"elements": ["0", "0"], "add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 1]],
                           "zero": 0, "one": 1})


def test_structural_flags():
    flags = structural_flags(nil_chain(4))
    assert flags.is_local and flags.maximal_ideal_squared_zero
    assert flags.additively_idempotent and flags.zerosumfree
    assert structural_flags(chain_C()).bounded_distributive_lattice is False


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_catalog_tables_are_commutative_semirings(name, data):
    S = CATALOG[name]
    a, b, c = (data.draw(st.integers(0, S.size - 1)) for _ in range(3))
    add, mul = S.add, S.mul
    assert add[a, b] == add[b, a] and mul[a, b] == mul[b, a]
    assert add[add[a, b], c] == add[a, add[b, c]]
    assert mul[mul[a, b], c] == mul[a, mul[b, c]]
    assert mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
    assert mul[a, S.zero] == S.zero and add[a, S.zero] == a and mul[a, S.one] == a


def main():
    print("🧪 Testing semiring catalog...")
    print("=" * 60)
    test_canonical_identities()
    test_lagrassa_tables()
    test_lagrassa_round_trips_through_validation()
    test_chain_C_and_b_n_i()
    test_nil_chain_and_truncation()
    test_product_semiring()
    test_catalog_from_cli()
    for monoid in ({"elements": ["0", "p"], "add": [[0, 5], [5, 1]], "zero": 0},
                   {"elements": ["0", "p"], "add": [[0, 1], [1, 1]], "zero": "z"}):
        test_bad_monoid_parameters_are_bad_params(monoid)
    test_monoid_zero_by_label()
    test_axiom_violation_is_reported()
    test_malformed_tables_are_parse_errors()
    test_structural_flags()
    test_catalog_tables_are_commutative_semirings()
    print("\n" + "=" * 60)
    print("🎉 Semiring catalog tests passed")


if __name__ == "__main__":
    main()
