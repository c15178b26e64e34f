"""
Catalog of finite semiring families.

Every builder canonicalizes zero at index 0 and one at index 1 and runs
its tables through validate_semiring before handing them out.
"""

import itertools
import json
import logging
import string
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

from app.algebra.semiring import FiniteSemiring, validate_semiring
from app.models.schemas import CatalogFamily, CatalogSpec, SemiringTables
from app.utils.error_handler import AxiomViolationError, BadParams, EmptyProduct, InputParseError

logger = logging.getLogger("SemiringLab.catalog")

Table = List[List[int]]


def _tables(elements: Sequence[str], add: Callable[[int, int], int],
            mul: Callable[[int, int], int]) -> Tuple[Table, Table]:
    n = len(elements)
    return (
        [[add(a, b) for b in range(n)] for a in range(n)],
        [[mul(a, b) for b in range(n)] for a in range(n)],
    )


def _finish(name: str, elements: Sequence[str], add: Table, mul: Table) -> FiniteSemiring:
    try:
        return validate_semiring(
            SemiringTables(elements=list(elements), add=add, mul=mul, zero=0, one=1),
            name=name
        )
    except AxiomViolationError as e:
        raise BadParams(f"{name} does not form a semiring: {e}") from e


def _int_param(params: Dict[str, Any], key: str) -> int:
    if key not in params:
        raise BadParams(f"missing parameter '{key}'")
    try:
        return int(params[key])
    except (TypeError, ValueError):
        raise BadParams(f"parameter '{key}' must be an integer, got {params[key]!r}") from None


def boolean() -> FiniteSemiring:
    return _finish("boolean", ["0", "1"], [[0, 1], [1, 1]], [[0, 0], [0, 1]])


def lagrassa() -> FiniteSemiring:
    """{0, 1, u}: idempotent addition with 1 + u = u, and u.u = u"""
    labels = ["0", "1", "u"]
    u = 2

    def add(a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        return a if a == b else u

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        return u

    return _finish("lagrassa", labels, *_tables(labels, add, mul))


def _chain(name: str, labels: Sequence[str], rank: Sequence[int],
           add_rule: Callable[[int, int], int], mul_rule: Callable[[int, int], int]) -> FiniteSemiring:
    """Semiring on a chain; rules act on ranks, tables on canonical indices"""
    by_rank = {r: i for i, r in enumerate(rank)}
    add, mul = _tables(
        labels,
        lambda a, b: by_rank[add_rule(rank[a], rank[b])],
        lambda a, b: by_rank[mul_rule(rank[a], rank[b])],
    )
    return _finish(name, labels, add, mul)


def chain_lattice(n: int) -> FiniteSemiring:
    """0 < c1 < ... < c(n-2) < 1 under (max, min)"""
    if n < 2:
        raise BadParams("chain_lattice requires n >= 2")
    labels = ["0", "1"] + [f"c{k}" for k in range(1, n - 1)]
    rank = [0, n - 1] + list(range(1, n - 1))
    return _chain(f"chain_lattice({n})", labels, rank, max, min)


def power_set_lattice(n: int) -> FiniteSemiring:
    """Subsets of {1..n} under (union, intersection)"""
    if not 1 <= n <= 6:
        raise BadParams("power_set_lattice requires 1 <= n <= 6")
    full = (1 << n) - 1
    middle = sorted(
        (m for m in range(1, full)),
        key=lambda m: (bin(m).count("1"), [k for k in range(n) if m >> k & 1])
    )
    order = [0, full] + middle
    pos = {m: i for i, m in enumerate(order)}
    labels = ["{" + ",".join(str(k + 1) for k in range(n) if m >> k & 1) + "}" for m in order]
    add, mul = _tables(
        labels,
        lambda a, b: pos[order[a] | order[b]],
        lambda a, b: pos[order[a] & order[b]],
    )
    return _finish(f"power_set_lattice({n})", labels, add, mul)


def chain_C() -> FiniteSemiring:
    """{0 < u < 1}: a + b = u when a = b = 1, otherwise max; product is min"""
    labels = ["0", "1", "u"]
    rank = [0, 2, 1]

    def add(x, y):
        return 1 if x == y == 2 else max(x, y)

    return _chain("chain_C", labels, rank, add, min)


def b_n_i(n: int, i: int) -> FiniteSemiring:
    """
    B(n, i) on {0, ..., n-1}: integer sums and products that overflow n-1
    wrap to the unique l in [i, n-1] with l = x mod (n - i).
    """
    if n < 2 or not 0 < i < n:
        raise BadParams(f"b_n_i requires n >= 2 and 0 < i < n, got n={n}, i={i}")

    def wrap(r: int) -> int:
        return r if r <= n - 1 else i + (r - i) % (n - i)

    labels = [str(k) for k in range(n)]
    add, mul = _tables(labels, lambda a, b: wrap(a + b), lambda a, b: wrap(a * b))
    return _finish(f"b_n_i({n},{i})", labels, add, mul)


def truncation(k: int) -> FiniteSemiring:
    """T_k = {-inf, 0, 1, ..., k} under max and capped addition"""
    if k < 1:
        raise BadParams("truncation requires k >= 1")
    labels = ["-inf"] + [str(v) for v in range(k + 1)]

    def value(a):
        return None if a == 0 else a - 1

    def add(a, b):
        return max(a, b)

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return min(value(a) + value(b), k) + 1

    return _finish(f"truncation({k})", labels, *_tables(labels, add, mul))


def nil_chain(n: int) -> FiniteSemiring:
    """Chain 0 < a < b < ... < 1 with max addition and x.y = 0 below 1"""
    if not 2 <= n <= 28:
        raise BadParams("nil_chain requires 2 <= n <= 28")
    labels = ["0", "1"] + list(string.ascii_lowercase[:n - 2])
    rank = [0, n - 1] + list(range(1, n - 1))
    top = n - 1

    def mul(x, y):
        if x == top:
            return y
        if y == top:
            return x
        return 0

    return _chain(f"nil_chain({n})", labels, rank, max, mul)


def idempotent_monoid_ext(monoid: Dict[str, Any]) -> FiniteSemiring:
    """
    S = P + {1} for an idempotent commutative monoid (P, +, 0):
    a + 1 = 1 and ab = 0 for a, b in P.
    """
    try:
        elements = [str(e) for e in monoid["elements"]]
        table = monoid["add"]
        zero = monoid.get("zero", 0)
    except (KeyError, TypeError):
        raise BadParams("idempotent_monoid_ext needs monoid = {elements, add, zero}") from None
    m = len(elements)
    if not isinstance(zero, int) or isinstance(zero, bool):
        if str(zero) not in elements:
            raise BadParams(f"monoid zero '{zero}' is not an element")
        zero = elements.index(str(zero))
    if "1" in elements:
        raise BadParams("monoid labels must not include '1'")
    if not isinstance(table, list) or len(table) != m or any(not isinstance(row, list) or len(row) != m for row in table):
        raise BadParams("monoid add table must be square")
    if any(not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < m for row in table for v in row):
        raise BadParams(f"monoid add table entries must be indices in 0..{m - 1}")
    if not 0 <= zero < m:
        raise BadParams("monoid zero out of range")
    for a in range(m):
        if table[a][a] != a:
            raise BadParams(f"monoid addition is not idempotent at '{elements[a]}'")

    # canonical order: monoid zero, the new 1, then the rest of P
    rest = [a for a in range(m) if a != zero]
    order = [zero, None] + rest
    pos = {a: i for i, a in enumerate(order) if a is not None}
    labels = [elements[zero], "1"] + [elements[a] for a in rest]

    def add(x, y):
        if x == 1 or y == 1:
            return 1
        return pos[table[order[x]][order[y]]]

    def mul(x, y):
        if x == 1:
            return y
        if y == 1:
            return x
        return 0

    return _finish("idempotent_monoid_ext", labels, *_tables(labels, add, mul))


def product_semiring(factors: Sequence[FiniteSemiring]) -> FiniteSemiring:
    """Componentwise product; labels '(x,y,...)'"""
    factors = list(factors)
    if not factors:
        raise EmptyProduct("product_semiring needs at least one factor")
    if len(factors) == 1:
        return factors[0]

    zero = tuple(F.zero for F in factors)
    one = tuple(F.one for F in factors)
    rest = [t for t in itertools.product(*(range(F.size) for F in factors)) if t not in (zero, one)]
    order = [zero, one] + rest
    pos = {t: i for i, t in enumerate(order)}
    labels = ["(" + ",".join(F.label(x) for F, x in zip(factors, t)) + ")" for t in order]

    def combine(table_of):
        return [
            [pos[tuple(int(table_of(F)[x, y]) for F, x, y in zip(factors, s, t))] for t in order]
            for s in order
        ]

    name = "product(" + ", ".join(F.name or "?" for F in factors) + ")"
    add = combine(lambda F: F.add)
    mul = combine(lambda F: F.mul)
    return _finish(name, labels, add, mul)


def build_catalog(spec: Union[CatalogSpec, Dict[str, Any]]) -> FiniteSemiring:
    """Construct a catalog member from its spec"""
    if not isinstance(spec, CatalogSpec):
        try:
            spec = CatalogSpec.model_validate(spec)
        except Exception as e:
            raise BadParams(f"invalid catalog spec: {e}") from e

    p = spec.params
    family = spec.family
    logger.info(f"building {spec.describe()}")

    if family == CatalogFamily.BOOLEAN:
        return boolean()
    if family == CatalogFamily.LAGRASSA:
        return lagrassa()
    if family == CatalogFamily.CHAIN_LATTICE:
        return chain_lattice(_int_param(p, "n"))
    if family == CatalogFamily.POWER_SET_LATTICE:
        return power_set_lattice(_int_param(p, "n"))
    if family == CatalogFamily.CHAIN_C:
        return chain_C()
    if family == CatalogFamily.B_N_I:
        return b_n_i(_int_param(p, "n"), _int_param(p, "i"))
    if family == CatalogFamily.TRUNCATION:
        return truncation(_int_param(p, "k"))
    if family == CatalogFamily.NIL_CHAIN:
        return nil_chain(_int_param(p, "n"))
    if family == CatalogFamily.IDEMPOTENT_MONOID_EXT:
        if "monoid" not in p:
            raise BadParams("idempotent_monoid_ext requires a 'monoid' parameter")
        return idempotent_monoid_ext(p["monoid"])
    if family == CatalogFamily.PRODUCT:
        factors = p.get("factors")
        if factors is None:
            raise BadParams("product requires a 'factors' list")
        if "copies" in p:
            factors = list(factors) * _int_param(p, "copies")
        return product_semiring([build_catalog(f) for f in factors])
    raise BadParams(f"unknown catalog family {family}")


def parse_param(text: str) -> Tuple[str, Any]:
    """'n=4' -> ('n', 4); JSON values (lists, objects) are decoded, anything else stays a string"""
    if "=" not in text:
        raise InputParseError(f"parameter '{text}' must look like key=value")
    key, value = text.split("=", 1)
    key = key.strip()
    value = value.strip()
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def catalog_spec_from_cli(family: str, params: Sequence[str] = ()) -> CatalogSpec:
    try:
        fam = CatalogFamily(family)
    except ValueError:
        known = ", ".join(f.value for f in CatalogFamily)
        raise InputParseError(f"unknown catalog family '{family}' (known: {known})") from None
    return CatalogSpec(family=fam, params=dict(parse_param(t) for t in params))


# Small members used by the exhaustive cross-checks
def small_catalog(max_size: int = 4) -> Dict[str, FiniteSemiring]:
    members = {
        "boolean": boolean(),
        "lagrassa": lagrassa(),
        "chain_C": chain_C(),
        "chain_lattice(3)": chain_lattice(3),
        "chain_lattice(4)": chain_lattice(4),
        "nil_chain(3)": nil_chain(3),
        "nil_chain(4)": nil_chain(4),
        "b_n_i(3,1)": b_n_i(3, 1),
        "b_n_i(3,2)": b_n_i(3, 2),
        "b_n_i(4,1)": b_n_i(4, 1),
        "b_n_i(4,2)": b_n_i(4, 2),
        "b_n_i(4,3)": b_n_i(4, 3),
        "truncation(1)": truncation(1),
        "truncation(2)": truncation(2),
        "truncation(3)": truncation(3),
        "power_set_lattice(2)": power_set_lattice(2),
        "boolean^2": product_semiring([boolean(), boolean()]),
        "idempotent_monoid_ext(chain3)": idempotent_monoid_ext(
            {"elements": ["0", "p", "q"], "add": [[0, 1, 2], [1, 1, 2], [2, 2, 2]], "zero": 0}
        ),
    }
    return {name: S for name, S in members.items() if S.size <= max_size}
