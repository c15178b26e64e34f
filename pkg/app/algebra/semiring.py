"""
Finite commutative semirings over dense element indices.

Elements are 0..n-1 with string labels; addition and multiplication are
n x n numpy tables of indices. Subsets of the carrier (ideals, zero-divisor
sets) are Python int bitmasks, bit i standing for element i.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from app.models.schemas import SemiringTables, StructuralFlags
from app.utils.error_handler import AxiomViolation, AxiomViolationError, InputParseError

logger = logging.getLogger("SemiringLab.semiring")


def bits(mask: int) -> List[int]:
    """Indices of the set bits of ``mask`` in increasing order"""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    """Validated addition / multiplication tables. Compare by identity."""
    elements: Tuple[str, ...]
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = ""
    cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        for attr in ("add", "mul"):
            table = np.array(getattr(self, attr), dtype=np.int64)
            table.setflags(write=False)
            object.__setattr__(self, attr, table)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.elements)})

    def __getstate__(self):
        # drop memo tables when shipping to worker processes
        state = dict(self.__dict__)
        state["cache"] = {}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @property
    def zero_mask(self) -> int:
        return 1 << self.zero

    def index(self, label: Union[str, int]) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= int(label) < self.size:
                raise InputParseError(f"element index {label} out of range for {self.name or 'semiring'}")
            return int(label)
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputParseError(f"unknown element '{label}' in {self.name or 'semiring'}") from None

    def label(self, i: int) -> str:
        return self.elements[int(i)]

    def labels(self, members: Union[int, Iterable[int]]) -> List[str]:
        """Labels of a bitmask or index collection, in index order"""
        if isinstance(members, int):
            members = bits(members)
        return [self.elements[i] for i in sorted(int(m) for m in members)]

    def mask(self, labels: Iterable[Union[str, int]]) -> int:
        return mask_of(self.index(x) for x in labels)

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, s: int, k: int) -> int:
        """s^k with s^0 = 1"""
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, s])
        return out

    def units(self) -> int:
        """Bitmask of invertible elements"""
        return mask_of(np.nonzero((self.mul == self.one).any(axis=1))[0])

    def tables(self) -> SemiringTables:
        return SemiringTables(
            elements=list(self.elements),
            add=self.add.tolist(),
            mul=self.mul.tolist(),
            zero=self.zero,
            one=self.one
        )

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.name or '?'}, |S|={self.size})"


def _first(mask: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(x) for x in np.argwhere(mask)[0])


def axiom_violations(elements: Sequence[str], add: np.ndarray, mul: np.ndarray,
                     zero: int, one: int) -> List[AxiomViolation]:
    """Exhaustive O(n^3) sweep over the commutative semiring axioms"""
    n = len(elements)
    idx = np.arange(n)
    A, M = add, mul
    found: List[AxiomViolation] = []

    def record(name: str, bad: np.ndarray):
        if bad.any():
            found.append(AxiomViolation(name, tuple(elements[i] for i in _first(bad))))

    record("add_commutativity", A != A.T)
    record("add_associativity", A[A] != A[idx[:, None, None], A[None, :, :]])
    record("add_identity", A[zero] != idx)
    record("mul_commutativity", M != M.T)
    record("mul_associativity", M[M] != M[idx[:, None, None], M[None, :, :]])
    record("mul_identity", M[one] != idx)
    record("distributivity", M[idx[:, None, None], A[None, :, :]] != A[M[:, :, None], M[:, None, :]])
    record("zero_absorbing", M[:, zero] != zero)
    if one == zero:
        found.append(AxiomViolation("one_ne_zero", (elements[one],)))
    return found


def validate_semiring(tables: Union[SemiringTables, Dict[str, Any]], name: str = "") -> FiniteSemiring:
    """Validate raw tables; raises AxiomViolationError listing every failed axiom"""
    if not isinstance(tables, SemiringTables):
        try:
            tables = SemiringTables.model_validate(tables)
        except Exception as e:
            raise InputParseError(f"malformed semiring tables: {e}") from e

    n = len(tables.elements)
    if n == 0:
        raise InputParseError("semiring needs at least one element")
    if len(set(tables.elements)) != n:
        raise InputParseError("element labels must be distinct")
    try:
        add = np.array(tables.add, dtype=np.int64)
        mul = np.array(tables.mul, dtype=np.int64)
    except ValueError as e:
        raise InputParseError(f"ragged table: {e}") from e
    for table_name, table in (("add", add), ("mul", mul)):
        if table.shape != (n, n):
            raise InputParseError(f"{table_name} table must be {n}x{n}, got shape {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise InputParseError(f"{table_name} table has indices out of range")
    for which in ("zero", "one"):
        if not 0 <= getattr(tables, which) < n:
            raise InputParseError(f"{which} index out of range")

    violations = axiom_violations(tables.elements, add, mul, tables.zero, tables.one)
    if violations:
        logger.info(f"rejected {name or 'tables'}: {len(violations)} axiom violation(s)")
        raise AxiomViolationError(violations)

    return FiniteSemiring(tuple(tables.elements), add, mul, tables.zero, tables.one, name=name)


def is_zerosumfree(S: FiniteSemiring) -> bool:
    """a + b = 0 implies a = b = 0"""
    sums_zero = S.add == S.zero
    sums_zero[S.zero, S.zero] = False
    return not sums_zero.any()


def is_additively_idempotent(S: FiniteSemiring) -> bool:
    return bool((np.diagonal(S.add) == np.arange(S.size)).all())


def is_bounded_distributive_lattice(S: FiniteSemiring) -> bool:
    """Both operations idempotent plus the two absorption laws"""
    idx = np.arange(S.size)
    if not is_additively_idempotent(S):
        return False
    if not (np.diagonal(S.mul) == idx).all():
        return False
    # a + ab = a and a(a + b) = a
    if not (S.add[idx[:, None], S.mul] == idx[:, None]).all():
        return False
    return bool((S.mul[idx[:, None], S.add] == idx[:, None]).all())


def structural_flags(S: FiniteSemiring, lattice_cap: int = 12) -> StructuralFlags:
    """Cheap table flags plus locality from the ideal lattice"""
    from app.algebra import ideals

    local = ideals.is_local(S, lattice_cap=lattice_cap)
    squared_zero = None
    if local:
        m = ideals.non_units_ideal(S)
        squared_zero = ideals.ideal_product(m, m).is_zero()

    return StructuralFlags(
        size=S.size,
        zerosumfree=is_zerosumfree(S),
        additively_idempotent=is_additively_idempotent(S),
        bounded_distributive_lattice=is_bounded_distributive_lattice(S),
        is_local=local,
        maximal_ideal_squared_zero=squared_zero
    )
