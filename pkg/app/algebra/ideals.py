"""
Ideal theory for finite semirings: generation, arithmetic, the ideal
lattice, subtractivity, primes, radicals and annihilators.

Ideals are int bitmasks underneath; generation and products are memoized
per semiring in ``S.cache`` since the polynomial sweeps hit the same few
masks millions of times.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.algebra.semiring import FiniteSemiring, bits, mask_of, popcount
from app.models.schemas import CheckResult, LatticeSummary
from app.utils.error_handler import BadParams, CapExceeded, MixedSemirings

logger = logging.getLogger("SemiringLab.ideals")

DEFAULT_LATTICE_CAP = 12

Elements = Union[int, Iterable[Union[str, int]]]


# ---------------------------------------------------------------------------
# mask-level kernels

def _memo(S: FiniteSemiring, name: str) -> Dict:
    return S.cache.setdefault(name, {})


def additive_closure(add: np.ndarray, start: int) -> int:
    """Least superset of ``start`` closed under the addition table"""
    mask = start
    frontier = bits(start)
    while frontier:
        members = np.array(bits(mask), dtype=np.int64)
        sums = np.unique(add[np.ix_(np.array(frontier, dtype=np.int64), members)])
        fresh = [int(x) for x in sums if not mask >> int(x) & 1]
        mask |= mask_of(fresh)
        frontier = fresh
    return mask


def generate_mask(S: FiniteSemiring, gens: int) -> int:
    """Ideal generated by the elements of ``gens``: sums of s.g plus 0"""
    memo = _memo(S, "gen")
    hit = memo.get(gens)
    if hit is not None:
        return hit
    start = S.zero_mask
    g = bits(gens)
    if g:
        start |= mask_of(np.unique(S.mul[:, g]))
    out = additive_closure(S.add, start)
    memo[gens] = out
    return out


def product_mask(S: FiniteSemiring, a: int, b: int) -> int:
    key = (a, b) if a <= b else (b, a)
    memo = _memo(S, "prod")
    hit = memo.get(key)
    if hit is not None:
        return hit
    ia, ib = bits(a), bits(b)
    out = generate_mask(S, mask_of(np.unique(S.mul[np.ix_(ia, ib)]))) if ia and ib else S.zero_mask
    memo[key] = out
    return out


def sum_mask(S: FiniteSemiring, a: int, b: int) -> int:
    return generate_mask(S, a | b)


def power_mask(S: FiniteSemiring, a: int, k: int) -> int:
    out = S.full_mask
    for _ in range(k):
        out = product_mask(S, out, a)
    return out


def scale_mask(S: FiniteSemiring, s: int, a: int) -> int:
    """s.I = {s.x : x in I}"""
    return mask_of(np.unique(S.mul[s, bits(a)]))


def _membership(S: FiniteSemiring, mask: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(S.size)], dtype=bool)


def radical_mask(S: FiniteSemiring, a: int) -> int:
    memo = _memo(S, "rad")
    hit = memo.get(a)
    if hit is not None:
        return hit
    inside = _membership(S, a)
    idx = np.arange(S.size)
    cur = idx.copy()
    hit_any = inside[cur].copy()
    for _ in range(S.size):
        cur = S.mul[cur, idx]
        hit_any |= inside[cur]
    out = mask_of(np.nonzero(hit_any)[0])
    memo[a] = out
    return out


def annihilator_mask(S: FiniteSemiring, subset: int) -> int:
    xs = bits(subset)
    if not xs:
        return S.full_mask
    kills = (S.mul[:, xs] == S.zero).all(axis=1)
    return mask_of(np.nonzero(kills)[0])


def subtractive_witness(S: FiniteSemiring, a: int) -> Optional[Tuple[int, int]]:
    """First (x, y) with x in I, y not in I and x + y in I"""
    inside = _membership(S, a)
    bad = inside[:, None] & ~inside[None, :] & inside[S.add]
    if not bad.any():
        return None
    x, y = np.argwhere(bad)[0]
    return int(x), int(y)


def is_prime_mask(S: FiniteSemiring, a: int) -> bool:
    memo = _memo(S, "prime")
    hit = memo.get(a)
    if hit is not None:
        return hit
    if a == S.full_mask:
        out = False
    else:
        inside = _membership(S, a)
        out = not (inside[S.mul] & ~inside[:, None] & ~inside[None, :]).any()
    memo[a] = out
    return out


def is_ideal_mask(S: FiniteSemiring, a: int) -> bool:
    return bool(a & S.zero_mask) and generate_mask(S, a) == a


# ---------------------------------------------------------------------------
# Ideal values

@dataclass(frozen=True, eq=False)
class Ideal:
    semiring: FiniteSemiring
    members: int
    generators: Optional[Tuple[int, ...]] = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.semiring is other.semiring and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.semiring), self.members))

    def __contains__(self, x: Union[str, int]) -> bool:
        return bool(self.members >> self.semiring.index(x) & 1)

    def __le__(self, other: "Ideal") -> bool:
        _same(self, other)
        return self.members & ~other.members == 0

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.members != other.members

    def __len__(self) -> int:
        return popcount(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(bits(self.members))

    def labels(self) -> List[str]:
        return self.semiring.labels(self.members)

    def is_zero(self) -> bool:
        return self.members == self.semiring.zero_mask

    def is_whole(self) -> bool:
        return self.members == self.semiring.full_mask

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def _same(*ideals: Ideal) -> FiniteSemiring:
    S = ideals[0].semiring
    for I in ideals[1:]:
        if I.semiring is not S:
            raise MixedSemirings(f"ideals over {S!r} and {I.semiring!r}")
    return S


def _as_mask(S: FiniteSemiring, elements: Elements) -> int:
    if isinstance(elements, Ideal):
        _same(elements, Ideal(S, 0))
        return elements.members
    if isinstance(elements, int):
        return elements
    return S.mask(elements)


def as_ideal(S: FiniteSemiring, I: Union[Ideal, Iterable[Union[str, int]]]) -> Ideal:
    """Accept an Ideal or a member list that must already be an ideal"""
    if isinstance(I, Ideal):
        _same(I, Ideal(S, 0))
        return I
    mask = S.mask(I)
    if not is_ideal_mask(S, mask):
        raise BadParams(f"{S.labels(mask)} is not an ideal of {S.name or 'S'}")
    return Ideal(S, mask)


def ideal_generated(S: FiniteSemiring, gens: Iterable[Union[str, int]]) -> Ideal:
    """Least ideal containing ``gens``"""
    g = S.mask(gens)
    return Ideal(S, generate_mask(S, g), tuple(bits(g)))


def principal_ideal(S: FiniteSemiring, x: Union[str, int]) -> Ideal:
    return ideal_generated(S, [x])


def zero_ideal(S: FiniteSemiring) -> Ideal:
    return Ideal(S, S.zero_mask, ())


def whole_ideal(S: FiniteSemiring) -> Ideal:
    return Ideal(S, S.full_mask, (S.one,))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    S = _same(I, J)
    return Ideal(S, sum_mask(S, I.members, J.members))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    S = _same(I, J)
    return Ideal(S, product_mask(S, I.members, J.members))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    S = _same(I, J)
    return Ideal(S, I.members & J.members)


def ideal_power(I: Ideal, k: int) -> Ideal:
    return Ideal(I.semiring, power_mask(I.semiring, I.members, k))


def ideal_scale(s: Union[str, int], I: Ideal) -> Ideal:
    S = I.semiring
    return Ideal(S, scale_mask(S, S.index(s), I.members))


# ---------------------------------------------------------------------------
# subtractivity and primes

def is_subtractive(S: FiniteSemiring, I: Union[Ideal, Iterable]) -> CheckResult:
    """a + b in I and a in I force b in I"""
    I = as_ideal(S, I)
    pair = subtractive_witness(S, I.members)
    if pair is None:
        return CheckResult(holds=True)
    a, b = pair
    return CheckResult(
        holds=False,
        witness={"ideal": I.labels(), "a": S.label(a), "b": S.label(b), "a+b": S.label(S.add[a, b])},
        detail=f"{S.label(a)} and {S.label(a)}+{S.label(b)} lie in the ideal but {S.label(b)} does not"
    )


def two_generated_masks(S: FiniteSemiring) -> List[Tuple[Tuple[int, int], int]]:
    """((x, y), mask of (x, y)) for x <= y, first occurrence of each ideal"""
    seen = set()
    out = []
    for x in range(S.size):
        for y in range(x, S.size):
            mask = generate_mask(S, (1 << x) | (1 << y))
            if mask not in seen:
                seen.add(mask)
                out.append(((x, y), mask))
    return out


def is_subtractive_semiring(S: FiniteSemiring) -> CheckResult:
    """Every 2-generated ideal is subtractive"""
    cached = S.cache.get("subtractive_semiring")
    if cached is not None:
        return cached
    result = CheckResult(holds=True, detail="every 2-generated ideal is subtractive")
    for (x, y), mask in two_generated_masks(S):
        pair = subtractive_witness(S, mask)
        if pair is not None:
            a, b = pair
            result = CheckResult(
                holds=False,
                witness={
                    "generators": [S.label(x), S.label(y)],
                    "ideal": S.labels(mask),
                    "a": S.label(a),
                    "b": S.label(b),
                    "a+b": S.label(S.add[a, b]),
                },
                detail=f"ideal ({S.label(x)},{S.label(y)}) is not subtractive"
            )
            break
    S.cache["subtractive_semiring"] = result
    return result


def non_subtractive_pairs(S: FiniteSemiring) -> List[Tuple[int, int, int]]:
    """(mask, a, b) for the first failing pair of every failing 2-generated ideal"""
    out = []
    for _, mask in two_generated_masks(S):
        pair = subtractive_witness(S, mask)
        if pair is not None:
            out.append((mask, pair[0], pair[1]))
    return out


def is_prime(S: FiniteSemiring, I: Union[Ideal, Iterable]) -> bool:
    """Proper ideal with ab in I forcing a in I or b in I"""
    return is_prime_mask(S, as_ideal(S, I).members)


# ---------------------------------------------------------------------------
# the lattice

def enumerate_closed_sets(n: int, closure: Callable[[int], int]) -> List[int]:
    """
    All closed sets of a closure operator on {0..n-1} in lectic order
    (next-closure). ``closure`` maps a bitmask to its closure.
    """
    full = (1 << n) - 1
    current = closure(0)
    found = [current]
    while current != full:
        for i in reversed(range(n)):
            if current >> i & 1:
                continue
            below = (1 << i) - 1
            candidate = closure((current & below) | (1 << i))
            if candidate & below == current & below:
                current = candidate
                found.append(current)
                break
        else:
            break
    return found


@dataclass(frozen=True)
class IdealLattice:
    semiring: FiniteSemiring
    masks: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Ideal]:
        return (Ideal(self.semiring, m) for m in self.masks)

    @property
    def all_ideals(self) -> List[Ideal]:
        return list(self)

    def __contains__(self, labels) -> bool:
        return _as_mask(self.semiring, labels) in self.masks

    def nonzero(self) -> List[int]:
        return [m for m in self.masks if m != self.semiring.zero_mask]


def check_cap(S: FiniteSemiring, lattice_cap: int, what: str = "ideal lattice"):
    if S.size > lattice_cap:
        raise CapExceeded(what, S.size, lattice_cap)


def enumerate_ideals(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> IdealLattice:
    """Complete ideal lattice, ordered by size then mask"""
    check_cap(S, lattice_cap)
    lattice = S.cache.get("lattice")
    if lattice is None:
        masks = enumerate_closed_sets(S.size, lambda m: generate_mask(S, m))
        lattice = IdealLattice(S, tuple(sorted(masks, key=lambda m: (popcount(m), m))))
        S.cache["lattice"] = lattice
        logger.info(f"{S.name or 'semiring'}: {len(lattice)} ideals")
    return lattice


def spec(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    """Prime ideals"""
    return [Ideal(S, m) for m in enumerate_ideals(S, lattice_cap).masks if is_prime_mask(S, m)]


def _minimal(masks: Sequence[int]) -> List[int]:
    return [m for m in masks if not any(o != m and o & ~m == 0 for o in masks)]


def _maximal(masks: Sequence[int]) -> List[int]:
    return [m for m in masks if not any(o != m and m & ~o == 0 for o in masks)]


def min_primes(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    return [Ideal(S, m) for m in _minimal([p.members for p in spec(S, lattice_cap)])]


def max_ideals(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    proper = [m for m in enumerate_ideals(S, lattice_cap).masks if m != S.full_mask]
    return [Ideal(S, m) for m in _maximal(proper)]


def radical(S: FiniteSemiring, I: Union[Ideal, Iterable]) -> Ideal:
    """{s : s^n in I for some n}"""
    return Ideal(S, radical_mask(S, as_ideal(S, I).members))


def radical_via_primes(S: FiniteSemiring, I: Union[Ideal, Iterable],
                       lattice_cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    """Intersection of the primes containing I"""
    I = as_ideal(S, I)
    out = S.full_mask
    for p in spec(S, lattice_cap):
        if I <= p:
            out &= p.members
    return Ideal(S, out)


def nil_radical(S: FiniteSemiring) -> Ideal:
    return Ideal(S, radical_mask(S, S.zero_mask))


def min_primes_intersection(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    out = S.full_mask
    for p in min_primes(S, lattice_cap):
        out &= p.members
    return Ideal(S, out)


def nil_index(S: FiniteSemiring) -> int:
    """Least t with Nil(S)^t = (0)"""
    nil = radical_mask(S, S.zero_mask)
    cur = nil
    t = 1
    while cur != S.zero_mask:
        cur = product_mask(S, cur, nil)
        t += 1
        if t > S.size + 1:
            raise RuntimeError(f"nil radical of {S!r} is not nilpotent")
    return t


def annihilator(S: FiniteSemiring, subset: Iterable[Union[str, int]]) -> Ideal:
    """{s : s.x = 0 for every x in subset}"""
    return Ideal(S, annihilator_mask(S, _as_mask(S, subset)))


def non_units_ideal(S: FiniteSemiring) -> Optional[Ideal]:
    """Non-units, when they form an ideal"""
    mask = S.full_mask & ~S.units()
    if not is_ideal_mask(S, mask):
        return None
    return Ideal(S, mask)


def is_local(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Unique maximal ideal"""
    if S.size <= lattice_cap:
        return len(max_ideals(S, lattice_cap)) == 1
    return non_units_ideal(S) is not None


def is_cancelation_ideal(S: FiniteSemiring, mask: int, lattice: IdealLattice) -> Optional[Tuple[int, int]]:
    """(J, K) with IJ = IK and J != K, or None"""
    by_product: Dict[int, int] = {}
    for J in lattice.masks:
        key = product_mask(S, mask, J)
        if key in by_product and by_product[key] != J:
            return by_product[key], J
        by_product.setdefault(key, J)
    return None


def lattice_summary(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP,
                    list_ideals: bool = True) -> LatticeSummary:
    lattice = enumerate_ideals(S, lattice_cap)
    return LatticeSummary(
        ideal_count=len(lattice),
        ideals=[I.labels() for I in lattice] if list_ideals else [],
        primes=[p.labels() for p in spec(S, lattice_cap)],
        min_primes=[p.labels() for p in min_primes(S, lattice_cap)],
        max_ideals=[m.labels() for m in max_ideals(S, lattice_cap)],
        nil_radical=nil_radical(S).labels()
    )


def prime_avoidance_check(S: FiniteSemiring, max_cover: int = 4,
                          lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """
    Every ideal covered by at most ``max_cover`` subtractive primes lies
    inside one of them.
    """
    lattice = enumerate_ideals(S, lattice_cap)
    primes = [p.members for p in spec(S, lattice_cap) if subtractive_witness(S, p.members) is None]
    for I in lattice.masks:
        for r in range(1, min(max_cover, len(primes)) + 1):
            for cover in itertools.combinations(primes, r):
                union = 0
                for p in cover:
                    union |= p
                if I & ~union:
                    continue
                if not any(I & ~p == 0 for p in cover):
                    return CheckResult(
                        holds=False,
                        witness={"ideal": S.labels(I), "cover": [S.labels(p) for p in cover]},
                        detail="ideal covered by subtractive primes but inside none of them"
                    )
    return CheckResult(holds=True, detail=f"checked covers of size <= {max_cover}")
