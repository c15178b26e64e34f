"""
Zero-divisors: Z(S), associated primes, prime covers of Z(S), Property (A),
primal semirings, the zd degree, and their bounded transfer to S[X].
"""

import itertools
import logging
from collections import deque
from functools import partial
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.algebra.gaussian import is_weak_gaussian
from app.algebra.ideals import (
    DEFAULT_LATTICE_CAP,
    Ideal,
    annihilator_mask,
    generate_mask,
    is_ideal_mask,
    is_prime_mask,
    is_subtractive_semiring,
    spec,
)
from app.algebra.semiring import FiniteSemiring, bits, popcount
from app.algebra.sweeps import SweepOptions, pair_sweep, row_hits
from app.models.schemas import CheckResult, VerdictStatus, ZeroDivisorProfile
from app.utils.error_handler import CapExceeded, NotWeakGaussian

logger = logging.getLogger("SemiringLab.zerodivisors")

DEFAULT_PROPERTY_A_CAP = 16
MAX_COVER_PRIMES = 14


def zero_divisors(S: FiniteSemiring) -> int:
    """{s : s.s' = 0 for some s' != 0}; contains 0 whenever |S| > 1"""
    nonzero = np.arange(S.size) != S.zero
    kills = (S.mul[:, nonzero] == S.zero).any(axis=1)
    return sum(1 << int(i) for i in np.nonzero(kills)[0])


def ass_primes(S: FiniteSemiring) -> List[Ideal]:
    """Prime annihilators Ann(a), a != 0"""
    found = []
    for a in range(S.size):
        if a == S.zero:
            continue
        ann = annihilator_mask(S, 1 << a)
        if is_prime_mask(S, ann) and ann not in found:
            found.append(ann)
    return [Ideal(S, m) for m in sorted(found, key=lambda m: (popcount(m), m))]


def very_few_zero_divisors(S: FiniteSemiring) -> bool:
    """Z(S) is covered by its associated primes"""
    union = 0
    for p in ass_primes(S):
        union |= p.members
    return zero_divisors(S) & ~union == 0


def primes_in_zero_divisors(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[int]:
    Z = zero_divisors(S)
    return [p.members for p in spec(S, lattice_cap) if p.members & ~Z == 0]


def maximal_primes_of_z(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    inside = primes_in_zero_divisors(S, lattice_cap)
    top = [m for m in inside if not any(o != m and m & ~o == 0 for o in inside)]
    return [Ideal(S, m) for m in top]


def has_few_zero_divisors(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Z(S) is a finite union of primes"""
    union = 0
    for p in maximal_primes_of_z(S, lattice_cap):
        union |= p.members
    return union == zero_divisors(S)


def prime_covers(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Tuple[int, ...]]:
    """Every irredundant family of primes whose union is Z(S)"""
    Z = zero_divisors(S)
    primes = primes_in_zero_divisors(S, lattice_cap)
    if len(primes) > MAX_COVER_PRIMES:
        raise CapExceeded("prime cover search", len(primes), MAX_COVER_PRIMES)
    covers = []
    for r in range(1, len(primes) + 1):
        for family in itertools.combinations(primes, r):
            union = 0
            for p in family:
                union |= p
            if union != Z:
                continue
            redundant = False
            for k in range(r):
                rest = 0
                for j, p in enumerate(family):
                    if j != k:
                        rest |= p
                if rest == Z:
                    redundant = True
                    break
            if not redundant:
                covers.append(family)
    return covers


def _ideal_witness(S: FiniteSemiring, gens: int, ideal: int) -> Dict[str, Any]:
    return {"generators": S.labels(gens), "ideal": S.labels(ideal)}


def property_A(S: FiniteSemiring, cap: int = DEFAULT_PROPERTY_A_CAP) -> CheckResult:
    """
    Every finitely generated ideal inside Z(S) has a nonzero annihilator.
    Ideals are reached breadth-first by adding one generator from Z(S) at
    a time while the ideal stays inside Z(S).
    """
    Z = zero_divisors(S)
    if popcount(Z) > cap:
        raise CapExceeded("Property (A) subset search", popcount(Z), cap)
    if Z == S.zero_mask or Z == 0:
        return CheckResult(holds=True, detail="Z(S) = (0)")

    start = S.zero_mask
    seen = {start: start}
    queue = deque([start])
    while queue:
        ideal = queue.popleft()
        gens = seen[ideal]
        if annihilator_mask(S, ideal) == S.zero_mask:
            return CheckResult(holds=False, witness=_ideal_witness(S, gens, ideal),
                               detail="ideal inside Z(S) with zero annihilator")
        for z in bits(Z & ~ideal):
            grown = generate_mask(S, ideal | (1 << z))
            if grown & ~Z or grown in seen:
                continue
            seen[grown] = gens | (1 << z)
            queue.append(grown)
    logger.info(f"{S!r}: {len(seen)} ideals inside Z(S)")
    return CheckResult(holds=True, detail=f"{len(seen)} finitely generated ideals inside Z(S)")


def is_primal(S: FiniteSemiring) -> bool:
    """Z(S) is an ideal"""
    return is_ideal_mask(S, zero_divisors(S))


def zd_degree(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> Optional[int]:
    """
    Number of maximal primes of Z(S) when they cover Z(S); None without a
    prime cover. Defined for weak Gaussian semirings only.
    """
    weak = is_weak_gaussian(S, lattice_cap)
    if not weak.holds:
        raise NotWeakGaussian(f"{S!r} has a non-subtractive prime: {weak.witness.get('prime')}")
    if not has_few_zero_divisors(S, lattice_cap):
        return None
    top = maximal_primes_of_z(S, lattice_cap)
    covers = prime_covers(S, lattice_cap)
    expected = tuple(sorted(p.members for p in top))
    if [tuple(sorted(c)) for c in covers] != [expected]:
        raise AssertionError(f"{S!r}: irredundant prime cover of Z(S) is not unique: {covers}")
    return len(top)


def zd_degree_check(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """zd degree as a report verdict"""
    try:
        n = zd_degree(S, lattice_cap)
    except NotWeakGaussian as e:
        return CheckResult(holds=False, status=VerdictStatus.SKIPPED, detail=str(e))
    cover = [p.labels() for p in maximal_primes_of_z(S, lattice_cap)]
    if n is None:
        return CheckResult(holds=False, witness={"zset": S.labels(zero_divisors(S)), "maximal_primes": cover},
                           detail="Z(S) is not a union of primes")
    return CheckResult(holds=True, witness={"zd_degree": n, "cover": cover},
                       detail=f"zd(S) = {n}")


def zero_divisor_profile(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP,
                         property_a_cap: int = DEFAULT_PROPERTY_A_CAP) -> ZeroDivisorProfile:
    Z = zero_divisors(S)
    top = maximal_primes_of_z(S, lattice_cap)
    try:
        prop = property_A(S, property_a_cap)
    except CapExceeded as e:
        prop = CheckResult.skipped(str(e))
    profile = ZeroDivisorProfile(
        zset=S.labels(Z),
        ass_primes=[p.labels() for p in ass_primes(S)],
        maximal_primes_of_Z=[p.labels() for p in top],
        very_few=very_few_zero_divisors(S),
        few=has_few_zero_divisors(S, lattice_cap),
        primal=is_primal(S),
        property_A=prop,
    )
    try:
        profile.zd_degree = zd_degree(S, lattice_cap)
        profile.cover_unique = profile.zd_degree is not None
    except NotWeakGaussian as e:
        logger.info(f"zd degree skipped: {e}")
    except CapExceeded as e:
        logger.info(f"prime cover search skipped: {e}")
    return profile


# ---------------------------------------------------------------------------
# transfer to S[X]

def _kills(zero: int, cf, cg, cfg, deg_g) -> bool:
    return cfg == zero and cg != zero


def _zero_divisor_rows(S: FiniteSemiring, degree: int, options: Optional[SweepOptions]):
    sweep = pair_sweep(S, degree, options=options, what=f"S[X] zero-divisors D={degree}")
    hits = row_hits(sweep, partial(_kills, S.zero_mask))
    return sweep, np.array([h is not None for h in hits], dtype=bool), hits


def _row_lookup(S: FiniteSemiring, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    radix = S.size ** np.arange(grid.shape[1], dtype=np.int64)
    codes = grid @ radix
    pos = np.empty(S.size ** grid.shape[1], dtype=np.int64)
    pos[codes] = np.arange(len(grid))
    return radix, pos


def _additively_closed(S: FiniteSemiring, grid: np.ndarray, zd: np.ndarray) -> Optional[Tuple[int, int]]:
    radix, pos = _row_lookup(S, grid)
    rows = np.nonzero(zd)[0]
    for i in rows:
        sums = S.add[grid[i], grid[rows]]
        idx = pos[sums @ radix]
        bad = ~zd[idx]
        if bad.any():
            return int(i), int(rows[int(np.argmax(bad))])
    return None


def poly_transfer_check(S: FiniteSemiring, degree: int = 2, lattice_cap: int = DEFAULT_LATTICE_CAP,
                        options: Optional[SweepOptions] = None) -> CheckResult:
    """
    On polynomials of degree <= ``degree``: f is a zero-divisor of S[X] iff
    c(f) sits inside a maximal prime of Z(S); for primal S with Property
    (A) the zero-divisors are closed under addition. The witness records
    the bounded zd degree of S[X].
    """
    if not is_subtractive_semiring(S).holds:
        return CheckResult.skipped("S is not subtractive, so S[X] is not a content semialgebra")
    top = [p.members for p in maximal_primes_of_z(S, lattice_cap)]
    sweep, zd, hits = _zero_divisor_rows(S, degree, options)
    family = sweep.left
    status = VerdictStatus.BOUNDED

    used = set()
    for i in range(family.size):
        cf = int(family.contents[i])
        inside = [k for k, p in enumerate(top) if cf & ~p == 0]
        if bool(inside) != bool(zd[i]):
            f = family.polynomial(i)
            witness = {"f": str(f), "c(f)": S.labels(cf), "zero_divisor": bool(zd[i]),
                       "maximal_primes": [S.labels(p) for p in top]}
            if hits[i] is not None:
                witness["partner"] = str(sweep.right.polynomial(hits[i]))
            return CheckResult(holds=False, status=status, bound=degree, witness=witness,
                               detail="Z(S[X]) differs from the union of p[X]")
        used.update(inside)

    if is_primal(S) and property_A(S).holds:
        pair = _additively_closed(S, family.grid, zd)
        if pair is not None:
            i, j = pair
            return CheckResult(
                holds=False, status=status, bound=degree,
                witness={"f": str(family.polynomial(i)), "g": str(family.polynomial(j))},
                detail="sum of zero-divisors of S[X] is regular"
            )

    return CheckResult(
        holds=True, status=status, bound=degree,
        witness={"zd_degree": len(used), "zero_divisors": int(zd.sum()), "polynomials": family.size},
        detail=f"Z(S[X]) = union of {len(used)} extended primes on degree <= {degree}"
    )
