"""
S[X] as a content S-semialgebra: the membership, linearity and
Dedekind-Mertens axioms on a degree window, the minimal-prime
correspondence p -> p[X], and reducedness of S[X].
"""

import logging
from typing import Any, Callable, Dict, Optional

import numpy as np

from app.algebra.gaussian import dm_sweep, nil_extension_check, prime_extension_check
from app.algebra.ideals import (
    DEFAULT_LATTICE_CAP,
    enumerate_ideals,
    generate_mask,
    is_subtractive,
    is_subtractive_semiring,
    min_primes,
    nil_index,
    product_mask,
    radical_mask,
)
from app.algebra.semiring import FiniteSemiring
from app.algebra.sweeps import SweepOptions, build_family, family_rows_for, grid_contents
from app.models.schemas import CheckResult, SemialgebraVerdict, VerdictStatus
from app.utils.error_handler import BudgetExceeded, CapExceeded

logger = logging.getLogger("SemiringLab.content_semialgebra")


def _support_masks(grid: np.ndarray) -> np.ndarray:
    return np.bitwise_or.reduce(np.left_shift(np.int64(1), grid), axis=1)


def _bounded(what: str, fn: Callable[..., CheckResult], *args, **kwargs) -> CheckResult:
    try:
        return fn(*args, **kwargs)
    except (BudgetExceeded, CapExceeded) as e:
        logger.info(f"{what} skipped: {e}")
        return CheckResult.skipped(str(e))


def membership_axiom(S: FiniteSemiring, degree: int = 3,
                     lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """f in I[X] iff c(f) within I, for every ideal I"""
    family = build_family(S, degree)
    supports = _support_masks(family.grid)
    for I in enumerate_ideals(S, lattice_cap).masks:
        in_extension = (supports & ~I) == 0
        content_inside = (family.contents & ~I) == 0
        bad = in_extension != content_inside
        if bad.any():
            i = int(np.argmax(bad))
            return CheckResult(
                holds=False, status=VerdictStatus.BOUNDED, bound=degree,
                witness={"f": str(family.polynomial(i)), "ideal": S.labels(I),
                         "c(f)": S.labels(int(family.contents[i]))},
                detail="membership in I[X] disagrees with c(f) within I"
            )
    return CheckResult(holds=True, status=VerdictStatus.BOUNDED, bound=degree,
                       detail=f"{family.size} polynomials against every ideal")


def linearity_axiom(S: FiniteSemiring, degree: int = 3) -> CheckResult:
    """c(s.f) = (s)c(f) for every scalar s, and c(1) = S"""
    if generate_mask(S, 1 << S.one) != S.full_mask:
        return CheckResult(holds=False, witness={"f": S.label(S.one)}, detail="c(1) is not S")
    family = build_family(S, degree)
    for s in range(S.size):
        scaled = grid_contents(S, S.mul[s][family.grid])
        principal = generate_mask(S, 1 << s)
        expected = np.array([product_mask(S, principal, int(c)) for c in family.contents], dtype=np.int64)
        bad = scaled != expected
        if bad.any():
            i = int(np.argmax(bad))
            f = family.polynomial(i)
            return CheckResult(
                holds=False, status=VerdictStatus.BOUNDED, bound=degree,
                witness={"s": S.label(s), "f": str(f), "c(sf)": S.labels(int(scaled[i])),
                         "(s)c(f)": S.labels(int(expected[i]))},
                detail="content is not linear in scalars"
            )
    return CheckResult(holds=True, status=VerdictStatus.BOUNDED, bound=degree,
                       detail=f"{S.size} scalars x {family.size} polynomials")


def min_prime_correspondence(S: FiniteSemiring, degree: int = 2, lattice_cap: int = DEFAULT_LATTICE_CAP,
                             options: Optional[SweepOptions] = None) -> CheckResult:
    """
    For each minimal prime p: p is subtractive (so p[X] is prime), the
    bounded primality sweep of p[X] agrees, p[X] contracts to p, and
    distinct minimal primes extend to incomparable ideals. Surjectivity
    onto Min(S[X]) is not computed.
    """
    if not is_subtractive_semiring(S).holds:
        return CheckResult.skipped("S is not subtractive")
    primes = min_primes(S, lattice_cap)
    family = build_family(S, degree)
    constants = family.degrees <= 0
    extensions = []
    for p in primes:
        sub = is_subtractive(S, p)
        if not sub.holds:
            return CheckResult(holds=False, witness={"prime": p.labels(), **(sub.witness or {})},
                               detail="minimal prime is not subtractive")
        report = prime_extension_check(S, p, degree, options=options)
        if not report.agrees or not report.sweep.holds:
            return CheckResult(holds=False, status=report.sweep.status, bound=degree,
                               witness={"prime": p.labels(), **(report.sweep.witness or {})},
                               detail="p[X] fails the bounded primality sweep")
        inside = constants & ((family.contents & ~p.members) == 0)
        contraction = 0
        for row in family.grid[inside]:
            contraction |= 1 << int(row[0])
        if contraction != p.members:
            return CheckResult(holds=False, witness={"prime": p.labels(), "contraction": S.labels(contraction)},
                               detail="p[X] does not contract to p")
        extensions.append(p)

    for i, p in enumerate(extensions):
        for q in extensions[i + 1:]:
            if p <= q or q <= p:
                return CheckResult(holds=False, witness={"p": p.labels(), "q": q.labels()},
                                   detail="extensions of distinct minimal primes are comparable")
    return CheckResult(
        holds=True, status=VerdictStatus.THEOREM_BACKED, bound=degree,
        witness={"min_primes": [p.labels() for p in extensions],
                 "extensions": [f"({', '.join(p.labels())})[X]" for p in extensions]},
        detail="injective on Min(S); surjectivity onto Min(S[X]) is theorem-backed"
    )


def reduced_transfer_check(S: FiniteSemiring, degree: int = 2, K: Optional[int] = None,
                           options: Optional[SweepOptions] = None) -> CheckResult:
    """Nil(S) = (0) iff no nonzero f of degree <= D has f^k = 0 for k <= K"""
    options = options or SweepOptions()
    K = max(nil_index(S), 2) if K is None else K
    rows = family_rows_for(S, degree)
    if rows * K > options.budget:
        raise BudgetExceeded(f"reduced transfer D={degree}", rows * K, options.budget)
    reduced = radical_mask(S, S.zero_mask) == S.zero_mask
    status = VerdictStatus.BOUNDED if is_subtractive_semiring(S).holds else VerdictStatus.ADVISORY

    family = build_family(S, degree)
    nilpotent: Optional[Dict[str, Any]] = None
    for i in range(1, family.size):
        f = family.polynomial(i)
        power = f
        for k in range(2, K + 1):
            power = power * f
            if power.is_zero():
                nilpotent = {"f": str(f), "k": k}
                break
        if nilpotent:
            break
    holds = reduced == (nilpotent is None)
    detail = (f"S {'is' if reduced else 'is not'} reduced; "
              f"{'no nilpotent' if nilpotent is None else 'nilpotent'} polynomial of degree <= {degree}")
    return CheckResult(holds=holds, status=status, bound=degree, witness=nilpotent, detail=detail)


def verify_content_semialgebra(S: FiniteSemiring, degree: int = 3, lattice_cap: int = DEFAULT_LATTICE_CAP,
                               nil_degree: int = 2,
                               options: Optional[SweepOptions] = None) -> SemialgebraVerdict:
    """
    The three content-semialgebra axioms for S -> S[X] up to ``degree``.
    Over-budget fields come back skipped.
    """
    return SemialgebraVerdict(
        axiom1=_bounded("membership axiom", membership_axiom, S, degree, lattice_cap),
        axiom2=_bounded("linearity axiom", linearity_axiom, S, degree),
        axiom3=_bounded("Dedekind-Mertens axiom", dm_sweep, S, degree, options),
        min_prime_bijection=_bounded("minimal prime correspondence", min_prime_correspondence,
                                     S, min(degree, 2), lattice_cap, options),
        nil_extension=_bounded("Nil extension", nil_extension_check, S, nil_degree, options=options),
    )
