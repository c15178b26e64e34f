"""
Gaussian and weak Gaussian classification, the Dedekind-Mertens
equivalence, prime extension to polynomial semirings, McCoy's property and
Nil(S[X]).

Exact verdicts come from the ideal lattice (certificates, prime
subtractivity); everything quantified over polynomials is a bounded sweep
and labelled as such.
"""

import logging
from functools import partial
from typing import Any, Dict, List, Optional, Sequence

from app.algebra.ideals import (
    DEFAULT_LATTICE_CAP,
    annihilator_mask,
    as_ideal,
    enumerate_ideals,
    generate_mask,
    is_cancelation_ideal,
    is_prime_mask,
    is_subtractive,
    is_subtractive_semiring,
    nil_index,
    non_subtractive_pairs,
    non_units_ideal,
    product_mask,
    radical_mask,
    spec,
    subtractive_witness,
)
from app.algebra.polynomials import Polynomial, content, dm_exponent, dm_search
from app.algebra.semiring import FiniteSemiring, is_bounded_distributive_lattice
from app.algebra.sweeps import SweepOptions, build_family, family_rows_for, sweep_check
from app.models.schemas import (
    CheckResult,
    EquivalenceReport,
    GaussianCertificate,
    GaussianVerdict,
    VerdictStatus,
)
from app.utils.error_handler import BadParams, BudgetExceeded, CapExceeded

logger = logging.getLogger("SemiringLab.gaussian")


def _status(outcome) -> VerdictStatus:
    return VerdictStatus.SAMPLED if outcome.sampled else VerdictStatus.BOUNDED


# ---------------------------------------------------------------------------
# sweep predicates (module level so process pools can pickle them)

def gaussian_predicate(S, cf, cg, cfg, deg_g) -> bool:
    return cfg == product_mask(S, cf, cg)


def weak_gaussian_predicate(S, cf, cg, cfg, deg_g) -> bool:
    prod = product_mask(S, cf, cg)
    return cfg & ~prod == 0 and prod & ~radical_mask(S, cfg) == 0


def prime_extension_predicate(S, P, cf, cg, cfg, deg_g) -> bool:
    if cfg & ~P:
        return True
    return cf & ~P == 0 or cg & ~P == 0


def dm_predicate(S, cf, cg, cfg, deg_g) -> bool:
    act = partial(product_mask, S)
    exponent, *_ = dm_search(S, cf, cg, cfg, max(deg_g, 0), act)
    return exponent is not None


def mccoy_predicate(S, cf, cg, cfg, deg_g) -> bool:
    if cfg != S.zero_mask or cg == S.zero_mask:
        return True
    return annihilator_mask(S, cf) != S.zero_mask


def _content_pair(S: FiniteSemiring, outcome) -> Dict[str, Any]:
    f, g = outcome.f, outcome.g
    cf, cg = content(f).members, content(g).members
    cfg = content(f * g).members
    return {
        "c(f)": S.labels(cf),
        "c(g)": S.labels(cg),
        "c(fg)": S.labels(cfg),
        "c(f)c(g)": S.labels(product_mask(S, cf, cg)),
        "sqrt c(fg)": S.labels(radical_mask(S, cfg)),
    }


# ---------------------------------------------------------------------------
# Gaussian

def is_gaussian_up_to(S: FiniteSemiring, degree: int = 3,
                      options: Optional[SweepOptions] = None) -> CheckResult:
    """c(fg) = c(f)c(g) for every pair in S[X] of degree <= ``degree``"""
    outcome = sweep_check(
        S, degree, partial(gaussian_predicate, S), f"Gaussian sweep D={degree}",
        symmetric=True, options=options
    )
    if outcome.holds:
        return CheckResult(holds=True, status=_status(outcome), bound=degree,
                           detail=f"{outcome.pairs} unordered pairs")
    return CheckResult(
        holds=False, status=_status(outcome), bound=degree,
        witness=outcome.witness(**_content_pair(S, outcome)),
        detail="c(fg) differs from c(f)c(g)"
    )


def _sum_generation(S: FiniteSemiring) -> bool:
    """
    (a, b) = (a + b) for every pair of distinct elements.

    Repeated generators are not required: (x) = (x + x) fails in chain_C and
    b_n_i(3, 1), which still pass the bounded Gaussian sweep.
    """
    for a in range(S.size):
        for b in range(a + 1, S.size):
            pair = generate_mask(S, (1 << a) | (1 << b))
            if pair != generate_mask(S, 1 << int(S.add[a, b])):
                return False
    return True


def _local_nil_max(S: FiniteSemiring) -> bool:
    m = non_units_ideal(S)
    if m is None or not is_subtractive_semiring(S).holds:
        return False
    return product_mask(S, m.members, m.members) == S.zero_mask


def _cancelation(S: FiniteSemiring, lattice_cap: int) -> bool:
    lattice = enumerate_ideals(S, lattice_cap)
    return all(is_cancelation_ideal(S, mask, lattice) is None for mask in lattice.nonzero())


def gaussian_certificates(S: FiniteSemiring,
                          lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[GaussianCertificate]:
    """Every exact Gaussian certificate that applies, in priority order"""
    found = []
    if _local_nil_max(S):
        found.append(GaussianCertificate.LOCAL_NIL_MAX)
    if _sum_generation(S):
        found.append(GaussianCertificate.SUM_GENERATION)
    if is_bounded_distributive_lattice(S):
        found.append(GaussianCertificate.BDL)
    try:
        if _cancelation(S, lattice_cap):
            found.append(GaussianCertificate.CANCELATION)
    except CapExceeded as e:
        logger.info(f"cancelation certificate skipped: {e}")
    return found


def gaussian_sufficient(S: FiniteSemiring,
                        lattice_cap: int = DEFAULT_LATTICE_CAP) -> GaussianCertificate:
    found = gaussian_certificates(S, lattice_cap)
    return found[0] if found else GaussianCertificate.NONE


def gaussian_verdict(S: FiniteSemiring, degree: int = 3, lattice_cap: int = DEFAULT_LATTICE_CAP,
                     options: Optional[SweepOptions] = None) -> GaussianVerdict:
    """Certificates plus the bounded sweep (sweep skipped when over budget)"""
    found = gaussian_certificates(S, lattice_cap)
    try:
        bounded = is_gaussian_up_to(S, degree, options)
    except BudgetExceeded as e:
        bounded = CheckResult.skipped(str(e))
    return GaussianVerdict(
        certificate=found[0] if found else GaussianCertificate.NONE,
        certificates=found,
        bounded=bounded
    )


# ---------------------------------------------------------------------------
# weak Gaussian

def weak_gaussian_witness(S: FiniteSemiring, a: int, b: int) -> Dict[str, Any]:
    """
    For a prime p with a, a + b in p and b outside: f = a + bX,
    g = b + (a+b)X has c(f)c(g) outside sqrt(c(fg)).
    """
    f = Polynomial.from_coefficients(S, [a, b])
    g = Polynomial.from_coefficients(S, [b, int(S.add[a, b])])
    cf, cg, cfg = content(f).members, content(g).members, content(f * g).members
    prod = product_mask(S, cf, cg)
    rad = radical_mask(S, cfg)
    return {
        "f": str(f),
        "g": str(g),
        "fg": str(f * g),
        "c(fg)": S.labels(cfg),
        "c(f)c(g)": S.labels(prod),
        "sqrt c(fg)": S.labels(rad),
        "escapes": prod & ~rad != 0,
    }


def is_weak_gaussian(S: FiniteSemiring, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """Exact: every prime ideal is subtractive"""
    for p in spec(S, lattice_cap):
        pair = subtractive_witness(S, p.members)
        if pair is None:
            continue
        a, b = pair
        witness = {"prime": p.labels(), "a": S.label(a), "b": S.label(b), "a+b": S.label(S.add[a, b])}
        witness.update(weak_gaussian_witness(S, a, b))
        return CheckResult(
            holds=False, witness=witness,
            detail=f"prime {p!r} is not subtractive"
        )
    return CheckResult(holds=True, detail="every prime ideal is subtractive")


def weak_gaussian_sweep(S: FiniteSemiring, degree: int = 3, variables: Sequence[str] = ("X",),
                        laurent: Sequence[str] = (), options: Optional[SweepOptions] = None) -> CheckResult:
    """c(fg) within c(f)c(g) within sqrt(c(fg)) for every pair of degree <= ``degree``"""
    outcome = sweep_check(
        S, degree, partial(weak_gaussian_predicate, S), f"weak Gaussian sweep D={degree}",
        variables=variables, laurent=laurent, symmetric=True, options=options
    )
    if outcome.holds:
        return CheckResult(holds=True, status=_status(outcome), bound=degree,
                           detail=f"{outcome.pairs} unordered pairs in {', '.join(variables)}")
    return CheckResult(
        holds=False, status=_status(outcome), bound=degree,
        witness=outcome.witness(**_content_pair(S, outcome)),
        detail="containment chain c(fg) <= c(f)c(g) <= sqrt c(fg) breaks"
    )


# ---------------------------------------------------------------------------
# prime extension P[X]

def prime_extension_check(S: FiniteSemiring, P, degree: int = 3, variables: Sequence[str] = ("X",),
                          laurent: Sequence[str] = (),
                          options: Optional[SweepOptions] = None) -> EquivalenceReport:
    """
    Bounded primality of P[X...] against the exact criterion
    'P is a subtractive prime'.
    """
    P = as_ideal(S, P)
    prime = is_prime_mask(S, P.members)
    subtractive = is_subtractive(S, P)
    structural = CheckResult(
        holds=prime and subtractive.holds,
        witness=None if subtractive.holds else subtractive.witness,
        detail=f"prime: {prime}, subtractive: {subtractive.holds}"
    )
    if P.is_whole():
        sweep = CheckResult(holds=False, status=VerdictStatus.EXACT,
                            witness={"f": "1", "g": "1", "fg": "1"},
                            detail="extension of the whole semiring is not proper")
    else:
        outcome = sweep_check(
            S, degree, partial(prime_extension_predicate, S, P.members),
            f"prime extension sweep D={degree}",
            variables=variables, laurent=laurent, symmetric=True, options=options
        )
        sweep = CheckResult(
            holds=outcome.holds, status=_status(outcome), bound=degree,
            witness=outcome.witness(prime=P.labels()),
            detail="fg in P[X] with f, g outside" if not outcome.holds else f"{outcome.pairs} unordered pairs"
        )
    return EquivalenceReport(agrees=structural.holds == sweep.holds, structural=structural, sweep=sweep)


# ---------------------------------------------------------------------------
# Dedekind-Mertens

def dm_probe(S: FiniteSemiring, a: int, b: int) -> Dict[str, Any]:
    """f = 1 + X, g = a + bX + aX^2 for a, a+b in N and b outside N"""
    f = Polynomial.from_coefficients(S, [S.one, S.one])
    g = Polynomial.from_coefficients(S, [a, b, a])
    report = dm_exponent(f, g)
    return {
        "a": S.label(a),
        "b": S.label(b),
        "f": str(f),
        "g": str(g),
        "fg": str(f * g),
        "exponent": report.exponent,
        "exhausted": report.exhausted,
        "lhs": report.lhs,
        "rhs": report.rhs,
    }


def dm_sweep(S: FiniteSemiring, degree: int = 3, options: Optional[SweepOptions] = None) -> CheckResult:
    """Every ordered pair of degree <= ``degree`` has a DM exponent <= deg g"""
    outcome = sweep_check(S, degree, partial(dm_predicate, S), f"Dedekind-Mertens sweep D={degree}",
                          options=options)
    if outcome.holds:
        return CheckResult(holds=True, status=_status(outcome), bound=degree,
                           detail=f"{outcome.pairs} ordered pairs")
    report = dm_exponent(outcome.f, outcome.g, bound=outcome.g.degree() or 0)
    return CheckResult(
        holds=False, status=_status(outcome), bound=degree,
        witness=outcome.witness(lhs=report.lhs, rhs=report.rhs),
        detail="no exponent m <= deg g satisfies c(f)^(m+1)c(g) = c(f)^m c(fg)"
    )


def dm_semiring_equivalence(S: FiniteSemiring, degree: int = 3,
                            options: Optional[SweepOptions] = None) -> EquivalenceReport:
    """Subtractivity of S against the bounded DM sweep plus the probes"""
    if degree < 2:
        raise BadParams("the Dedekind-Mertens probes have degree 2; use degree >= 2")
    structural = is_subtractive_semiring(S)
    sweep = dm_sweep(S, degree, options)
    probes = [dm_probe(S, a, b) for _, a, b in non_subtractive_pairs(S)]
    agrees = structural.holds == sweep.holds and all(p["exponent"] is None for p in probes)
    return EquivalenceReport(agrees=agrees, structural=structural, sweep=sweep, probes=probes)


# ---------------------------------------------------------------------------
# McCoy and Nil(S[X])

def mccoy_scalar(f: Polynomial, g: Polynomial) -> Optional[str]:
    """
    Nonzero s with s.f = 0 for fg = 0, g != 0: taken from c(f)^t c(g) with
    t least such that c(f)^(t+1) c(g) = (0), else any nonzero element of
    Ann(c(f)).
    """
    S = f.semiring
    cf, cg = content(f).members, content(g).members
    zero = S.zero_mask
    cur = cg
    for _ in range(S.size + 1):
        nxt = product_mask(S, cf, cur)
        if nxt == zero and cur != zero:
            return S.label(next(i for i in range(S.size) if cur >> i & 1 and i != S.zero))
        if nxt == cur:
            break
        cur = nxt
    ann = annihilator_mask(S, cf) & ~zero
    if not ann:
        return None
    return S.label((ann & -ann).bit_length() - 1)


def mccoy_check(S: FiniteSemiring, degree: int = 2, options: Optional[SweepOptions] = None) -> CheckResult:
    """fg = 0 with g != 0 forces s.f = 0 for some nonzero scalar s"""
    outcome = sweep_check(S, degree, partial(mccoy_predicate, S), f"McCoy sweep D={degree}", options=options)
    if not outcome.holds:
        return CheckResult(
            holds=False, status=_status(outcome), bound=degree,
            witness=outcome.witness(annihilator=S.labels(annihilator_mask(S, content(outcome.f).members))),
            detail="zero-divisor polynomial without an annihilating scalar"
        )
    example = _mccoy_example(S, outcome.sweep)
    return CheckResult(holds=True, status=_status(outcome), bound=degree, witness=example,
                       detail=f"{outcome.pairs} ordered pairs")


def _mccoy_example(S: FiniteSemiring, sweep) -> Optional[Dict[str, Any]]:
    """First nonzero f with a nonzero partner g, fg = 0, and its scalar"""
    family = sweep.left
    zero = S.zero_mask
    for i in range(1, family.size):
        cfg = sweep.product_contents(i)
        hits = [j for j in range(1, sweep.right.size) if cfg[j] == zero]
        if hits:
            f, g = family.polynomial(i), sweep.right.polynomial(hits[0])
            return {"f": str(f), "g": str(g), "s": mccoy_scalar(f, g)}
    return None


def nil_extension_check(S: FiniteSemiring, degree: int = 2, K: Optional[int] = None,
                        variables: Sequence[str] = ("X",), laurent: Sequence[str] = (),
                        options: Optional[SweepOptions] = None) -> CheckResult:
    """
    Nil(S[X]) = Nil(S)S[X] on the degree window: f with coefficients in
    Nil(S) has f^k = 0 for some k <= K; any other f has no such k.
    """
    options = options or SweepOptions()
    K = nil_index(S) if K is None else K
    rows = family_rows_for(S, degree, variables, laurent)
    if rows * K > options.budget:
        raise BudgetExceeded(f"Nil extension D={degree}", rows * K, options.budget)

    nil = radical_mask(S, S.zero_mask)
    family = build_family(S, degree, variables, laurent)
    advisory = not is_subtractive_semiring(S).holds
    status = VerdictStatus.ADVISORY if advisory else VerdictStatus.BOUNDED
    for i in range(family.size):
        inside = int(family.contents[i]) & ~nil == 0
        f = family.polynomial(i)
        power = f
        nilpotent = power.is_zero()
        for _ in range(1, K):
            if nilpotent:
                break
            power = power * f
            nilpotent = power.is_zero()
        if nilpotent != inside:
            return CheckResult(
                holds=False, status=status, bound=degree,
                witness={"f": str(f), "coefficients_in_nil": inside, "nilpotent_within": K},
                detail="nilpotency disagrees with Nil(S)S[X]"
            )
    return CheckResult(holds=True, status=status, bound=degree,
                       detail=f"{family.size} polynomials, K = {K}")
