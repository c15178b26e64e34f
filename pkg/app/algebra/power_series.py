"""
Truncated formal power series over finite semirings.

A series of order N keeps every term of total degree < N. The content
checks only pair series whose support has degree < D with 2D <= N, so no
product term is ever lost to the truncation and the verdicts on that
fragment are exact for the corresponding polynomials.
"""

import logging
from functools import partial
from typing import Any, Dict, Mapping, Optional, Sequence

from app.algebra.gaussian import (
    is_weak_gaussian,
    prime_extension_predicate,
    weak_gaussian_predicate,
)
from app.algebra.ideals import (
    Ideal,
    as_ideal,
    generate_mask,
    is_prime_mask,
    is_subtractive,
    nil_index,
    product_mask,
    radical_mask,
)
from app.algebra.polynomials import Exponents, Polynomial, render_terms
from app.algebra.semiring import FiniteSemiring, mask_of
from app.algebra.sweeps import SweepOptions, build_family, family_rows_for, sweep_check
from app.models.schemas import CheckResult, EquivalenceReport, VerdictStatus
from app.utils.error_handler import BadParams, BudgetExceeded, InputParseError, MixedOrders, MixedSemirings

logger = logging.getLogger("SemiringLab.power_series")


class TruncatedSeries:
    """Element of S[[X...]] modulo terms of total degree >= ``order``"""

    __slots__ = ("semiring", "order", "variables", "coeffs")

    def __init__(self, semiring: FiniteSemiring, order: int, coeffs: Mapping[Exponents, Any],
                 variables: Sequence[str] = ("X",)):
        if order < 1:
            raise BadParams(f"series order must be positive, got {order}")
        variables = tuple(variables)
        clean: Dict[Exponents, int] = {}
        for e, c in coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != len(variables):
                raise BadParams(f"exponent {e} does not match indeterminates {variables}")
            if any(x < 0 for x in e):
                raise BadParams(f"negative exponent {e} in a power series")
            c = semiring.index(c)
            if sum(e) < order and c != semiring.zero:
                clean[e] = c
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, key, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def from_coefficients(cls, S: FiniteSemiring, coeffs: Sequence[Any], order: int,
                          variable: str = "X") -> "TruncatedSeries":
        return cls(S, order, {(k,): c for k, c in enumerate(coeffs)}, (variable,))

    @classmethod
    def from_polynomial(cls, f: Polynomial, order: int) -> "TruncatedSeries":
        if f.laurent:
            raise BadParams("Laurent polynomials have no power-series image")
        return cls(f.semiring, order, f.terms, f.variables)

    @classmethod
    def one(cls, S: FiniteSemiring, order: int, variables: Sequence[str] = ("X",)) -> "TruncatedSeries":
        return cls(S, order, {(0,) * len(tuple(variables)): S.one}, variables)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support_mask(self) -> int:
        return mask_of(self.coeffs.values())

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.semiring, self.coeffs, self.variables)

    def _check(self, other: "TruncatedSeries"):
        if self.semiring is not other.semiring:
            raise MixedSemirings(f"series over {self.semiring!r} and {other.semiring!r}")
        if self.order != other.order:
            raise MixedOrders(f"series truncated at {self.order} and {other.order}")
        if self.variables != other.variables:
            raise BadParams(f"series in {self.variables} and {other.variables}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        S = self.semiring
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = int(S.add[coeffs[e], c]) if e in coeffs else c
        return TruncatedSeries(S, self.order, coeffs, self.variables)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return ps_mul(self, other)

    def __pow__(self, k: int) -> "TruncatedSeries":
        out = TruncatedSeries.one(self.semiring, self.order, self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.semiring is other.semiring and self.order == other.order
                and self.variables == other.variables and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((id(self.semiring), self.order, tuple(sorted(self.coeffs.items()))))

    def __str__(self) -> str:
        S = self.semiring
        head = render_terms(self.variables, self.coeffs, S.label, S.one, S.label(S.zero))
        if len(self.variables) == 1:
            tail = f"O({self.variables[0]}^{self.order})"
        else:
            tail = f"O(deg {self.order})"
        return f"{head} + {tail}"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"

    def to_json(self) -> Dict[str, Any]:
        out = self.to_polynomial().to_json()
        out["order"] = self.order
        return out

    @classmethod
    def from_json(cls, S: FiniteSemiring, data: Mapping[str, Any]) -> "TruncatedSeries":
        if "order" not in data:
            raise InputParseError("series JSON needs an 'order' field")
        f = Polynomial.from_json(S, data)
        return cls(S, int(data["order"]), f.terms, f.variables)


def ps_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, dropping every term of total degree >= order"""
    f._check(g)
    S = f.semiring
    coeffs: Dict[Exponents, int] = {}
    for e1, a in f.coeffs.items():
        for e2, b in g.coeffs.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if sum(e) >= f.order:
                continue
            ab = int(S.mul[a, b])
            coeffs[e] = int(S.add[coeffs[e], ab]) if e in coeffs else ab
    return TruncatedSeries(S, f.order, coeffs, f.variables)


def series_content(f: TruncatedSeries) -> Ideal:
    """
    A_f of the stored coefficients. The content of the full series may be
    larger than that of its truncation.
    """
    S = f.semiring
    return Ideal(S, generate_mask(S, f.support_mask()))


def _support_degree(N: int, D: int):
    if D < 1 or 2 * D > N:
        raise BadParams(f"need 1 <= D and 2D <= N (got N={N}, D={D})")


def _series_witness(S: FiniteSemiring, outcome, N: int) -> Dict[str, Any]:
    f = TruncatedSeries.from_polynomial(outcome.f, N)
    g = TruncatedSeries.from_polynomial(outcome.g, N)
    cf, cg = series_content(f).members, series_content(g).members
    cfg = series_content(f * g).members
    prod = product_mask(S, cf, cg)
    return {
        "f": str(f),
        "g": str(g),
        "fg": str(f * g),
        "A_f": S.labels(cf),
        "A_g": S.labels(cg),
        "A_fg": S.labels(cfg),
        "A_fA_g": S.labels(prod),
        "sqrt A_fg": S.labels(radical_mask(S, cfg)),
    }


def _subcontent_predicate(S, cf, cg, cfg, deg_g) -> bool:
    return cfg & ~product_mask(S, cf, cg) == 0


def _replay_pair(S: FiniteSemiring, witness: Dict[str, Any], N: int) -> Dict[str, Any]:
    """The exact weak-Gaussian counterexample, read as a pair of series"""
    a, b = S.index(witness["a"]), S.index(witness["b"])
    f = TruncatedSeries.from_coefficients(S, [a, b], N)
    g = TruncatedSeries.from_coefficients(S, [b, int(S.add[a, b])], N)
    cfg = series_content(f * g).members
    prod = product_mask(S, series_content(f).members, series_content(g).members)
    return {
        "check": "exact counterexample as series",
        "f": str(f),
        "g": str(g),
        "A_fg": S.labels(cfg),
        "escapes": prod & ~radical_mask(S, cfg) != 0,
    }


def series_content_check(S: FiniteSemiring, N: int = 6, D: int = 2, variables: Sequence[str] = ("X",),
                         lattice_cap: int = 12, options: Optional[SweepOptions] = None) -> EquivalenceReport:
    """
    A_fg within A_f A_g within sqrt(A_fg) over series of support degree < D,
    compared with the prime-subtractivity verdict. ``agrees`` also requires
    the first containment to hold everywhere.
    """
    _support_degree(N, D)
    structural = is_weak_gaussian(S, lattice_cap)
    what = f"series content sweep N={N} D={D}"
    outcome = sweep_check(S, D - 1, partial(weak_gaussian_predicate, S), what,
                          variables=variables, symmetric=True, order=N, options=options)
    status = VerdictStatus.SAMPLED if outcome.sampled else VerdictStatus.BOUNDED
    if outcome.holds:
        sweep = CheckResult(holds=True, status=status, bound=D - 1,
                            detail=f"{outcome.pairs} unordered pairs of order {N}")
        subcontent = {"check": "A_fg <= A_f A_g", "holds": True}
    else:
        sweep = CheckResult(holds=False, status=status, bound=D - 1,
                            witness=_series_witness(S, outcome, N),
                            detail="A_fA_g is not inside sqrt(A_fg)")
        sub = sweep_check(S, D - 1, partial(_subcontent_predicate, S), what + " (A_fg <= A_fA_g)",
                          variables=variables, symmetric=True, order=N, options=options)
        subcontent = {"check": "A_fg <= A_f A_g", "holds": sub.holds}
        if not sub.holds:
            subcontent["witness"] = _series_witness(S, sub, N)
            logger.warning(f"{S!r}: A_fg escapes A_fA_g at {subcontent['witness']['f']}")
    probes = [subcontent]
    if not structural.holds and structural.witness:
        probes.append(_replay_pair(S, structural.witness, N))
    agrees = structural.holds == sweep.holds and subcontent["holds"]
    return EquivalenceReport(agrees=agrees, structural=structural, sweep=sweep, probes=probes)


def ps_prime_extension_check(S: FiniteSemiring, P, N: int = 6, D: int = 2,
                             options: Optional[SweepOptions] = None) -> EquivalenceReport:
    """
    fg with coefficients in P forces f or g to have them, over series of
    support degree < D, against 'P is a subtractive prime'.
    """
    _support_degree(N, D)
    P = as_ideal(S, P)
    prime = is_prime_mask(S, P.members)
    subtractive = is_subtractive(S, P)
    structural = CheckResult(
        holds=prime and subtractive.holds,
        witness=None if subtractive.holds else subtractive.witness,
        detail=f"prime: {prime}, subtractive: {subtractive.holds}"
    )
    if P.is_whole():
        one = TruncatedSeries.one(S, N)
        sweep = CheckResult(holds=False, status=VerdictStatus.EXACT,
                            witness={"f": str(one), "g": str(one), "fg": str(one)},
                            detail="P[[X]] is not proper")
    else:
        outcome = sweep_check(
            S, D - 1, partial(prime_extension_predicate, S, P.members),
            f"series prime extension sweep N={N} D={D}",
            symmetric=True, order=N, options=options
        )
        status = VerdictStatus.SAMPLED if outcome.sampled else VerdictStatus.BOUNDED
        if outcome.holds:
            sweep = CheckResult(holds=True, status=status, bound=D - 1,
                                detail=f"{outcome.pairs} unordered pairs of order {N}")
        else:
            witness = _series_witness(S, outcome, N)
            witness["prime"] = P.labels()
            sweep = CheckResult(holds=False, status=status, bound=D - 1, witness=witness,
                                detail="fg in P[[X]] with f, g outside")
    return EquivalenceReport(agrees=structural.holds == sweep.holds, structural=structural, sweep=sweep)


def series_nil_check(S: FiniteSemiring, N: int = 6, D: int = 2, K: Optional[int] = None,
                     options: Optional[SweepOptions] = None) -> CheckResult:
    """
    Series of support degree < D with coefficients in Nil(S) vanish by the
    K-th power; a series whose constant term is not nilpotent never does.
    """
    _support_degree(N, D)
    options = options or SweepOptions()
    K = nil_index(S) if K is None else K
    rows = family_rows_for(S, D - 1)
    if rows * K > options.budget:
        raise BudgetExceeded(f"series nil check N={N} D={D}", rows * K, options.budget)
    nil = radical_mask(S, S.zero_mask)
    family = build_family(S, D - 1)
    for i in range(family.size):
        f = TruncatedSeries.from_polynomial(family.polynomial(i), N)
        inside = f.support_mask() & ~nil == 0
        constant = f.coeffs.get((0,), S.zero)
        power = f ** K
        if inside and not power.is_zero():
            return CheckResult(holds=False, bound=D - 1, status=VerdictStatus.BOUNDED,
                               witness={"f": str(f), "f^K": str(power), "K": K},
                               detail="series over Nil(S) is not nilpotent")
        if not nil >> constant & 1 and power.is_zero():
            return CheckResult(holds=False, bound=D - 1, status=VerdictStatus.BOUNDED,
                               witness={"f": str(f), "K": K},
                               detail="series with a non-nilpotent constant term vanished")
    return CheckResult(holds=True, bound=D - 1, status=VerdictStatus.BOUNDED,
                       detail=f"{family.size} series of order {N}, K = {K}")
