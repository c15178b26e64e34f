"""
Golden suite behind the verify-paper command

Each case rebuilds one published example or cross-check from the catalog,
runs it through the library and compares against the expected value.
Rows are independent: an exception fails its own row and the suite moves
on.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from app.algebra.catalog import (
    b_n_i,
    chain_C,
    chain_lattice,
    idempotent_monoid_ext,
    lagrassa,
    nil_chain,
    power_set_lattice,
    product_semiring,
    small_catalog,
    truncation,
)
from app.algebra.computable import (
    arctic_spot_check,
    boolean_polynomials_spot_check,
    naturals_spot_check,
    tropical_spot_check,
)
from app.algebra.content_semialgebra import verify_content_semialgebra
from app.algebra.gaussian import (
    dm_semiring_equivalence,
    gaussian_sufficient,
    is_gaussian_up_to,
    is_weak_gaussian,
    mccoy_check,
    prime_extension_check,
    weak_gaussian_sweep,
)
from app.algebra.ideals import (
    ideal_generated,
    is_prime,
    is_subtractive,
    is_subtractive_semiring,
    lattice_summary,
    non_units_ideal,
    product_mask,
    radical,
    spec,
)
from app.algebra.polynomials import Polynomial, content, dm_exponent, parse_polynomial, star_map
from app.algebra.power_series import TruncatedSeries, ps_prime_extension_check, series_content_check
from app.algebra.semimodules import (
    content_equivalences,
    direct_sum,
    dm_semimodule_equivalence,
    is_subtractive_semimodule,
    regular_module,
)
from app.algebra.semiring import FiniteSemiring
from app.algebra.sweeps import SweepOptions
from app.algebra.zerodivisors import (
    is_primal,
    poly_transfer_check,
    property_A,
    very_few_zero_divisors,
    zd_degree,
)
from app.models.schemas import GaussianCertificate, GoldenRow, LabSettings
from app.utils.error_handler import ErrorContext, ErrorSeverity, error_handler
from app.utils.tracer import get_tracer

logger = logging.getLogger("SemiringLab.golden_suite")

Outcome = Tuple[bool, str]


@dataclass
class GoldenCase:
    name: str
    topic: str
    expected: str
    check: Callable[[], Outcome]


def _small_with_truncation() -> Dict[str, FiniteSemiring]:
    members = small_catalog(4)
    members["truncation(3)"] = truncation(3)
    return members


def _failures(results: Dict[str, bool]) -> Outcome:
    bad = [name for name, ok in results.items() if not ok]
    if bad:
        return False, "mismatch on " + ", ".join(bad)
    return True, f"{len(results)} members agree"


def _nil_chain_power(n: int) -> FiniteSemiring:
    return product_semiring([nil_chain(3)] * n)


class GoldenSuite:
    """Golden rows for every published example the library reproduces"""

    def __init__(self, settings: Optional[LabSettings] = None):
        self.settings = settings or LabSettings()
        self.options = SweepOptions.from_settings(self.settings)

    # -- acceptance rows ---------------------------------------------------

    def lagrassa_product(self) -> Outcome:
        S = lagrassa()
        f = Polynomial.from_coefficients(S, ["1", "u"])
        g = Polynomial.from_coefficients(S, ["u", "1"])
        fg = f * g
        cfg = content(fg)
        prod = product_mask(S, content(f).members, content(g).members)
        weak = is_weak_gaussian(S, self.settings.lattice_cap)
        observed = (f"fg = {fg}; c(fg) = {cfg!r}; c(f)c(g) = {S.labels(prod)}; "
                    f"sqrt = {radical(S, cfg)!r}; weak Gaussian = {weak.holds}")
        passed = (
            str(fg) == "u + u*X + u*X^2"
            and cfg.labels() == ["0", "u"]
            and prod == S.full_mask
            and radical(S, cfg).labels() == ["0", "u"]
            and not weak.holds
        )
        return passed, observed

    def nil_chain_dm(self) -> Outcome:
        S = nil_chain(4)
        f = Polynomial.from_coefficients(S, ["1", "1"])
        g = Polynomial.from_coefficients(S, ["b", "a", "b"])
        report = dm_exponent(f, g, bound=10)
        subtractive = is_subtractive_semiring(S)
        weak = is_weak_gaussian(S, self.settings.lattice_cap)
        observed = (f"subtractive = {subtractive.holds}; weak = {weak.holds}; exponent = {report.exponent}; "
                    f"{report.lhs} vs {report.rhs}")
        passed = (
            not subtractive.holds and subtractive.witness is not None
            and weak.holds
            and report.exponent is None
            and report.lhs == ["0", "a", "b"] and report.rhs == ["0", "b"]
        )
        return passed, observed

    def three_element_nil_chain(self) -> Outcome:
        S = nil_chain(3)
        cert = gaussian_sufficient(S, self.settings.lattice_cap)
        bounded = is_gaussian_up_to(S, 3, self.options)
        return (cert == GaussianCertificate.LOCAL_NIL_MAX and bounded.holds,
                f"certificate = {cert.value}; Gaussian up to D=3: {bounded.holds}")

    def weak_gaussian_characterization(self) -> Outcome:
        expected = {"b_n_i(4,2)": False, "b_n_i(3,1)": True, "truncation(3)": False, "chain_C": True}
        results = {}
        for name, S in _small_with_truncation().items():
            exact = is_weak_gaussian(S, self.settings.lattice_cap).holds
            swept = weak_gaussian_sweep(S, 3, options=self.options).holds
            results[name] = exact == swept and expected.get(name, exact) == exact
        return _failures(results)

    def dm_equivalence(self) -> Outcome:
        results = {name: dm_semiring_equivalence(S, 3, self.options).agrees
                   for name, S in small_catalog(4).items()}
        return _failures(results)

    def bdl_gaussian(self) -> Outcome:
        S = power_set_lattice(3)
        bounded = is_gaussian_up_to(S, 2, self.options)
        cert = gaussian_sufficient(S, self.settings.lattice_cap)
        return (bounded.holds and cert == GaussianCertificate.SUM_GENERATION,
                f"Gaussian up to D=2: {bounded.holds} ({bounded.detail}); certificate = {cert.value}")

    def tropical(self) -> Outcome:
        s = self.settings
        result = tropical_spot_check(s.tropical_pairs, s.tropical_coeff_max, s.tropical_degree,
                                     s.tropical_carrier, s.seed)
        return result.holds, result.detail

    def truncation_radical(self) -> Outcome:
        S = truncation(3)
        rad = radical(S, ideal_generated(S, ["1"]))
        subtractive = is_subtractive(S, rad)
        return (rad.labels() == ["-inf", "1", "2", "3"] and not subtractive.holds,
                f"sqrt(1) = {rad!r}; subtractive = {subtractive.holds}")

    def content_semialgebra_axioms(self) -> Outcome:
        results = {}
        for name, S in small_catalog(4).items():
            verdict = verify_content_semialgebra(S, 3, self.settings.lattice_cap, options=self.options)
            results[name] = verdict.overall == is_subtractive_semiring(S).holds
        return _failures(results)

    def power_series(self) -> Outcome:
        N, D = self.settings.series_order, self.settings.series_support_degree
        results = {}
        for name, S in small_catalog(4).items():
            report = series_content_check(S, N, D, lattice_cap=self.settings.lattice_cap, options=self.options)
            primes_agree = all(ps_prime_extension_check(S, P, N, D, self.options).agrees
                               for P in spec(S, self.settings.lattice_cap))
            results[name] = report.agrees and primes_agree
        return _failures(results)

    def zero_divisor_theory(self) -> Outcome:
        results = {}
        for name, S in small_catalog(4).items():
            results[name] = very_few_zero_divisors(S) and property_A(S, self.settings.property_a_cap).holds
        for n in (1, 2, 3):
            S = _nil_chain_power(n)
            cap = max(self.settings.lattice_cap, S.size)
            transfer = poly_transfer_check(S, 2 if n <= 2 else 1, cap, self.options)
            results[f"nil_chain(3)^{n}"] = (
                zd_degree(S, cap) == n
                and transfer.holds
                and transfer.witness["zd_degree"] == n
            )
        return _failures(results)

    def semimodule_dm(self) -> Outcome:
        results = {}
        for name, S in small_catalog(4).items():
            M = regular_module(S)
            cap = self.settings.lattice_cap
            results[name] = (
                dm_semimodule_equivalence(M, 2, self.options).agrees
                and content_equivalences(M, cap).holds
                and content_equivalences(direct_sum(M, M), cap).holds
            )
        return _failures(results)

    def mccoy(self) -> Outcome:
        results = {name: mccoy_check(S, 2, self.options).holds
                   for name, S in small_catalog(4).items() if is_subtractive_semiring(S).holds}
        return _failures(results)

    # -- further published examples ----------------------------------------

    def chain_C_structure(self) -> Outcome:
        S = chain_C()
        ideals = sorted(lattice_summary(S, self.settings.lattice_cap).ideals, key=len)
        subtractive = is_subtractive_semiring(S).holds
        cert = gaussian_sufficient(S, self.settings.lattice_cap)
        gaussian = is_gaussian_up_to(S, 3, self.options).holds
        weak = weak_gaussian_sweep(S, 3, options=self.options).holds
        passed = (
            ideals == [["0"], ["0", "u"], ["0", "1", "u"]]
            and subtractive and weak and gaussian
            and cert == GaussianCertificate.SUM_GENERATION
        )
        return passed, f"Id(C) = {ideals}; subtractive = {subtractive}; certificate = {cert.value}"

    def chain_lattice_certificate(self) -> Outcome:
        cert = gaussian_sufficient(chain_lattice(4), self.settings.lattice_cap)
        return cert == GaussianCertificate.SUM_GENERATION, f"certificate = {cert.value}"

    def b_n_i_prime(self) -> Outcome:
        S = b_n_i(4, 2)
        P = ideal_generated(S, ["0", "2", "3"])
        prime = is_prime(S, P)
        subtractive = is_subtractive(S, P).holds
        small = is_subtractive_semiring(b_n_i(3, 1)).holds
        return (prime and not subtractive and small and P.labels() == ["0", "2", "3"],
                f"P = {P!r}: prime = {prime}, subtractive = {subtractive}; B(3,1) subtractive = {small}")

    def nil_chain_local(self) -> Outcome:
        S = nil_chain(4)
        m = non_units_ideal(S)
        squared_zero = m is not None and product_mask(S, m.members, m.members) == S.zero_mask
        f = Polynomial.from_coefficients(S, ["1", "1"])
        g = Polynomial.from_coefficients(S, ["b", "a", "b"])
        fg = f * g
        axiom3 = verify_content_semialgebra(S, 3, self.settings.lattice_cap, options=self.options).axiom3
        passed = (
            m is not None and m.labels() == ["0", "a", "b"] and squared_zero
            and str(fg) == "b + b*X + b*X^2 + b*X^3"
            and content(g).labels() == ["0", "a", "b"]
            and not axiom3.holds
        )
        return passed, f"m = {m!r}; m^2 = (0): {squared_zero}; fg = {fg}; DM axiom: {axiom3.holds}"

    def monoid_extension_prime(self) -> Outcome:
        S = idempotent_monoid_ext(
            {"elements": ["0", "p", "q"], "add": [[0, 1, 2], [1, 1, 2], [2, 2, 2]], "zero": 0}
        )
        primes = spec(S, self.settings.lattice_cap)
        labels = [p.labels() for p in primes]
        return labels == [["0", "p", "q"]], f"Spec = {labels}"

    def lagrassa_gaussian_and_primes(self) -> Outcome:
        S = lagrassa()
        bounded = is_gaussian_up_to(S, 2, self.options)
        swept = weak_gaussian_sweep(S, 2, options=self.options)
        ext = prime_extension_check(S, ["0", "u"], 2, options=self.options)
        f = Polynomial.from_coefficients(S, ["1", "u"])
        passed = (
            not bounded.holds and not swept.holds
            and is_prime(S, ["0", "u"]) and not ext.structural.holds and not ext.sweep.holds and ext.agrees
            and content(f).is_whole()
        )
        return passed, (f"Gaussian D=2: {bounded.holds}; weak sweep D=2: {swept.holds}; "
                        f"P[X] prime: {ext.sweep.holds}")

    def monomial_and_fold(self) -> Outcome:
        S = lagrassa()
        mono = dm_exponent(Polynomial.from_coefficients(S, ["0", "u"]), Polynomial.from_coefficients(S, ["u", "1"]))
        C = chain_C()
        f = parse_polynomial(C, "1 + u*X + X*Y", ["X", "Y"])
        g = parse_polynomial(C, "u + Y + u*X^2*Y", ["X", "Y"])
        m = f.degree_in("X") + g.degree_in("X") + 1
        folded = star_map(f * g, "X", "Y", m) == star_map(f, "X", "Y", m) * star_map(g, "X", "Y", m)
        return mono.exponent == 0 and folded, f"monomial exponent = {mono.exponent}; (fg)* = f*g*: {folded}"

    def semimodule_examples(self) -> Outcome:
        nil = regular_module(nil_chain(4))
        chain = regular_module(chain_C())
        nil_report = dm_semimodule_equivalence(nil, 2, self.options)
        chain_report = dm_semimodule_equivalence(chain, 2, self.options)
        passed = (
            not is_subtractive_semimodule(nil).holds
            and nil_report.agrees and not nil_report.structural.holds
            and chain_report.agrees and chain_report.structural.holds
        )
        return passed, f"nil_chain(4): agrees = {nil_report.agrees}; chain_C: agrees = {chain_report.agrees}"

    def series_examples(self) -> Outcome:
        N, D = self.settings.series_order, self.settings.series_support_degree
        lag = series_content_check(lagrassa(), N, D, options=self.options)
        nil = series_content_check(nil_chain(4), N, D, options=self.options)
        T = nil_chain(4)
        vanish = (TruncatedSeries.from_coefficients(T, ["a", "a"], 3)
                  * TruncatedSeries.from_coefficients(T, ["b", "b"], 3)).is_zero()
        C = chain_C()
        square = TruncatedSeries.from_coefficients(C, ["1", "u"], 2) ** 2
        square_ok = square == TruncatedSeries.from_coefficients(C, ["1", "u"], 2)
        passed = not lag.sweep.holds and nil.sweep.holds and vanish and square_ok
        return passed, (f"lagrassa containment: {lag.sweep.holds}; nil_chain(4): {nil.sweep.holds}; "
                        f"(a+aX)(b+bX) = 0: {vanish}; (1+uX)^2 = {square}")

    def primal_transfer(self) -> Outcome:
        S = nil_chain(3)
        transfer = poly_transfer_check(S, 2, self.settings.lattice_cap, self.options)
        zd = zd_degree(S, self.settings.lattice_cap)
        passed = is_primal(S) and property_A(S).holds and zd == 1 and transfer.holds
        return passed, f"primal = {is_primal(S)}; zd = {zd}; transfer: {transfer.detail}"

    def computable_tier(self) -> Outcome:
        checks = {
            "arctic": arctic_spot_check(),
            "naturals": naturals_spot_check(),
            "boolean polynomials": boolean_polynomials_spot_check(),
        }
        return _failures({name: result.holds for name, result in checks.items()})

    # -- runner ------------------------------------------------------------

    def cases(self) -> List[GoldenCase]:
        return [
            GoldenCase("lagrassa_product", "weak Gaussian",
                       "fg = u + uX + uX^2, c(fg) = {0,u}, c(f)c(g) = S, not weak Gaussian",
                       self.lagrassa_product),
            GoldenCase("nil_chain_dm", "Dedekind-Mertens",
                       "nil_chain(4) not subtractive, weak Gaussian, no DM exponent ({0,a,b} vs {0,b})",
                       self.nil_chain_dm),
            GoldenCase("three_element_nil_chain", "Gaussian",
                       "nil_chain(3): LocalNilMax and Gaussian up to D=3", self.three_element_nil_chain),
            GoldenCase("weak_gaussian_characterization", "weak Gaussian",
                       "prime subtractivity agrees with the D=3 containment sweep",
                       self.weak_gaussian_characterization),
            GoldenCase("dm_equivalence", "Dedekind-Mertens",
                       "subtractive iff DM exponent <= deg g at D=3", self.dm_equivalence),
            GoldenCase("bdl_gaussian", "Gaussian",
                       "power_set_lattice(3) Gaussian at D=2, SumGeneration", self.bdl_gaussian),
            GoldenCase("tropical", "computable", "tropical Gaussian spot checks pass", self.tropical),
            GoldenCase("truncation_radical", "radicals",
                       "sqrt(1) = T_3 - {0}, not subtractive", self.truncation_radical),
            GoldenCase("content_semialgebra_axioms", "content semialgebra",
                       "S[X] content semialgebra iff S subtractive", self.content_semialgebra_axioms),
            GoldenCase("power_series", "power series",
                       "series content and prime extension agree with prime subtractivity", self.power_series),
            GoldenCase("zero_divisor_theory", "zero-divisors",
                       "very few zero-divisors, Property (A), zd(nil_chain(3)^n) = n", self.zero_divisor_theory),
            GoldenCase("semimodule_dm", "semimodules",
                       "semimodule DM and content equivalences for S and S + S", self.semimodule_dm),
            GoldenCase("mccoy", "McCoy", "McCoy's property on subtractive members", self.mccoy),
            GoldenCase("chain_C_structure", "ideals",
                       "Id(C) = {(0), {0,u}, C}, subtractive, SumGeneration", self.chain_C_structure),
            GoldenCase("chain_lattice_certificate", "Gaussian",
                       "chain_lattice(4): SumGeneration", self.chain_lattice_certificate),
            GoldenCase("b_n_i_prime", "ideals",
                       "B(4,2) - {1} prime and not subtractive; B(3,1) subtractive", self.b_n_i_prime),
            GoldenCase("nil_chain_local", "ideals",
                       "nil_chain(4) local with m^2 = (0), fg = b + bX + bX^2 + bX^3", self.nil_chain_local),
            GoldenCase("monoid_extension_prime", "ideals",
                       "P is the only prime of P + {1}", self.monoid_extension_prime),
            GoldenCase("lagrassa_gaussian_and_primes", "Gaussian",
                       "not Gaussian at D=2; {0,u}[X] not prime", self.lagrassa_gaussian_and_primes),
            GoldenCase("monomial_and_fold", "polynomials",
                       "monomial DM exponent 0; (fg)* = f*g*", self.monomial_and_fold),
            GoldenCase("semimodule_examples", "semimodules",
                       "nil_chain(4) agrees false, chain_C agrees true", self.semimodule_examples),
            GoldenCase("series_examples", "power series",
                       "lagrassa containment fails, nil_chain(4) holds, series products", self.series_examples),
            GoldenCase("primal_transfer", "zero-divisors",
                       "nil_chain(3) primal with Property (A), zd = 1", self.primal_transfer),
            GoldenCase("computable_tier", "computable",
                       "arctic, naturals and B[X] spot checks pass", self.computable_tier),
        ]

    def run(self, only: Optional[List[str]] = None) -> List[GoldenRow]:
        tracer = get_tracer()
        rows: List[GoldenRow] = []
        for case in self.cases():
            if only and case.name not in only:
                continue
            row = GoldenRow(name=case.name, topic=case.topic, expected=case.expected)
            started = time.time()
            try:
                row.passed, row.observed = case.check()
            except Exception as e:
                error_handler.handle_error(e, ErrorContext(
                    operation=case.name,
                    component="verify_golden",
                    fallback_available=False,
                    user_message=f"golden row {case.name} raised",
                    technical_details=f"{type(e).__name__}: {e}"
                ), ErrorSeverity.HIGH)
                row.passed, row.observed = False, f"{type(e).__name__}: {e}"
            logger.info(f"{case.name}: {'pass' if row.passed else 'FAIL'} in {time.time() - started:.2f}s")
            if tracer:
                tracer.golden_row(case.name, row.passed, row.observed)
            rows.append(row)
        return rows


def print_table(rows: List[GoldenRow]):
    print("\n" + "="*60)
    print("📋 GOLDEN SUITE")
    print("="*60)
    for row in rows:
        mark = "✅" if row.passed else "❌"
        print(f"{mark} {row.name:<32} {row.topic}")
        if not row.passed:
            print(f"     expected: {row.expected}")
            print(f"     observed: {row.observed}")
    passed = sum(r.passed for r in rows)
    print("="*60)
    print(f"{passed}/{len(rows)} rows passed")
    print("="*60 + "\n")
