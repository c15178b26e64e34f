"""
Computable tier: semirings with infinite carriers that only get
arithmetic, a closed-form ideal law and bounded spot checks.

  * tropical  (N0 + {+inf}, min, +): ideals are intervals [a, +inf]
  * arctic    (N0 + {-inf}, max, +)
  * naturals  (N0, +, .)
  * B[X]      polynomials over the Boolean semiring
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.models.schemas import CheckResult, VerdictStatus

logger = logging.getLogger("SemiringLab.computable")

INF = math.inf
NEG_INF = -math.inf


class TropicalSemiring:
    """(N0 + {+inf}, min, +) with zero = +inf and one = 0"""

    zero = INF
    one = 0

    @staticmethod
    def add(a, b):
        return min(a, b)

    @staticmethod
    def mul(a, b):
        return a + b  # inf absorbs

    @staticmethod
    def in_ideal(x, gens: Iterable) -> bool:
        """Interval law: x in (a1..an) iff x >= min ai; +inf lies in every ideal"""
        gens = [g for g in gens if g != INF]
        if x == INF:
            return True
        return bool(gens) and x >= min(gens)

    @staticmethod
    def brute_force_member(x, gens: Sequence, carrier: int) -> bool:
        """
        x = min_i (s_i + a_i) for some scalars s_i in [0, carrier] + {+inf}.
        Exhaustive over the bounded carrier.
        """
        if x == INF:
            return True
        scalars = list(range(carrier + 1)) + [INF]
        for choice in itertools.product(scalars, repeat=len(gens)):
            total = INF
            for s, a in zip(choice, gens):
                total = min(total, s + a)
            if total == x:
                return True
        return False


@dataclass(frozen=True)
class TropicalIdeal:
    """[lower, +inf]; lower = +inf is the zero ideal"""
    lower: float

    def __contains__(self, x) -> bool:
        return x == INF or x >= self.lower

    def is_zero(self) -> bool:
        return self.lower == INF

    def __mul__(self, other: "TropicalIdeal") -> "TropicalIdeal":
        return TropicalIdeal(self.lower + other.lower)


@dataclass(frozen=True)
class TropicalPolynomial:
    """Finitely many terms {degree: coefficient}; +inf coefficients are dropped"""
    coeffs: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(k): v for k, v in self.coeffs.items() if v != INF})

    @classmethod
    def from_list(cls, coeffs: Sequence) -> "TropicalPolynomial":
        return cls({k: c for k, c in enumerate(coeffs)})

    def __mul__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        out: Dict[int, float] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = min(out.get(i + j, INF), a + b)
        return TropicalPolynomial(out)

    def __add__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = min(out.get(k, INF), v)
        return TropicalPolynomial(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> TropicalIdeal:
        return TropicalIdeal(min(self.coeffs.values(), default=INF))

    def __str__(self) -> str:
        if not self.coeffs:
            return "+inf"
        return " (+) ".join(f"{c}" if k == 0 else f"{c}.X^{k}" for k, c in sorted(self.coeffs.items()))


def tropical_gaussian_check(f: TropicalPolynomial, g: TropicalPolynomial) -> bool:
    """min coeff(fg) = min coeff(f) + min coeff(g), i.e. c(fg) = c(f)c(g)"""
    return (f * g).content() == f.content() * g.content()


def random_tropical_pairs(count: int, coeff_max: int, degree: int,
                          seed: int) -> List[Tuple[TropicalPolynomial, TropicalPolynomial]]:
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        polys = []
        for _ in range(2):
            d = int(rng.integers(0, degree + 1))
            values = rng.integers(0, coeff_max + 1, size=d + 1)
            # some terms absent (+inf)
            absent = rng.random(d + 1) < 0.2
            polys.append(TropicalPolynomial.from_list([INF if a else int(v) for v, a in zip(values, absent)]))
        pairs.append((polys[0], polys[1]))
    return pairs


def tropical_spot_check(pairs: int = 1000, coeff_max: int = 20, degree: int = 5,
                        carrier: int = 12, seed: int = 0) -> CheckResult:
    """Gaussian identity on random pairs plus interval law vs brute force"""
    for f, g in random_tropical_pairs(pairs, coeff_max, degree, seed):
        if not tropical_gaussian_check(f, g):
            return CheckResult(
                holds=False, status=VerdictStatus.SAMPLED,
                witness={"f": str(f), "g": str(g)}, detail="min-coefficient additivity fails"
            )

    values = list(range(carrier + 1)) + [INF]
    for r in (1, 2):
        for gens in itertools.product(values, repeat=r):
            for x in values:
                if TropicalSemiring.in_ideal(x, gens) != TropicalSemiring.brute_force_member(x, gens, carrier):
                    return CheckResult(
                        holds=False, status=VerdictStatus.BOUNDED, bound=carrier,
                        witness={"x": x, "generators": list(gens)},
                        detail="interval law disagrees with linear combinations"
                    )
    return CheckResult(
        holds=True, status=VerdictStatus.SAMPLED, bound=carrier,
        detail=f"{pairs} random pairs; interval law on carrier [0, {carrier}]"
    )


# ---------------------------------------------------------------------------
# Arctic semiring (N0 + {-inf}, max, +)

def arctic_ideal_lower(gens: Iterable) -> float:
    """(a1..an) = {x >= min ai} + {-inf}"""
    gens = [g for g in gens if g != NEG_INF]
    return min(gens) if gens else INF


def arctic_radical_lower(lower: float) -> float:
    """sqrt of {x >= k}: every x >= 1 once k >= 1"""
    if lower == INF:
        return INF
    return 0 if lower == 0 else 1


def arctic_poly_mul(f: Sequence, g: Sequence) -> List:
    out = [NEG_INF] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = max(out[i + j], a + b)
    return out


def arctic_spot_check(k: int = 3, bound: int = 12) -> CheckResult:
    """
    sqrt((k)) = N + {-inf} is prime, and (1, 0) shows it is not subtractive;
    f = 1 + 0X, g = 0 + 1X then give c(f)c(g) outside sqrt(c(fg)).
    """
    lower = arctic_radical_lower(arctic_ideal_lower([k]))
    in_rad = lambda x: x == NEG_INF or x >= lower  # noqa: E731
    carrier = list(range(bound + 1))
    prime = all(in_rad(a) or in_rad(b) for a in carrier for b in carrier if in_rad(a + b))
    subtractive_fails = in_rad(1) and in_rad(max(1, 0)) and not in_rad(0)

    f, g = [1, 0], [0, 1]
    fg = arctic_poly_mul(f, g)
    rad_fg = arctic_radical_lower(arctic_ideal_lower(fg))
    cfcg = arctic_ideal_lower(f) + arctic_ideal_lower(g)
    escapes = cfcg < rad_fg
    holds = lower == 1 and prime and subtractive_fails and escapes
    return CheckResult(
        holds=holds, status=VerdictStatus.BOUNDED, bound=bound,
        witness={"f": "1 (+) 0.X", "g": "0 (+) 1.X", "c(f)c(g)": f"[{cfcg}, inf)", "sqrt c(fg)": f"[{rad_fg}, inf)"},
        detail="arctic semiring is not weak Gaussian"
    )


# ---------------------------------------------------------------------------
# N0 under (+, .)

def naturals_spot_check(bound: int = 30) -> CheckResult:
    """
    P = N0 - {1} is prime but 2 + 1 = 3 breaks subtractivity; f = 2 + X,
    g = 1 + 3X has c(fg) inside P while 1 = 1.1 lies in c(f)c(g).
    """
    in_p = lambda x: x != 1  # noqa: E731
    prime = all(in_p(a) or in_p(b) for a in range(bound) for b in range(bound) if in_p(a * b))
    not_subtractive = in_p(2) and in_p(2 + 1) and not in_p(1)
    f, g = [2, 1], [1, 3]
    fg = [0] * 3
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            fg[i + j] += a * b
    # ideals are additive-multiplicative closures; sqrt(c(fg)) is inside the prime P
    fg_in_p = all(in_p(c) for c in fg)
    product_escapes = not in_p(f[1] * g[0])
    holds = prime and not_subtractive and fg_in_p and product_escapes
    return CheckResult(
        holds=holds, status=VerdictStatus.BOUNDED, bound=bound,
        witness={"f": "2 + X", "g": "1 + 3*X", "fg": " + ".join(f"{c}*X^{k}" for k, c in enumerate(fg))},
        detail="N0 is not weak Gaussian"
    )


# ---------------------------------------------------------------------------
# B[X]

def boolean_polynomials_spot_check(degree: int = 3) -> CheckResult:
    """
    In B[X], P = B[X] - {1} is prime (fg = 1 forces f = g = 1) while X and
    X + 1 lie in P and 1 does not, so P is not subtractive.
    """
    from app.algebra.catalog import boolean
    from app.algebra.polynomials import Polynomial

    B = boolean()
    one = Polynomial.constant(B, "1")
    polys = [
        Polynomial.from_coefficients(B, [str(b) for b in bits])
        for bits in itertools.product((0, 1), repeat=degree + 1)
    ]
    for f in polys:
        for g in polys:
            if f * g == one and not (f == one and g == one):
                return CheckResult(
                    holds=False, status=VerdictStatus.BOUNDED, bound=degree,
                    witness={"f": str(f), "g": str(g)}, detail="unit product outside the identity"
                )
    x = Polynomial.from_coefficients(B, ["0", "1"])
    x1 = Polynomial.from_coefficients(B, ["1", "1"])
    not_subtractive = x != one and x1 != one and x + one == x1
    return CheckResult(
        holds=not_subtractive, status=VerdictStatus.BOUNDED, bound=degree,
        witness={"a": str(x), "a+b": str(x1), "b": str(one)},
        detail="B[X] - {1} is a non-subtractive prime"
    )
