"""
Sparse multi-indeterminate (and Laurent) polynomials over finite semirings,
content ideals, the star map and the Dedekind-Mertens exponent.
"""

import logging
import re
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.algebra.ideals import Ideal, generate_mask, product_mask
from app.algebra.semiring import FiniteSemiring, mask_of
from app.models.schemas import DMReport
from app.utils.error_handler import BadParams, FoldTooSmall, InputParseError, MixedSemirings

logger = logging.getLogger("SemiringLab.polynomials")

Exponents = Tuple[int, ...]
Coefficient = Union[str, int]


def monomial_key(e: Exponents) -> Tuple:
    return (sum(abs(x) for x in e), e)


def render_monomial(variables: Sequence[str], e: Exponents) -> str:
    parts = []
    for name, k in zip(variables, e):
        if k == 0:
            continue
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def render_terms(variables: Sequence[str], terms: Mapping[Exponents, int],
                 label: Callable[[int], str], one: Optional[int], zero_label: str) -> str:
    if not terms:
        return zero_label
    out = []
    for e in sorted(terms, key=monomial_key):
        mono = render_monomial(variables, e)
        c = terms[e]
        if not mono:
            out.append(label(c))
        elif one is not None and c == one:
            out.append(mono)
        else:
            out.append(f"{label(c)}*{mono}")
    return " + ".join(out)


class Polynomial:
    """
    Immutable sparse polynomial. ``terms`` maps exponent vectors aligned
    with ``variables`` to nonzero coefficient indices; negative exponents
    are allowed only on variables listed in ``laurent``.
    """

    __slots__ = ("semiring", "variables", "laurent", "terms")

    def __init__(self, semiring: FiniteSemiring, terms: Mapping[Exponents, Coefficient],
                 variables: Sequence[str] = ("X",), laurent: Iterable[str] = ()):
        variables = tuple(variables)
        laurent = frozenset(laurent)
        if len(set(variables)) != len(variables):
            raise BadParams(f"repeated indeterminate in {variables}")
        if not laurent <= set(variables):
            raise BadParams(f"Laurent indeterminates {sorted(laurent - set(variables))} not declared")
        clean: Dict[Exponents, int] = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != len(variables):
                raise BadParams(f"exponent {e} does not match indeterminates {variables}")
            for name, k in zip(variables, e):
                if k < 0 and name not in laurent:
                    raise BadParams(f"negative exponent on non-Laurent indeterminate {name}")
            c = semiring.index(c)
            if c != semiring.zero:
                clean[e] = c
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "laurent", laurent)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, key, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coefficients(cls, S: FiniteSemiring, coeffs: Sequence[Coefficient],
                          variable: str = "X") -> "Polynomial":
        """a_0 + a_1 X + ... from a dense coefficient list"""
        return cls(S, {(k,): c for k, c in enumerate(coeffs)}, (variable,))

    @classmethod
    def constant(cls, S: FiniteSemiring, c: Coefficient, variables: Sequence[str] = ("X",),
                 laurent: Iterable[str] = ()) -> "Polynomial":
        return cls(S, {(0,) * len(tuple(variables)): c}, variables, laurent)

    @classmethod
    def zero(cls, S: FiniteSemiring, variables: Sequence[str] = ("X",)) -> "Polynomial":
        return cls(S, {}, variables)

    # -- views -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> List[int]:
        """Coefficients, as a multiset in monomial order"""
        return [self.terms[e] for e in sorted(self.terms, key=monomial_key)]

    def support_mask(self) -> int:
        return mask_of(self.terms.values())

    def degree(self) -> Optional[int]:
        """Total degree; None for the zero polynomial"""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, variable: str) -> Optional[int]:
        if not self.terms:
            return None
        k = self.variables.index(variable)
        return max(e[k] for e in self.terms)

    def coefficient(self, e: Exponents) -> int:
        return self.terms.get(tuple(e), self.semiring.zero)

    def monomials(self) -> List[Dict[str, int]]:
        return [
            {name: k for name, k in zip(self.variables, e) if k}
            for e in sorted(self.terms, key=monomial_key)
        ]

    def coefficients_in(self, mask: int) -> bool:
        """Every coefficient lies in the subset ``mask``"""
        return all(mask >> c & 1 for c in self.terms.values())

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if self.semiring is not other.semiring:
            raise MixedSemirings(f"polynomials over {self.semiring!r} and {other.semiring!r}")
        if self.variables == other.variables:
            if self.laurent == other.laurent:
                return self, other
        names = self.variables + tuple(v for v in other.variables if v not in self.variables)
        laurent = self.laurent | other.laurent
        return self.extend(names, laurent), other.extend(names, laurent)

    def extend(self, variables: Sequence[str], laurent: Iterable[str] = ()) -> "Polynomial":
        """Same polynomial in a larger set of indeterminates"""
        variables = tuple(variables)
        pos = [self.variables.index(v) if v in self.variables else None for v in variables]
        terms = {
            tuple(e[p] if p is not None else 0 for p in pos): c
            for e, c in self.terms.items()
        }
        return Polynomial(self.semiring, terms, variables, frozenset(laurent) | self.laurent)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        f, g = self._aligned(other)
        S = f.semiring
        terms = dict(f.terms)
        for e, c in g.terms.items():
            terms[e] = int(S.add[terms[e], c]) if e in terms else c
        return Polynomial(S, terms, f.variables, f.laurent)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        f, g = self._aligned(other)
        S = f.semiring
        terms: Dict[Exponents, int] = {}
        for e1, a in f.terms.items():
            for e2, b in g.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                ab = int(S.mul[a, b])
                terms[e] = int(S.add[terms[e], ab]) if e in terms else ab
        return Polynomial(S, terms, f.variables, f.laurent)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.semiring, self.semiring.one, self.variables, self.laurent)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, s: Coefficient) -> "Polynomial":
        S = self.semiring
        s = S.index(s)
        return Polynomial(S, {e: int(S.mul[s, c]) for e, c in self.terms.items()}, self.variables, self.laurent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.semiring is not other.semiring:
            return False
        f, g = self._aligned(other)
        return f.terms == g.terms

    def __hash__(self) -> int:
        return hash((id(self.semiring), tuple(sorted(self.terms.values()))))

    def __reduce__(self):
        return (Polynomial, (self.semiring, self.terms, self.variables, self.laurent))

    def __str__(self) -> str:
        S = self.semiring
        return render_terms(self.variables, self.terms, S.label, S.one, S.label(S.zero))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "variables": list(self.variables),
            "laurent": sorted(self.laurent),
            "terms": [
                {"monomial": mono, "coeff": self.semiring.label(self.terms[e])}
                for mono, e in zip(self.monomials(), sorted(self.terms, key=monomial_key))
            ],
        }

    @classmethod
    def from_json(cls, S: FiniteSemiring, data: Mapping[str, Any]) -> "Polynomial":
        try:
            raw_terms = data["terms"]
            laurent = list(data.get("laurent", []))
            variables = list(data.get("variables", []))
            for t in raw_terms:
                for v in t["monomial"]:
                    if v not in variables:
                        variables.append(v)
            if not variables:
                variables = ["X"]
            terms: Dict[Exponents, int] = {}
            for t in raw_terms:
                e = tuple(int(t["monomial"].get(v, 0)) for v in variables)
                c = S.index(t["coeff"])
                terms[e] = int(S.add[terms[e], c]) if e in terms else c
        except (KeyError, TypeError, AttributeError) as e:
            raise InputParseError(f"malformed polynomial JSON: {e}") from e
        return cls(S, terms, variables, laurent)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


_POWER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_polynomial(S: FiniteSemiring, text: str, variables: Optional[Sequence[str]] = None,
                     laurent: Iterable[str] = ()) -> Polynomial:
    """
    Parse 'u + u*X + u*X^2' style text. Terms are separated by ' + ';
    factors by '*'. A factor that is an element label is the coefficient.
    """
    laurent = list(laurent)
    raw_terms = [t.strip() for t in text.split(" + ")] if text.strip() else []
    parsed: List[Tuple[int, Dict[str, int]]] = []
    names: List[str] = list(variables or [])
    for term in raw_terms:
        coeff = S.one
        powers: Dict[str, int] = {}
        if term in S.elements:
            parsed.append((S.index(term), {}))
            continue
        for factor in term.split("*"):
            factor = factor.strip()
            if factor in S.elements:
                coeff = S.index(factor)
                continue
            match = _POWER.match(factor)
            if not match:
                raise InputParseError(f"cannot read factor '{factor}' in '{text}'")
            name, k = match.group(1), int(match.group(2) or 1)
            powers[name] = powers.get(name, 0) + k
            if name not in names:
                names.append(name)
        parsed.append((coeff, powers))
    if not names:
        names = ["X"]
    terms: Dict[Exponents, int] = {}
    for c, powers in parsed:
        e = tuple(powers.get(v, 0) for v in names)
        terms[e] = int(S.add[terms[e], c]) if e in terms else c
    return Polynomial(S, terms, names, laurent)


def content(f) -> Any:
    """Ideal generated by the coefficients of f"""
    from app.algebra.computable import TropicalPolynomial

    if isinstance(f, TropicalPolynomial):
        return f.content()
    S = f.semiring
    return Ideal(S, generate_mask(S, f.support_mask()))


def star_map(h: Polynomial, target: str, folded: str, m: int) -> Polynomial:
    """
    h* = h with ``folded`` replaced by target^m. Requires m > deg_target(h);
    the support (coefficient multiset) is unchanged.
    """
    if target not in h.variables or folded not in h.variables or target == folded:
        raise BadParams(f"star_map needs two distinct indeterminates of {h.variables}")
    if target in h.laurent or folded in h.laurent:
        raise BadParams("star_map folds ordinary indeterminates only")
    deg = h.degree_in(target) or 0
    if m <= deg:
        raise FoldTooSmall(f"m = {m} must exceed deg_{target}(h) = {deg}")

    t = h.variables.index(target)
    k = h.variables.index(folded)
    keep = [i for i in range(len(h.variables)) if i != k]
    terms: Dict[Exponents, int] = {}
    for e, c in h.terms.items():
        new = list(e)
        new[t] = e[t] + m * e[k]
        key = tuple(new[i] for i in keep)
        if key in terms:
            raise AssertionError(f"star_map collision at {key}; m = {m} too small")
        terms[key] = c
    out = Polynomial(h.semiring, terms, [h.variables[i] for i in keep], h.laurent)
    assert sorted(out.support()) == sorted(h.support())
    return out


def dm_search(S: FiniteSemiring, cf: int, cg: int, cfg: int, bound: Optional[int],
              act: Callable[[int, int], int]) -> Tuple[Optional[int], int, bool, int, int]:
    """
    Least m with c(f)^(m+1).c(g) = c(f)^m.c(fg) where ``act`` multiplies an
    ideal mask into the content lattice. Returns
    (exponent, last m tried, exhausted, lhs, rhs). The powers c(f)^m live in
    a finite lattice, so a repeated power settles the answer for every m.
    """
    power = S.full_mask
    seen = set()
    m = 0
    while True:
        nxt = product_mask(S, power, cf)
        lhs = act(nxt, cg)
        rhs = act(power, cfg)
        if lhs == rhs:
            return m, m, False, lhs, rhs
        seen.add(power)
        if bound is not None and m >= bound:
            return None, m, False, lhs, rhs
        if nxt in seen:
            return None, m, True, lhs, rhs
        power = nxt
        m += 1


def dm_exponent(f: Polynomial, g: Polynomial, bound: Optional[int] = None) -> DMReport:
    """
    Dedekind-Mertens exponent of (f, g). ``bound`` caps the search;
    None searches until the powers of c(f) repeat.
    """
    S = f.semiring
    if g.semiring is not S:
        raise MixedSemirings("dm_exponent operands over different semirings")
    if g.is_zero():
        return DMReport(exponent=0, bound_used=0, lhs=S.labels(S.zero_mask), rhs=S.labels(S.zero_mask))
    cf = generate_mask(S, f.support_mask())
    cg = generate_mask(S, g.support_mask())
    cfg = generate_mask(S, (f * g).support_mask())
    exponent, last, exhausted, lhs, rhs = dm_search(
        S, cf, cg, cfg, bound, lambda a, b: product_mask(S, a, b)
    )
    return DMReport(
        exponent=exponent,
        bound_used=last,
        exhausted=exhausted,
        lhs=S.labels(lhs),
        rhs=S.labels(rhs)
    )
