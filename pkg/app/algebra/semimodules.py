"""
Finite semimodules over finite semirings: subsemimodules, subtractivity,
content semimodules and the semimodule Dedekind-Mertens lemma.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from app.algebra.ideals import (
    DEFAULT_LATTICE_CAP,
    Ideal,
    additive_closure,
    enumerate_closed_sets,
    enumerate_ideals,
    generate_mask,
    subtractive_witness,
)
from app.algebra.polynomials import Exponents, Polynomial, dm_search, render_terms
from app.algebra.semiring import FiniteSemiring, bits, mask_of, validate_semiring
from app.algebra.sweeps import SweepOptions, sweep_check
from app.models.schemas import (
    CheckResult,
    DMReport,
    EquivalenceReport,
    SemimoduleTables,
    VerdictStatus,
)
from app.utils.error_handler import (
    AxiomViolation,
    AxiomViolationError,
    BadParams,
    CapExceeded,
    InputParseError,
    MixedSemirings,
)

logger = logging.getLogger("SemiringLab.semimodules")


@dataclass(frozen=True, eq=False)
class FiniteSemimodule:
    """(M, +, 0) with scalar[s, m] = s.m over ``semiring``"""
    semiring: FiniteSemiring
    elements: Tuple[str, ...]
    add: np.ndarray
    scalar: np.ndarray
    zero: int
    name: str = ""
    cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        for attr in ("add", "scalar"):
            table = np.array(getattr(self, attr), dtype=np.int64)
            table.setflags(write=False)
            object.__setattr__(self, attr, table)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.elements)})

    def __getstate__(self):
        state = dict(self.__dict__)
        state["cache"] = {}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

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
                raise InputParseError(f"element index {label} out of range for {self.name or 'semimodule'}")
            return int(label)
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputParseError(f"unknown element '{label}' in {self.name or 'semimodule'}") from None

    def label(self, i: int) -> str:
        return self.elements[int(i)]

    def labels(self, members: Union[int, Iterable[int]]) -> List[str]:
        if isinstance(members, int):
            members = bits(members)
        return [self.elements[i] for i in sorted(int(m) for m in members)]

    def mask(self, labels: Iterable[Union[str, int]]) -> int:
        return mask_of(self.index(x) for x in labels)

    def ideal_act(self, ideal: int, sub: int) -> int:
        """IN: sums of a.n with a in I, n in N"""
        memo = self.cache.setdefault("act", {})
        key = (ideal, sub)
        hit = memo.get(key)
        if hit is not None:
            return hit
        start = self.zero_mask
        a, n = bits(ideal), bits(sub)
        if a and n:
            start |= mask_of(np.unique(self.scalar[np.ix_(a, n)]))
        out = additive_closure(self.add, start)
        memo[key] = out
        return out

    def generate_mask(self, gens: int) -> int:
        """Subsemimodule generated by ``gens``"""
        return self.ideal_act(self.semiring.full_mask, gens)

    def tables(self) -> SemimoduleTables:
        return SemimoduleTables(
            semiring=self.semiring.tables().model_dump(),
            elements=list(self.elements),
            add=self.add.tolist(),
            scalar=self.scalar.tolist(),
            zero=self.zero
        )

    def __repr__(self) -> str:
        return f"FiniteSemimodule({self.name or '?'} over {self.semiring.name or '?'}, |M|={self.size})"


def semimodule_axiom_violations(S: FiniteSemiring, elements: Sequence[str], add: np.ndarray,
                                scalar: np.ndarray, zero: int) -> List[AxiomViolation]:
    n = len(elements)
    idx = np.arange(n)
    A, T = add, scalar
    found: List[AxiomViolation] = []

    def record(name: str, bad: np.ndarray, labels_of):
        if bad.any():
            witness = tuple(int(x) for x in np.argwhere(bad)[0])
            found.append(AxiomViolation(name, tuple(lab(i) for lab, i in zip(labels_of, witness))))

    m_label = lambda i: elements[i]  # noqa: E731
    s_label = S.label
    record("add_commutativity", A != A.T, (m_label, m_label))
    record("add_associativity", A[A] != A[idx[:, None, None], A[None, :, :]], (m_label,) * 3)
    record("add_identity", A[zero] != idx, (m_label,))
    # s(m + n) = sm + sn
    record("scalar_over_sum", T[:, A] != A[T[:, :, None], T[:, None, :]], (s_label, m_label, m_label))
    # (s + t)m = sm + tm
    record("sum_over_scalar", T[S.add] != A[T[:, None, :], T[None, :, :]], (s_label, s_label, m_label))
    # (st)m = s(tm)
    record("scalar_associativity", T[S.mul] != T[np.arange(S.size)[:, None, None], T[None, :, :]],
           (s_label, s_label, m_label))
    record("unit_action", T[S.one] != idx, (m_label,))
    record("zero_scalar", T[S.zero] != zero, (m_label,))
    record("scalar_on_zero", T[:, zero] != zero, (s_label,))
    return found


def validate_semimodule(tables: Union[SemimoduleTables, Dict[str, Any]],
                        semiring: Optional[FiniteSemiring] = None, name: str = "") -> FiniteSemimodule:
    """
    JSON semimodule: a semiring (tables or catalog spec) plus element
    labels, an addition table and a scalar table.
    """
    if not isinstance(tables, SemimoduleTables):
        try:
            tables = SemimoduleTables.model_validate(tables)
        except Exception as e:
            raise InputParseError(f"malformed semimodule tables: {e}") from e
    if semiring is None:
        if "family" in tables.semiring:
            from app.algebra.catalog import build_catalog
            semiring = build_catalog(tables.semiring)
        else:
            semiring = validate_semiring(tables.semiring)

    n = len(tables.elements)
    if n == 0 or len(set(tables.elements)) != n:
        raise InputParseError("semimodule element labels must be distinct and nonempty")
    try:
        add = np.array(tables.add, dtype=np.int64)
        scalar = np.array(tables.scalar, dtype=np.int64)
    except ValueError as e:
        raise InputParseError(f"ragged table: {e}") from e
    if add.shape != (n, n) or add.min() < 0 or add.max() >= n:
        raise InputParseError(f"add table must be {n}x{n} with indices in range")
    if scalar.shape != (semiring.size, n) or scalar.min() < 0 or scalar.max() >= n:
        raise InputParseError(f"scalar table must be {semiring.size}x{n} with indices in range")
    if not 0 <= tables.zero < n:
        raise InputParseError("zero index out of range")

    violations = semimodule_axiom_violations(semiring, tables.elements, add, scalar, tables.zero)
    if violations:
        raise AxiomViolationError(violations)
    return FiniteSemimodule(semiring, tuple(tables.elements), add, scalar, tables.zero, name=name)


def regular_module(S: FiniteSemiring) -> FiniteSemimodule:
    """S over itself"""
    return FiniteSemimodule(S, S.elements, S.add, S.mul, S.zero, name=S.name or "S")


def zero_module(S: FiniteSemiring) -> FiniteSemimodule:
    return FiniteSemimodule(S, ("0",), [[0]], [[0] for _ in range(S.size)], 0, name="0")


def direct_sum(M: FiniteSemimodule, N: FiniteSemimodule) -> FiniteSemimodule:
    """M + N with componentwise operations; labels '(m,n)'"""
    if M.semiring is not N.semiring:
        raise MixedSemirings("direct_sum needs semimodules over one semiring")
    S = M.semiring
    pairs = list(itertools.product(range(M.size), range(N.size)))
    pos = {p: i for i, p in enumerate(pairs)}
    labels = [f"({M.label(a)},{N.label(b)})" for a, b in pairs]
    add = [[pos[(int(M.add[a, c]), int(N.add[b, d]))] for c, d in pairs] for a, b in pairs]
    scalar = [[pos[(int(M.scalar[s, a]), int(N.scalar[s, b]))] for a, b in pairs] for s in range(S.size)]
    return FiniteSemimodule(S, tuple(labels), add, scalar, pos[(M.zero, N.zero)],
                            name=f"{M.name or 'M'}+{N.name or 'N'}")


# ---------------------------------------------------------------------------
# subsemimodules

@dataclass(frozen=True)
class Subsemimodule:
    module: FiniteSemimodule
    members: int
    generators: Tuple[int, ...] = ()

    def __contains__(self, x: Union[str, int]) -> bool:
        return bool(self.members >> self.module.index(x) & 1)

    def __le__(self, other: "Subsemimodule") -> bool:
        return self.members & ~other.members == 0

    def __len__(self) -> int:
        return bin(self.members).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(bits(self.members))

    def labels(self) -> List[str]:
        return self.module.labels(self.members)

    def is_zero(self) -> bool:
        return self.members == self.module.zero_mask


def subsemimodule_generated(M: FiniteSemimodule, gens: Iterable[Union[str, int]]) -> Subsemimodule:
    idx = tuple(sorted({M.index(g) for g in gens}))
    return Subsemimodule(M, M.generate_mask(mask_of(idx)), idx)


def enumerate_subsemimodules(M: FiniteSemimodule, cap: int = 16) -> List[int]:
    """Every subsemimodule mask, by size then mask"""
    if M.size > cap:
        raise CapExceeded("subsemimodule lattice", M.size, cap)
    cached = M.cache.get("submodules")
    if cached is None:
        masks = enumerate_closed_sets(M.size, M.generate_mask)
        cached = sorted(masks, key=lambda m: (bin(m).count("1"), m))
        M.cache["submodules"] = cached
    return cached


def _two_generated(M: FiniteSemimodule) -> List[Tuple[Tuple[int, int], int]]:
    seen, out = set(), []
    for x in range(M.size):
        for y in range(x, M.size):
            mask = M.generate_mask((1 << x) | (1 << y))
            if mask not in seen:
                seen.add(mask)
                out.append(((x, y), mask))
    return out


def non_subtractive_submodules(M: FiniteSemimodule) -> List[Tuple[int, int, int]]:
    """(mask, a, b) with a, a + b inside and b outside, one per failing 2-generated subsemimodule"""
    out = []
    for _, mask in _two_generated(M):
        pair = subtractive_witness(M, mask)
        if pair is not None:
            out.append((mask, pair[0], pair[1]))
    return out


def is_subtractive_semimodule(M: FiniteSemimodule) -> CheckResult:
    """Every 2-generated subsemimodule is subtractive"""
    for (x, y), mask in _two_generated(M):
        pair = subtractive_witness(M, mask)
        if pair is None:
            continue
        a, b = pair
        return CheckResult(
            holds=False,
            witness={
                "generators": [M.label(x), M.label(y)],
                "subsemimodule": M.labels(mask),
                "a": M.label(a),
                "b": M.label(b),
                "a+b": M.label(M.add[a, b]),
            },
            detail=f"subsemimodule ({M.label(x)},{M.label(y)}) is not subtractive"
        )
    return CheckResult(holds=True, detail="every 2-generated subsemimodule is subtractive")


# ---------------------------------------------------------------------------
# content semimodules

def _ideal_masks(M: FiniteSemimodule, lattice_cap: int) -> Tuple[int, ...]:
    return enumerate_ideals(M.semiring, lattice_cap).masks


def _content_in(M: FiniteSemimodule, x: int, sub: int, ideals: Sequence[int]) -> int:
    """Intersection of the ideals I with x in I.sub"""
    out = M.semiring.full_mask
    for I in ideals:
        if M.ideal_act(I, sub) >> x & 1:
            out &= I
    return out


def content_cM(M: FiniteSemimodule, x: Union[str, int],
               lattice_cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    """c_M(x): intersection of every ideal I with x in IM"""
    x = M.index(x)
    return Ideal(M.semiring, _content_in(M, x, M.full_mask, _ideal_masks(M, lattice_cap)))


def content_generators(M: FiniteSemimodule, x: Union[str, int],
                       lattice_cap: int = DEFAULT_LATTICE_CAP) -> Optional[List[str]]:
    """
    Scalars c_1..c_n in c_M(x) with x = sum c_i.m_i, found by breadth-first
    search over partial sums; None when x is outside c_M(x)M.
    """
    x = M.index(x)
    S = M.semiring
    c = bits(_content_in(M, x, M.full_mask, _ideal_masks(M, lattice_cap)))
    parent: Dict[int, Optional[Tuple[int, int]]] = {M.zero: None}
    queue = deque([M.zero])
    while queue and x not in parent:
        cur = queue.popleft()
        for s in c:
            for m in range(M.size):
                nxt = int(M.add[cur, M.scalar[s, m]])
                if nxt not in parent:
                    parent[nxt] = (cur, s)
                    queue.append(nxt)
    if x not in parent:
        return None
    gens, cur = [], x
    while parent[cur] is not None:
        cur, s = parent[cur]
        gens.append(s)
    return S.labels(set(gens))


def is_content_semimodule(M: FiniteSemimodule, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """x in c_M(x)M for every x"""
    ideals = _ideal_masks(M, lattice_cap)
    for x in range(M.size):
        c = _content_in(M, x, M.full_mask, ideals)
        if not M.ideal_act(c, M.full_mask) >> x & 1:
            return CheckResult(
                holds=False,
                witness={"x": M.label(x), "c_M(x)": M.semiring.labels(c)},
                detail="x lies outside c_M(x)M"
            )
    return CheckResult(holds=True, detail=f"{M.size} elements")


def content_equivalences(M: FiniteSemimodule, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """
    The content conditions side by side: x in c_M(x)M for all x, the
    intersection law (I n J)M = IM n JM on ideal pairs, and finitely
    generated c_M(x). For content M all three hold together.
    """
    S = M.semiring
    ideals = _ideal_masks(M, lattice_cap)
    content = is_content_semimodule(M, lattice_cap)

    intersection_law, law_witness = True, None
    for I, J in itertools.combinations_with_replacement(ideals, 2):
        lhs = M.ideal_act(I & J, M.full_mask)
        rhs = M.ideal_act(I, M.full_mask) & M.ideal_act(J, M.full_mask)
        if lhs != rhs:
            intersection_law = False
            law_witness = {"I": S.labels(I), "J": S.labels(J), "(I n J)M": M.labels(lhs), "IM n JM": M.labels(rhs)}
            break

    finitely_generated, fg_witness = True, None
    for x in range(M.size):
        gens = content_generators(M, x, lattice_cap)
        expected = _content_in(M, x, M.full_mask, ideals)
        if gens is None or generate_mask(S, S.mask(gens)) != expected:
            finitely_generated = False
            fg_witness = {"x": M.label(x), "c_M(x)": S.labels(expected), "generators": gens}
            break

    agree = content.holds == intersection_law == finitely_generated
    witness = None
    if not content.holds or not intersection_law or not finitely_generated:
        witness = {
            "content": content.holds,
            "intersection_law": intersection_law,
            "finitely_generated": finitely_generated,
            "content_witness": content.witness,
            "intersection_witness": law_witness,
            "generator_witness": fg_witness,
        }
    return CheckResult(
        holds=content.holds and agree,
        witness=witness,
        detail="content conditions agree" if agree else "content conditions disagree"
    )


def submodule_content_equivalences(M: FiniteSemimodule, lattice_cap: int = DEFAULT_LATTICE_CAP,
                                   submodule_cap: int = 16) -> CheckResult:
    """
    For every subsemimodule N of a content semimodule M, compare
      (1) IM n N = IN for all ideals I,
      (2) x in c_M(x)N for all x in N,
      (3) N is content with c_N = c_M on N.
    """
    S = M.semiring
    base = is_content_semimodule(M, lattice_cap)
    if not base.holds:
        return CheckResult(holds=False, status=VerdictStatus.ADVISORY, witness=base.witness,
                           detail="M is not a content semimodule")
    ideals = _ideal_masks(M, lattice_cap)
    checked = 0
    for N in enumerate_subsemimodules(M, submodule_cap):
        c1 = all(M.ideal_act(I, M.full_mask) & N == M.ideal_act(I, N) for I in ideals)
        c2 = c3 = True
        for x in bits(N):
            cm = _content_in(M, x, M.full_mask, ideals)
            if not M.ideal_act(cm, N) >> x & 1:
                c2 = False
            cn = _content_in(M, x, N, ideals)
            if cn != cm or not M.ideal_act(cn, N) >> x & 1:
                c3 = False
        checked += 1
        if not c1 == c2 == c3:
            return CheckResult(
                holds=False,
                witness={"N": M.labels(N), "IM n N = IN": c1, "x in c_M(x)N": c2, "N content, c_N = c_M": c3},
                detail="submodule content conditions disagree"
            )
    return CheckResult(holds=True, detail=f"{checked} subsemimodules of {M!r} over {S.name or 'S'}")


# ---------------------------------------------------------------------------
# polynomials with coefficients in M

class ModulePolynomial:
    """Sparse polynomial with coefficients in a semimodule"""

    __slots__ = ("module", "variables", "laurent", "terms")

    def __init__(self, module: FiniteSemimodule, terms: Mapping[Exponents, Union[str, int]],
                 variables: Sequence[str] = ("X",), laurent: Iterable[str] = ()):
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "laurent", frozenset(laurent))
        clean = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != len(self.variables):
                raise BadParams(f"exponent {e} does not match variables {self.variables}")
            c = module.index(c)
            if c != module.zero:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, key, value):
        raise AttributeError("ModulePolynomial is immutable")

    def __reduce__(self):
        return (ModulePolynomial, (self.module, self.terms, self.variables, self.laurent))

    @classmethod
    def from_coefficients(cls, M: FiniteSemimodule, coeffs: Sequence[Union[str, int]],
                          variable: str = "X") -> "ModulePolynomial":
        return cls(M, {(k,): c for k, c in enumerate(coeffs)}, (variable,))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def support_mask(self) -> int:
        return mask_of(self.terms.values())

    def act(self, f: Polynomial) -> "ModulePolynomial":
        """f.g for f over the base semiring"""
        M = self.module
        if f.semiring is not M.semiring:
            raise MixedSemirings("scalar polynomial over a different semiring")
        if f.variables != self.variables:
            raise BadParams("scalar and module polynomials use different indeterminates")
        out: Dict[Exponents, int] = {}
        for e1, a in f.terms.items():
            for e2, m in self.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = int(M.scalar[a, m])
                out[e] = int(M.add[out[e], v]) if e in out else v
        return ModulePolynomial(M, out, self.variables, self.laurent | f.laurent)

    def __add__(self, other: "ModulePolynomial") -> "ModulePolynomial":
        M = self.module
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = int(M.add[out[e], c]) if e in out else c
        return ModulePolynomial(M, out, self.variables, self.laurent | other.laurent)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModulePolynomial)
            and other.module is self.module
            and other.variables == self.variables
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((id(self.module), self.variables, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        return render_terms(self.variables, self.terms, self.module.label, None, self.module.label(self.module.zero))

    def __repr__(self) -> str:
        return f"ModulePolynomial({self})"


def module_content(g: ModulePolynomial) -> Subsemimodule:
    M = g.module
    return Subsemimodule(M, M.generate_mask(g.support_mask()), tuple(sorted(set(g.terms.values()))))


def dm_semimodule(f: Polynomial, g: ModulePolynomial, bound: Optional[int] = None) -> DMReport:
    """Least m with c(f)^(m+1)c(g) = c(f)^m c(fg) for g over a semimodule"""
    M = g.module
    S = M.semiring
    if f.semiring is not S:
        raise MixedSemirings("dm_semimodule operands over different semirings")
    if g.is_zero():
        zero = M.labels(M.zero_mask)
        return DMReport(exponent=0, bound_used=0, lhs=zero, rhs=zero)
    cf = generate_mask(S, f.support_mask())
    cg = M.generate_mask(g.support_mask())
    cfg = M.generate_mask(g.act(f).support_mask())
    exponent, last, exhausted, lhs, rhs = dm_search(S, cf, cg, cfg, bound, M.ideal_act)
    return DMReport(exponent=exponent, bound_used=last, exhausted=exhausted,
                    lhs=M.labels(lhs), rhs=M.labels(rhs))


def _dm_module_holds(M, cf, cg, cfg, deg_g) -> bool:
    exponent, *_ = dm_search(M.semiring, cf, cg, cfg, max(deg_g, 0), M.ideal_act)
    return exponent is not None


def dm_semimodule_probe(M: FiniteSemimodule, a: int, b: int) -> Dict[str, Any]:
    """f = 1 + X, g = a + bX + aX^2 for a, a+b inside a subsemimodule and b outside"""
    S = M.semiring
    f = Polynomial.from_coefficients(S, [S.one, S.one])
    g = ModulePolynomial.from_coefficients(M, [a, b, a])
    report = dm_semimodule(f, g)
    return {
        "a": M.label(a),
        "b": M.label(b),
        "f": str(f),
        "g": str(g),
        "fg": str(g.act(f)),
        "exponent": report.exponent,
        "exhausted": report.exhausted,
        "lhs": report.lhs,
        "rhs": report.rhs,
    }


def dm_semimodule_equivalence(M: FiniteSemimodule, degree: int = 2,
                              options: Optional[SweepOptions] = None) -> EquivalenceReport:
    """Subtractivity of M against the bounded semimodule DM sweep plus probes"""
    if degree < 2:
        raise BadParams("the Dedekind-Mertens probes have degree 2; use degree >= 2")
    structural = is_subtractive_semimodule(M)
    outcome = sweep_check(
        M.semiring, degree, partial(_dm_module_holds, M), f"semimodule DM sweep D={degree}",
        right_domain=M, options=options
    )
    status = VerdictStatus.SAMPLED if outcome.sampled else VerdictStatus.BOUNDED
    if outcome.holds:
        sweep = CheckResult(holds=True, status=status, bound=degree, detail=f"{outcome.pairs} ordered pairs")
    else:
        report = dm_semimodule(outcome.f, outcome.g, bound=outcome.g.degree() or 0)
        sweep = CheckResult(
            holds=False, status=status, bound=degree,
            witness=outcome.witness(lhs=report.lhs, rhs=report.rhs),
            detail="no exponent m <= deg g satisfies the content formula"
        )
    probes = [dm_semimodule_probe(M, a, b) for _, a, b in non_subtractive_submodules(M)]
    agrees = structural.holds == sweep.holds and all(p["exponent"] is None for p in probes)
    return EquivalenceReport(agrees=agrees, structural=structural, sweep=sweep, probes=probes)
