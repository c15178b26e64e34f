"""
Exhaustive sweeps over pairs of bounded-degree polynomials.

A family is every polynomial whose support sits in a monomial window,
stored as an N x L grid of coefficient indices. Products of one left
polynomial with the whole right family are computed column-by-column
through the addition / action tables, and each pair is reduced to the
content masks (c(f), c(g), c(fg)) plus deg g. Predicates only ever see
those four integers, so they are memoized per sweep.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from app.algebra.ideals import generate_mask
from app.algebra.semiring import FiniteSemiring
from app.utils.error_handler import BudgetExceeded

logger = logging.getLogger("SemiringLab.sweeps")

Exponents = Tuple[int, ...]
Predicate = Callable[[int, int, int, int], bool]

# families beyond this many rows are never materialized
MAX_FAMILY_ROWS = 1_000_000
DEFAULT_PAIR_BUDGET = 2_000_000


def monomial_window(variables: Sequence[str], laurent: FrozenSet[str], degree: int) -> List[Exponents]:
    """
    Exponent vectors of weight <= degree. Ordinary indeterminates range over
    [0, D]; Laurent ones over [-floor(D/2), D - floor(D/2)].
    """
    ranges = []
    for v in variables:
        if v in laurent:
            lo = -(degree // 2)
            ranges.append(range(lo, lo + degree + 1))
        else:
            ranges.append(range(0, degree + 1))
    window = [e for e in itertools.product(*ranges) if sum(abs(x) for x in e) <= degree]
    return sorted(window, key=lambda e: (sum(abs(x) for x in e), e))


def _is_semiring(domain) -> bool:
    return isinstance(domain, FiniteSemiring)


def closure_mask(domain, mask: int) -> int:
    """Ideal (semiring) or subsemimodule (semimodule) generated by ``mask``"""
    if _is_semiring(domain):
        return generate_mask(domain, mask)
    return domain.generate_mask(mask)


@dataclass
class PolynomialFamily:
    domain: Any
    variables: Tuple[str, ...]
    laurent: FrozenSet[str]
    monomials: List[Exponents]
    grid: np.ndarray
    degrees: np.ndarray
    contents: np.ndarray

    @property
    def size(self) -> int:
        return len(self.grid)

    def polynomial(self, i: int):
        terms = {e: int(c) for e, c in zip(self.monomials, self.grid[i])}
        if _is_semiring(self.domain):
            from app.algebra.polynomials import Polynomial
            return Polynomial(self.domain, terms, self.variables, self.laurent)
        from app.algebra.semimodules import ModulePolynomial
        return ModulePolynomial(self.domain, terms, self.variables, self.laurent)


def family_rows(domain_size: int, monomial_count: int) -> int:
    return domain_size ** monomial_count


def build_family(domain, degree: int, variables: Sequence[str] = ("X",),
                 laurent: Sequence[str] = ()) -> PolynomialFamily:
    """All polynomials over ``domain`` supported in the degree window"""
    variables = tuple(variables)
    laurent = frozenset(laurent)
    key = ("family", degree, variables, laurent)
    cached = domain.cache.get(key)
    if cached is not None:
        return cached

    monomials = monomial_window(variables, laurent, degree)
    n = domain.size
    rows = family_rows(n, len(monomials))
    if rows > MAX_FAMILY_ROWS:
        raise BudgetExceeded(f"family of degree {degree} in {variables}", rows, MAX_FAMILY_ROWS)

    grid = np.array(list(itertools.product(range(n), repeat=len(monomials))), dtype=np.int64)
    grid = grid.reshape(rows, len(monomials))
    zero = domain.zero
    weights = np.array([sum(abs(x) for x in e) for e in monomials], dtype=np.int64)
    degrees = np.where(grid != zero, weights[None, :], -1).max(axis=1)
    # rows ordered by (degree, coefficient tuple); row 0 is the zero polynomial
    perm = np.argsort(degrees, kind="stable")
    grid, degrees = grid[perm], degrees[perm]
    contents = grid_contents(domain, grid)

    family = PolynomialFamily(domain, variables, laurent, monomials, grid, degrees, contents)
    domain.cache[key] = family
    return family


def grid_contents(domain, grid: np.ndarray) -> np.ndarray:
    """Content mask of every row of a coefficient grid"""
    support = np.bitwise_or.reduce(np.left_shift(np.int64(1), grid), axis=1)
    uniq, inverse = np.unique(support, return_inverse=True)
    closed = np.array([closure_mask(domain, int(m)) for m in uniq], dtype=np.int64)
    return closed[inverse.ravel()]


@dataclass
class PairSweep:
    """left family over S times right family over S or an S-semimodule"""
    semiring: FiniteSemiring
    left: PolynomialFamily
    right: PolynomialFamily
    symmetric: bool = False
    order: Optional[int] = None
    plan: List[List[Tuple[int, int]]] = field(default_factory=list)
    result_monomials: List[Exponents] = field(default_factory=list)

    def __post_init__(self):
        sums = {}
        for p, e1 in enumerate(self.left.monomials):
            for q, e2 in enumerate(self.right.monomials):
                e = tuple(x + y for x, y in zip(e1, e2))
                if self.order is not None and sum(e) >= self.order:
                    continue
                sums.setdefault(e, []).append((p, q))
        self.result_monomials = sorted(sums, key=lambda e: (sum(abs(x) for x in e), e))
        index = {e: r for r, e in enumerate(self.result_monomials)}
        plan = [[] for _ in self.left.monomials]
        for e, pairs in sums.items():
            for p, q in pairs:
                plan[p].append((q, index[e]))
        self.plan = plan
        domain = self.right.domain
        self._action = self.semiring.mul if _is_semiring(domain) else domain.scalar
        self._radd = domain.add
        self._rzero = domain.zero

    def products(self, i: int, start: int = 0) -> np.ndarray:
        """Coefficient grid of f_i * g_j for j >= start"""
        f = self.left.grid[i]
        G = self.right.grid[start:]
        out = np.full((len(G), len(self.result_monomials)), self._rzero, dtype=np.int64)
        for p, a in enumerate(f):
            if a == self.semiring.zero:
                continue
            acted = self._action[a][G]
            for q, r in self.plan[p]:
                out[:, r] = self._radd[out[:, r], acted[:, q]]
        return out

    def product_contents(self, i: int, start: int = 0) -> np.ndarray:
        return grid_contents(self.right.domain, self.products(i, start))

    def pair_count(self, rows: Optional[Sequence[int]] = None) -> int:
        n1 = self.left.size if rows is None else len(rows)
        if self.symmetric and rows is None:
            return n1 * (n1 + 1) // 2
        return n1 * self.right.size


def _scan_rows(sweep: PairSweep, predicate: Predicate,
               rows: Sequence[int]) -> Tuple[Optional[Tuple[int, int]], int]:
    memo: Dict[Tuple[int, int, int, int], bool] = {}
    pairs = 0
    for i in rows:
        i = int(i)
        start = i if sweep.symmetric else 0
        cfg = sweep.product_contents(i, start)
        keys = np.stack([sweep.right.contents[start:], cfg, sweep.right.degrees[start:]], axis=1)
        uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
        cf = int(sweep.left.contents[i])
        ok = np.empty(len(uniq), dtype=bool)
        for u, (cg, cp, d) in enumerate(uniq.tolist()):
            key = (cf, cg, cp, d)
            verdict = memo.get(key)
            if verdict is None:
                verdict = memo[key] = bool(predicate(*key))
            ok[u] = verdict
        bad = ~ok[inverse.ravel()]
        pairs += len(keys)
        if bad.any():
            return (i, start + int(np.argmax(bad))), pairs
    return None, pairs


def _row_hits(sweep: PairSweep, predicate: Predicate, rows: Sequence[int]) -> List[Optional[int]]:
    """For each row, the first j where ``predicate`` is true, else None"""
    memo: Dict[Tuple[int, int, int, int], bool] = {}
    hits: List[Optional[int]] = []
    for i in rows:
        i = int(i)
        cfg = sweep.product_contents(i)
        cf = int(sweep.left.contents[i])
        found = None
        for j, key in enumerate(zip(sweep.right.contents.tolist(), cfg.tolist(), sweep.right.degrees.tolist())):
            full = (cf,) + key
            verdict = memo.get(full)
            if verdict is None:
                verdict = memo[full] = bool(predicate(*full))
            if verdict:
                found = j
                break
        hits.append(found)
    return hits


@dataclass
class SweepOutcome:
    sweep: PairSweep
    holds: bool
    pairs: int
    failure: Optional[Tuple[int, int]] = None
    sampled: bool = False

    @property
    def f(self):
        return self.sweep.left.polynomial(self.failure[0]) if self.failure else None

    @property
    def g(self):
        return self.sweep.right.polynomial(self.failure[1]) if self.failure else None

    def witness(self, **extra) -> Optional[Dict[str, Any]]:
        if not self.failure:
            return None
        f, g = self.f, self.g
        fg = f * g if _is_semiring(self.sweep.right.domain) else g.act(f)
        out = {"f": str(f), "g": str(g), "fg": str(fg)}
        out.update(extra)
        return out


def _chunks(rows: Sequence[int], parts: int) -> List[List[int]]:
    size = max(1, -(-len(rows) // parts))
    return [list(rows[k:k + size]) for k in range(0, len(rows), size)]


@dataclass(frozen=True)
class SweepOptions:
    budget: int = DEFAULT_PAIR_BUDGET
    sample: Optional[int] = None
    seed: int = 0
    parallel: bool = False
    workers: Optional[int] = None

    @classmethod
    def from_settings(cls, settings) -> "SweepOptions":
        return cls(
            budget=settings.pair_budget,
            sample=settings.sample,
            seed=settings.seed,
            parallel=settings.parallel,
            workers=settings.workers,
        )


def _rows_for(size: int, options: SweepOptions) -> Tuple[Sequence[int], bool]:
    if options.sample is None or options.sample >= size:
        return range(size), False
    rng = np.random.default_rng(options.seed)
    return sorted(int(r) for r in rng.choice(size, size=options.sample, replace=False)), True


def run_sweep(sweep: PairSweep, predicate: Predicate, what: str,
              options: Optional[SweepOptions] = None) -> SweepOutcome:
    """
    Lexicographically first pair violating ``predicate``. With
    ``options.sample`` only that many seeded-random left factors are used.
    """
    options = options or SweepOptions()
    rows, sampled = _rows_for(sweep.left.size, options)
    planned = sweep.pair_count(rows if sampled else None)
    if planned > options.budget:
        raise BudgetExceeded(what, planned, options.budget)
    logger.info(f"{what}: {planned} pairs{' (sampled)' if sampled else ''}")

    if options.parallel and len(rows) > 1:
        parts = _chunks(list(rows), (options.workers or 4) * 4)
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(partial(_scan_rows, sweep, predicate), parts))
        failures = [fail for fail, _ in results if fail is not None]
        pairs = sum(count for _, count in results)
        failure = min(failures) if failures else None
    else:
        failure, pairs = _scan_rows(sweep, predicate, rows)

    return SweepOutcome(sweep=sweep, holds=failure is None, pairs=pairs, failure=failure, sampled=sampled)


def pair_sweep(semiring: FiniteSemiring, degree: int, variables: Sequence[str] = ("X",),
               laurent: Sequence[str] = (), symmetric: bool = False, right_domain=None,
               right_degree: Optional[int] = None, order: Optional[int] = None,
               options: Optional[SweepOptions] = None, what: str = "sweep") -> PairSweep:
    """Plan a sweep; the pair budget is checked before any family is built"""
    options = options or SweepOptions()
    right_domain = semiring if right_domain is None else right_domain
    right_degree = degree if right_degree is None else right_degree
    laurent_set = frozenset(laurent)
    n_left = family_rows(semiring.size, len(monomial_window(tuple(variables), laurent_set, degree)))
    n_right = family_rows(right_domain.size, len(monomial_window(tuple(variables), laurent_set, right_degree)))
    shared = right_domain is semiring and right_degree == degree
    if options.sample is not None and options.sample < n_left:
        planned = options.sample * n_right
    elif symmetric and shared:
        planned = n_left * (n_left + 1) // 2
    else:
        planned = n_left * n_right
    if planned > options.budget:
        raise BudgetExceeded(what, planned, options.budget)

    left = build_family(semiring, degree, variables, laurent)
    right = left if shared else build_family(right_domain, right_degree, variables, laurent)
    return PairSweep(semiring, left, right, symmetric=symmetric and shared, order=order)


def sweep_check(semiring: FiniteSemiring, degree: int, predicate: Predicate, what: str,
                variables: Sequence[str] = ("X",), laurent: Sequence[str] = (),
                symmetric: bool = False, right_domain=None, order: Optional[int] = None,
                options: Optional[SweepOptions] = None) -> SweepOutcome:
    sweep = pair_sweep(semiring, degree, variables, laurent, symmetric=symmetric,
                       right_domain=right_domain, order=order, options=options, what=what)
    return run_sweep(sweep, predicate, what, options)


def family_rows_for(domain, degree: int, variables: Sequence[str] = ("X",),
                    laurent: Sequence[str] = ()) -> int:
    return family_rows(domain.size, len(monomial_window(tuple(variables), frozenset(laurent), degree)))


def row_hits(sweep: PairSweep, predicate: Predicate,
             rows: Optional[Sequence[int]] = None) -> List[Optional[int]]:
    return _row_hits(sweep, predicate, range(sweep.left.size) if rows is None else rows)
