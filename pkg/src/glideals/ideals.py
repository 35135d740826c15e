"""Cycle-and-quadric ideals: generators, graded bases, and exact membership.

The n-th ideal is generated by all three-matching quadrics (on 4-subsets
of [1..N]) together with all cycle monomials of length 3..n.  Every
generator is multihomogeneous, so the ideal is multigraded and membership
decomposes exactly per multidegree: f lies in the ideal iff each of its
multihomogeneous components lies in the span of (cofactor × generator)
products of that degree.  The span is computed as a GF(2) row space over
the canonical monomial basis of the component, which makes membership an
exact rank question rather than a normal-form heuristic.

Soundness at truncation: a generator contributing to degree d must have
its support inside support(d) (its degree is bounded by d componentwise),
and the same holds for cofactors, so the truncated component equals the
untruncated one whenever support(d) fits inside [1..N].  TRUE and FALSE
verdicts under that precondition are both certified for the untruncated
ideal; the engine enforces the precondition and marks verdicts.

Membership queries relabel each component degree to a canonical form
(degrees sorted descending, support packed onto 1..k).  This is exact:
the generator set is invariant under vertex permutations, so a permuted
component lies in the permuted — identical — ideal.  Canonicalization
collapses the many degrees hit by verification sweeps onto a small set of
cached bases.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable

from . import gf2
from .rings import (
    EDGE,
    Monomial,
    Multidegree,
    Polynomial,
    count_monomials,
    cycle_monomial,
    edge_universe,
    enumerate_monomials,
    is_cycle_monomial,
    multidegree,
    plucker,
    relabel,
    standard_cycle,
)

DEFAULT_BUDGET = 100_000_000  # bit-cells: columns × (rows + 1) of a spanning matrix
SPILL_CELLS = 1_000_000       # disk-cache only bases at least this big
CACHE_FORMAT = 1


class BudgetExceededError(RuntimeError):
    """A graded component would exceed the configured bit-cell budget."""

    def __init__(self, spec: "IdealSpec", degree: Multidegree, ncols: int, est_rows: int, budget: int):
        super().__init__(
            f"component {degree} of ideal (n={spec.n}, N={spec.N}) needs about "
            f"{ncols} columns x {est_rows} rows = {ncols * (est_rows + 1)} bit-cells, "
            f"over the budget of {budget}; pass force=True/--force to proceed"
        )
        self.spec = spec
        self.degree = degree
        self.ncols = ncols
        self.est_rows = est_rows
        self.budget = budget


@dataclass(frozen=True)
class IdealSpec:
    """Selects the truncated ideal: cycle bound n within vertex range [1..N]."""

    n: int
    N: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("cycle bound n must be at least 2")
        if self.N < max(4, self.n):
            raise ValueError(f"truncation N={self.N} must be at least max(4, n)={max(4, self.n)}")


@dataclass(frozen=True)
class IdealGenerator:
    poly: Polynomial
    label: str
    degree: Multidegree


@lru_cache(maxsize=None)
def generator_infos(spec: IdealSpec) -> tuple[IdealGenerator, ...]:
    """Generators with labels and degrees: quadrics per 4-subset, cycles per dihedral class."""
    universe = edge_universe(spec.N)
    out: list[IdealGenerator] = []
    for quad in combinations(range(1, spec.N + 1), 4):
        p = plucker(universe, *quad)
        out.append(
            IdealGenerator(p, "pl(%d,%d,%d,%d)" % quad, Multidegree(tuple((v, 1) for v in quad)))
        )
    for k in range(3, spec.n + 1):
        for subset in combinations(range(1, spec.N + 1), k):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue  # one representative per dihedral class
                seq = (first,) + perm
                mono = cycle_monomial(seq)
                out.append(
                    IdealGenerator(
                        Polynomial.monomial(universe, mono),
                        "cycle(%s)" % ",".join(map(str, seq)),
                        multidegree(mono),
                    )
                )
    return tuple(out)


def generators(spec: IdealSpec) -> tuple[Polynomial, ...]:
    """The canonical generator list of the truncated ideal."""
    return tuple(g.poly for g in generator_infos(spec))


@dataclass
class SpanningRows:
    """Raw spanning matrix of one graded component, with provenance.

    Row i is the coefficient vector of provenance[i] = (generator index,
    cofactor monomial); duplicate and zero products are dropped.
    """

    spec: IdealSpec
    degree: Multidegree
    columns: tuple[Monomial, ...]
    rows: list[int]
    provenance: list[tuple[int, Monomial]]

    @property
    def col_index(self) -> dict[Monomial, int]:
        if not hasattr(self, "_col_index"):
            self._col_index = {m: i for i, m in enumerate(self.columns)}
        return self._col_index


@dataclass
class GradedBasis:
    """Echelonized row space of one graded component of the ideal."""

    spec: IdealSpec
    degree: Multidegree
    columns: tuple[Monomial, ...]
    echelon: gf2.Echelon
    _matrix: gf2.BitMatrix | None = field(default=None, repr=False)
    _col_index: dict | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def dim(self) -> int:
        return len(self.columns)

    @property
    def col_index(self) -> dict[Monomial, int]:
        if self._col_index is None:
            self._col_index = {m: i for i, m in enumerate(self.columns)}
        return self._col_index

    def encode(self, f: Polynomial) -> int:
        idx = self.col_index
        bits = 0
        for t in f.terms:
            j = idx.get(t)
            if j is None:
                raise ValueError(
                    f"term {t.vars} does not lie in the degree-{self.degree} component"
                )
            bits |= 1 << j
        return bits

    def contains(self, f: Polynomial) -> bool:
        return self.echelon.contains(self.encode(f))

    def matrix(self) -> gf2.BitMatrix:
        """The reduced row-echelon BitMatrix (canonical; computed lazily)."""
        if self._matrix is None:
            rows = tuple(self.echelon.reduced_rows())
            self._matrix = gf2.BitMatrix(
                len(self.columns), rows, self.echelon.pivot_cols(), self.echelon.rank
            )
        return self._matrix

    def row_polynomial(self, bits: int) -> Polynomial:
        universe = edge_universe(self.spec.N)
        terms = [self.columns[j] for j in range(len(self.columns)) if (bits >> j) & 1]
        return Polynomial.from_monomials(universe, terms)


@dataclass(frozen=True)
class ComponentVerdict:
    degree: Multidegree
    contained: bool
    certified: bool
    rank: int
    dim: int


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership query, with one verdict per multidegree."""

    contained: bool
    components: tuple[ComponentVerdict, ...]

    def __bool__(self) -> bool:
        return self.contained

    @property
    def certified(self) -> bool:
        return all(c.certified for c in self.components)


def canonical_degree(d: Multidegree) -> tuple[Multidegree, dict[int, int]]:
    """Relabel support onto 1..k with degrees weakly decreasing.

    Returns the canonical degree and the vertex mapping that achieves it.
    """
    order = sorted(d.support, key=lambda v: (-d.get(v), v))
    mapping = {v: i + 1 for i, v in enumerate(order)}
    canon = Multidegree(tuple((mapping[v], d.get(v)) for v in order))
    return canon, mapping


class IdealEngine:
    """Computes and caches graded bases; answers exact membership queries."""

    def __init__(
        self,
        budget: int = DEFAULT_BUDGET,
        force: bool = False,
        cache_dir: str | Path | None = None,
        spill_cells: int = SPILL_CELLS,
    ):
        self.budget = budget
        self.force = force
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.spill_cells = spill_cells
        self._bases: dict[tuple[int, int, Multidegree], GradedBasis] = {}
        self._lock = threading.Lock()

    # -- spanning rows -------------------------------------------------

    def _estimate(self, spec: IdealSpec, d: Multidegree) -> tuple[int, list[tuple[int, IdealGenerator, Multidegree]]]:
        ncols = count_monomials(d, limit=self.budget)
        if ncols > self.budget and not self.force:
            raise BudgetExceededError(spec, d, ncols, 0, self.budget)
        applicable: list[tuple[int, IdealGenerator, Multidegree]] = []
        est_rows = 0
        for i, gen in enumerate(generator_infos(spec)):
            residual = d.minus(gen.degree)
            if residual is None:
                continue
            applicable.append((i, gen, residual))
            est_rows += count_monomials(residual, limit=self.budget)
            if ncols * (est_rows + 1) > self.budget and not self.force:
                raise BudgetExceededError(spec, d, ncols, est_rows, self.budget)
        return ncols, applicable

    def spanning_rows(self, spec: IdealSpec, d: Multidegree) -> SpanningRows:
        """All (cofactor × generator) coefficient vectors spanning the component."""
        if d.max_vertex > spec.N:
            raise ValueError(f"degree support {d.support} exceeds truncation N={spec.N}")
        _, applicable = self._estimate(spec, d)
        columns = enumerate_monomials(d)
        col_index = {m: j for j, m in enumerate(columns)}
        rows: list[int] = []
        provenance: list[tuple[int, Monomial]] = []
        seen: set[int] = set()
        for i, gen, residual in applicable:
            gen_terms = gen.poly.terms
            for cof in enumerate_monomials(residual):
                bits = 0
                for t in gen_terms:
                    prod = cof.mul(t)
                    if prod is not None:
                        bits |= 1 << col_index[prod]
                if bits and bits not in seen:
                    seen.add(bits)
                    rows.append(bits)
                    provenance.append((i, cof))
        return SpanningRows(spec, d, columns, rows, provenance)

    # -- graded bases ----------------------------------------------------

    def basis(self, spec: IdealSpec, d: Multidegree) -> GradedBasis:
        """Echelonized basis of the component, cached per (n, N, degree)."""
        key = (spec.n, spec.N, d)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._bases.get(key)
            if hit is not None:
                return hit
            basis = self._load_cached(spec, d)
            if basis is None:
                basis = self._build(spec, d)
            self._bases[key] = basis
            return basis

    def _build(self, spec: IdealSpec, d: Multidegree) -> GradedBasis:
        span = self.spanning_rows(spec, d)
        ech = gf2.Echelon(len(span.columns))
        for r in span.rows:
            ech.add(r)
        basis = GradedBasis(spec, d, span.columns, ech)
        if self.cache_dir and len(span.columns) * (len(span.rows) + 1) >= self.spill_cells:
            self._store_cached(basis)
        return basis

    def rank(self, spec: IdealSpec, d: Multidegree) -> int:
        return self.basis(spec, d).rank

    # -- membership -----------------------------------------------------

    def member(self, f: Polynomial, spec: IdealSpec) -> Membership:
        """Exact membership of f, decided per multihomogeneous component."""
        if f.universe.kind != EDGE:
            raise ValueError("membership is defined for edge-universe polynomials")
        comps = f.components()
        verdicts: list[ComponentVerdict] = []
        for d in sorted(comps):
            if d.max_vertex > spec.N:
                raise ValueError(
                    f"component degree {d} is supported outside [1..{spec.N}]; "
                    "verdicts at this truncation would not be certified"
                )
            canon, mapping = canonical_degree(d)
            g = relabel(
                Polynomial(edge_universe(spec.N), comps[d].terms), mapping
            )
            basis = self.basis(spec, canon)
            verdicts.append(
                ComponentVerdict(
                    degree=d,
                    contained=basis.contains(g),
                    certified=True,
                    rank=basis.rank,
                    dim=basis.dim,
                )
            )
        return Membership(all(v.contained for v in verdicts), tuple(verdicts))

    # -- disk cache -------------------------------------------------------

    def _cache_path(self, spec: IdealSpec, d: Multidegree) -> Path:
        dkey = ".".join(str(x) for x in d.dense())
        return self.cache_dir / f"basis_v{CACHE_FORMAT}_n{spec.n}_N{spec.N}_d{dkey}.json"

    def _store_cached(self, basis: GradedBasis) -> None:
        payload = {
            "format": CACHE_FORMAT,
            "n": basis.spec.n,
            "N": basis.spec.N,
            "degree": list(basis.degree.dense()),
            "rank": basis.rank,
            "rows": [format(r, "x") for r in basis.echelon.reduced_rows()],
        }
        body = json.dumps(payload, sort_keys=True)
        payload["checksum"] = hashlib.sha256(body.encode()).hexdigest()
        path = self._cache_path(basis.spec, basis.degree)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(path)

    def _load_cached(self, spec: IdealSpec, d: Multidegree) -> GradedBasis | None:
        if not self.cache_dir:
            return None
        path = self._cache_path(spec, d)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text())
            checksum = payload.pop("checksum")
            body = json.dumps(payload, sort_keys=True)
            if hashlib.sha256(body.encode()).hexdigest() != checksum:
                return None
            if payload["format"] != CACHE_FORMAT or payload["n"] != spec.n or payload["N"] != spec.N:
                return None
            if tuple(payload["degree"]) != d.dense():
                return None
            rows = [int(h, 16) for h in payload["rows"]]
        except (KeyError, ValueError, TypeError, json.JSONDecodeError):
            return None
        columns = enumerate_monomials(d)
        ech = gf2.Echelon(len(columns))
        for r in rows:
            if r < 0 or r >> len(columns) or not ech.add(r):
                return None
        if ech.rank != payload["rank"]:
            return None
        return GradedBasis(spec, d, columns, ech)


_default_engine: IdealEngine | None = None
_default_lock = threading.Lock()


def default_engine() -> IdealEngine:
    global _default_engine
    with _default_lock:
        if _default_engine is None:
            _default_engine = IdealEngine()
        return _default_engine


def graded_spanning_rows(spec: IdealSpec, d: Multidegree, engine: IdealEngine | None = None) -> SpanningRows:
    return (engine or default_engine()).spanning_rows(spec, d)


def graded_basis(spec: IdealSpec, d: Multidegree, engine: IdealEngine | None = None) -> GradedBasis:
    return (engine or default_engine()).basis(spec, d)


def member(f: Polynomial, spec: IdealSpec, engine: IdealEngine | None = None) -> Membership:
    return (engine or default_engine()).member(f, spec)


def cycle_sum_functional(f: Polynomial, n: int) -> int:
    """GF(2) sum of f's coefficients over single (n+1)-cycle monomials.

    Defined on polynomials all of whose terms share one multidegree
    (2,...,2) on n+1 vertices.  The value is 0 exactly on the span of the
    short-cycle monomials together with the even combinations of
    (n+1)-cycles; the (n+1)-cycle itself evaluates to 1.
    """
    if f.universe.kind != EDGE:
        raise ValueError("the functional is defined on edge-universe polynomials")
    degrees = {multidegree(t) for t in f.terms}
    if len(degrees) > 1:
        raise ValueError("polynomial is not multihomogeneous")
    if degrees:
        d = degrees.pop()
        if len(d.support) != n + 1 or any(d.get(v) != 2 for v in d.support):
            raise ValueError(f"terms must have degree (2,...,2) on {n + 1} vertices, got {d}")
    total = sum(1 for t in f.terms if is_cycle_monomial(t, n + 1))
    return total & 1


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of the decomposition-based non-membership argument.

    Each spanning row of the component of degree (2,...,2) on n+1 vertices
    must evaluate to 0 under the cycle-sum functional while the standard
    (n+1)-cycle evaluates to 1; together these force the cycle outside the
    component, independently of the rank oracle.
    """

    n: int
    degree: Multidegree
    num_columns: int
    num_cycle_columns: int
    num_rows: int
    rank: int
    rows_all_zero: bool
    cycle_functional: int
    offending: tuple[str, str] | None

    @property
    def passed(self) -> bool:
        return self.rows_all_zero and self.cycle_functional == 1


def proof_replay_dkk(n: int, engine: IdealEngine | None = None) -> ReplayReport:
    """Replay the functional argument that the (n+1)-cycle avoids the n-th ideal."""
    if n < 2:
        raise ValueError("n must be at least 2")
    engine = engine or default_engine()
    spec = IdealSpec(n, max(4, n + 1))
    d = Multidegree.two_regular(n + 1)
    span = engine.spanning_rows(spec, d)
    cycle_mask = 0
    num_cycle_cols = 0
    for j, col in enumerate(span.columns):
        if is_cycle_monomial(col, n + 1):
            cycle_mask |= 1 << j
            num_cycle_cols += 1
    offending: tuple[str, str] | None = None
    infos = generator_infos(spec)
    for bits, (gi, cof) in zip(span.rows, span.provenance):
        if (bits & cycle_mask).bit_count() & 1:
            offending = (infos[gi].label, cof.label(edge_universe(spec.N)))
            break
    w_bits = 1 << span.col_index[standard_cycle(n + 1)]
    cycle_val = (w_bits & cycle_mask).bit_count() & 1
    return ReplayReport(
        n=n,
        degree=d,
        num_columns=len(span.columns),
        num_cycle_columns=num_cycle_cols,
        num_rows=len(span.rows),
        rank=engine.basis(spec, d).rank,
        rows_all_zero=offending is None,
        cycle_functional=cycle_val,
        offending=offending,
    )
