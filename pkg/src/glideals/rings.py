"""Squarefree commutative algebra over GF(2) with graph-encoded monomials.

Variables come in two universes over a truncated index range [1..N]:

* the edge universe, whose variables are unordered pairs ``(u, v)`` with
  ``u < v`` — a squarefree monomial is then exactly a simple graph, and
  multiplying two monomials unions their edge sets (a shared edge kills
  the product, since every variable squares to zero);
* the paired universe, with 2N single generators ``x1..xN, y1..yN``,
  which hosts the image of the pairing substitution in glaction.phi.

Coefficients are GF(2): a polynomial is a finite *set* of monomials and
addition is symmetric difference.  Membership questions asked downstream
are insensitive to extending the coefficient field (rank over GF(2) does
not change under field extension), so fixing GF(2) loses nothing for any
field of characteristic two.

Monomials in the edge universe carry an ℕ^N multidegree: the degree of a
vertex is its valence in the monomial's graph.  A graded component is
indexed by its multidegree's support; vertices outside the support cannot
appear (forced by the grading), which fixes the vertex set of every
enumeration below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping

EDGE = "edge"
PAIRED = "paired"


@dataclass(frozen=True)
class Universe:
    """A variable alphabet: edge variables or paired generators on [1..n]."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (EDGE, PAIRED):
            raise ValueError(f"unknown universe kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("truncation bound must be positive")

    def check_var(self, var) -> None:
        if self.kind == EDGE:
            if (
                not isinstance(var, tuple)
                or len(var) != 2
                or not all(isinstance(i, int) for i in var)
                or not 1 <= var[0] < var[1] <= self.n
            ):
                raise ValueError(f"{var!r} is not an edge variable within [1..{self.n}]")
        else:
            if (
                not isinstance(var, tuple)
                or len(var) != 2
                or var[0] not in ("x", "y")
                or not isinstance(var[1], int)
                or not 1 <= var[1] <= self.n
            ):
                raise ValueError(
                    f"{var!r} is not a paired generator within [1..{self.n}]"
                )

    def var_label(self, var) -> str:
        if self.kind == EDGE:
            return f"x({var[0]},{var[1]})"
        return f"{var[0]}{var[1]}"


def edge_universe(n: int) -> Universe:
    return Universe(EDGE, n)


def paired_universe(n: int) -> Universe:
    return Universe(PAIRED, n)


def edge(u: int, v: int) -> tuple[int, int]:
    """The edge variable on {u, v}; endpoint order is normalized."""
    if not (isinstance(u, int) and isinstance(v, int)) or u < 1 or v < 1:
        raise ValueError(f"vertex ids must be positive integers, got ({u!r}, {v!r})")
    if u == v:
        raise ValueError(f"no loop variable on vertex {u}")
    return (u, v) if u < v else (v, u)


def xvar(i: int) -> tuple[str, int]:
    return ("x", i)


def yvar(i: int) -> tuple[str, int]:
    return ("y", i)


@dataclass(frozen=True, order=True)
class Monomial:
    """A squarefree monomial: a canonically sorted tuple of distinct variables.

    The empty tuple is the monomial 1.  Tuple comparison of the sorted
    variable lists is the canonical (lexicographic) monomial order used
    for matrix columns everywhere.
    """

    vars: tuple = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.vars))
        if len(set(ordered)) != len(ordered):
            raise ValueError(f"repeated variable in monomial {self.vars!r}")
        object.__setattr__(self, "vars", ordered)

    @classmethod
    def of(cls, *vars) -> "Monomial":
        return cls(tuple(vars))

    @property
    def degree(self) -> int:
        return len(self.vars)

    @property
    def is_one(self) -> bool:
        return not self.vars

    def mul(self, other: "Monomial") -> "Monomial | None":
        """Product monomial, or None when a shared variable squares to zero."""
        if not self.vars:
            return other
        if not other.vars:
            return self
        mine = set(self.vars)
        if mine.intersection(other.vars):
            return None
        return Monomial(self.vars + other.vars)

    def vertices(self) -> tuple[int, ...]:
        """Support vertices of an edge-universe monomial, ascending."""
        seen: set[int] = set()
        for u, v in self.vars:
            seen.add(u)
            seen.add(v)
        return tuple(sorted(seen))

    def label(self, universe: Universe) -> str:
        if not self.vars:
            return "1"
        return "".join(universe.var_label(v) for v in self.vars)


def mono_mul(a: Monomial, b: Monomial) -> Monomial | None:
    """Monomial product with square-kill; None stands for the zero polynomial."""
    return a.mul(b)


@dataclass(frozen=True, order=True)
class Multidegree:
    """A finitely supported degree vector: sorted (vertex, positive degree) pairs."""

    degrees: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted((int(v), int(d)) for v, d in self.degrees if d))
        if any(d < 0 for _, d in pairs):
            raise ValueError("negative degree")
        if any(v < 1 for v, _ in pairs):
            raise ValueError("vertex ids must be positive")
        if len({v for v, _ in pairs}) != len(pairs):
            raise ValueError("repeated vertex in multidegree")
        object.__setattr__(self, "degrees", pairs)

    @classmethod
    def from_map(cls, mapping: Mapping[int, int]) -> "Multidegree":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_dense(cls, values: Iterable[int]) -> "Multidegree":
        return cls(tuple((i + 1, d) for i, d in enumerate(values)))

    @classmethod
    def two_regular(cls, nverts: int) -> "Multidegree":
        """Degree (2, 2, ..., 2) on vertices 1..nverts."""
        return cls(tuple((v, 2) for v in range(1, nverts + 1)))

    def get(self, v: int) -> int:
        for u, d in self.degrees:
            if u == v:
                return d
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.degrees)

    @property
    def total(self) -> int:
        return sum(d for _, d in self.degrees)

    @property
    def max_vertex(self) -> int:
        return self.degrees[-1][0] if self.degrees else 0

    def __add__(self, other: "Multidegree") -> "Multidegree":
        acc = dict(self.degrees)
        for v, d in other.degrees:
            acc[v] = acc.get(v, 0) + d
        return Multidegree.from_map(acc)

    def minus(self, other: "Multidegree") -> "Multidegree | None":
        """Componentwise difference, or None when it would go negative."""
        acc = dict(self.degrees)
        for v, d in other.degrees:
            r = acc.get(v, 0) - d
            if r < 0:
                return None
            acc[v] = r
        return Multidegree.from_map(acc)

    def leq(self, other: "Multidegree") -> bool:
        return other.minus(self) is not None

    def dense(self, upto: int | None = None) -> tuple[int, ...]:
        hi = upto if upto is not None else self.max_vertex
        return tuple(self.get(v) for v in range(1, hi + 1))

    def __str__(self) -> str:
        return "(" + ",".join(str(d) for d in self.dense()) + ")"


def multidegree(m: Monomial) -> Multidegree:
    """The vertex-valence vector of an edge-universe monomial."""
    acc: dict[int, int] = {}
    for u, v in m.vars:
        acc[u] = acc.get(u, 0) + 1
        acc[v] = acc.get(v, 0) + 1
    return Multidegree.from_map(acc)


@dataclass(frozen=True)
class Polynomial:
    """A GF(2) combination of squarefree monomials over one variable universe."""

    universe: Universe
    terms: frozenset

    @classmethod
    def zero(cls, universe: Universe) -> "Polynomial":
        return cls(universe, frozenset())

    @classmethod
    def one(cls, universe: Universe) -> "Polynomial":
        return cls(universe, frozenset([Monomial()]))

    @classmethod
    def monomial(cls, universe: Universe, m: Monomial) -> "Polynomial":
        for var in m.vars:
            universe.check_var(var)
        return cls(universe, frozenset([m]))

    @classmethod
    def from_monomials(cls, universe: Universe, monomials: Iterable[Monomial]) -> "Polynomial":
        """Mod-2 sum of the given monomials (an even number of copies cancels)."""
        acc: set[Monomial] = set()
        for m in monomials:
            acc.symmetric_difference_update((m,))
        for m in acc:
            for var in m.vars:
                universe.check_var(var)
        return cls(universe, frozenset(acc))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check_universe(self, other: "Polynomial") -> None:
        if self.universe != other.universe:
            raise ValueError(
                f"alphabet mismatch: {self.universe} vs {other.universe}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_universe(other)
        return Polynomial(self.universe, self.terms ^ other.terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_universe(other)
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                p = a.mul(b)
                if p is not None:
                    acc.symmetric_difference_update((p,))
        return Polynomial(self.universe, frozenset(acc))

    def terms_sorted(self) -> list[Monomial]:
        return sorted(self.terms)

    def components(self) -> dict[Multidegree, "Polynomial"]:
        """Split into multihomogeneous components (edge universe only)."""
        if self.universe.kind != EDGE:
            raise ValueError("multigrading is defined on the edge universe")
        buckets: dict[Multidegree, set[Monomial]] = {}
        for t in self.terms:
            buckets.setdefault(multidegree(t), set()).add(t)
        return {
            d: Polynomial(self.universe, frozenset(ts)) for d, ts in buckets.items()
        }

    def is_multihomogeneous(self) -> bool:
        return len(self.components()) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.label(self.universe) for t in self.terms_sorted())


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Bilinear extension of mono_mul with mod-2 cancellation."""
    return f * g


def relabel(f: Polynomial, mapping: Mapping[int, int]) -> Polynomial:
    """Rename vertex/generator indices through an injective mapping."""

    def map_var(var):
        if f.universe.kind == EDGE:
            return edge(mapping.get(var[0], var[0]), mapping.get(var[1], var[1]))
        return (var[0], mapping.get(var[1], var[1]))

    return Polynomial.from_monomials(
        f.universe,
        (Monomial(tuple(map_var(v) for v in t.vars)) for t in f.terms),
    )


def plucker(universe: Universe, i1: int, i2: int, i3: int, i4: int) -> Polynomial:
    """The three-matching quadric x(i1,i2)x(i3,i4) + x(i1,i3)x(i2,i4) + x(i1,i4)x(i2,i3).

    Any reordering of the four indices produces the same term set.
    """
    ids = (i1, i2, i3, i4)
    if len(set(ids)) != 4:
        raise ValueError(f"indices must be pairwise distinct, got {ids}")
    terms = [
        Monomial.of(edge(i1, i2), edge(i3, i4)),
        Monomial.of(edge(i1, i3), edge(i2, i4)),
        Monomial.of(edge(i1, i4), edge(i2, i3)),
    ]
    return Polynomial.from_monomials(universe, terms)


def cycle_monomial(seq: Iterable[int]) -> Monomial:
    """The monomial whose graph is the cycle visiting seq in order.

    Invariant under rotating or reflecting seq.
    """
    verts = list(seq)
    if len(verts) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(verts)) != len(verts):
        raise ValueError(f"cycle vertices must be distinct, got {verts}")
    edges = [edge(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]
    return Monomial(tuple(edges))


def standard_cycle(k: int) -> Monomial:
    """The cycle monomial on vertices 1, 2, ..., k in order."""
    return cycle_monomial(range(1, k + 1))


@dataclass(frozen=True)
class CycleReport:
    """Connected-component decomposition of a monomial's graph."""

    cycle_components: tuple[int, ...]  # lengths of components that are single cycles
    acyclic_components: int            # components containing no cycle
    other_components: int              # components containing a cycle without being one
    girth: int | None                  # shortest cycle length anywhere, or None

    @property
    def component_count(self) -> int:
        return len(self.cycle_components) + self.acyclic_components + self.other_components


def _adjacency(m: Monomial) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in m.vars:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


def _shortest_cycle_through(adj: dict[int, list[int]], u: int, v: int) -> int | None:
    # shortest path u -> v avoiding the edge (u, v) itself, via BFS
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj[a]:
                if a == u and b == v:
                    continue
                if b not in dist:
                    dist[b] = dist[a] + 1
                    if b == v:
                        return dist[b] + 1
                    nxt.append(b)
        frontier = nxt
    return None


def cycle_structure(m: Monomial) -> CycleReport:
    """Classify the components of the monomial's graph and report its girth."""
    adj = _adjacency(m)
    unvisited = set(adj)
    cycles: list[int] = []
    acyclic = 0
    mixed = 0
    while unvisited:
        start = min(unvisited)
        comp = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        unvisited -= comp
        nedges = sum(len(adj[a]) for a in comp) // 2
        if nedges == len(comp) and all(len(adj[a]) == 2 for a in comp):
            cycles.append(nedges)
        elif nedges < len(comp):
            acyclic += 1
        else:
            mixed += 1
    girth: int | None = None
    for u, v in m.vars:
        c = _shortest_cycle_through(adj, u, v)
        if c is not None and (girth is None or c < girth):
            girth = c
    return CycleReport(tuple(sorted(cycles)), acyclic, mixed, girth)


def is_cycle_monomial(m: Monomial, length: int | None = None) -> bool:
    """Whether the monomial's graph is one single cycle (of the given length)."""
    if not m.vars:
        return False
    verts = m.vertices()
    if len(m.vars) != len(verts):
        return False
    adj = _adjacency(m)
    if any(len(adj[v]) != 2 for v in verts):
        return False
    # connected 2-regular graph with |E| = |V| is a single cycle
    comp = {verts[0]}
    stack = [verts[0]]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in comp:
                comp.add(b)
                stack.append(b)
    if len(comp) != len(verts):
        return False
    return length is None or len(verts) == length


def _degree_backtrack(d: Multidegree, emit: Callable[[list[tuple[int, int]]], bool]) -> None:
    """Enumerate simple graphs with exact degree sequence d.

    Vertices are processed in increasing order; at each vertex the edges
    towards later vertices are chosen to exhaust its residual degree, so
    every graph is produced exactly once.  emit returns False to abort.
    """
    verts = list(d.support)
    residual = {v: d.get(v) for v in verts}
    if sum(residual.values()) % 2:
        return
    edges: list[tuple[int, int]] = []
    aborted = [False]

    def rec(i: int) -> None:
        if aborted[0]:
            return
        if i == len(verts):
            if not emit(edges):
                aborted[0] = True
            return
        v = verts[i]
        need = residual[v]
        if need == 0:
            rec(i + 1)
            return
        later = [u for u in verts[i + 1 :] if residual[u] > 0]
        if need > len(later):
            return
        for chosen in combinations(later, need):
            for u in chosen:
                residual[u] -= 1
            edges.extend((v, u) for u in chosen)
            rec(i + 1)
            del edges[-need:]
            for u in chosen:
                residual[u] += 1
            if aborted[0]:
                return

    rec(0)


@lru_cache(maxsize=None)
def enumerate_monomials(d: Multidegree) -> tuple[Monomial, ...]:
    """All monomials of multidegree d, in the canonical monomial order.

    These are exactly the simple graphs on support(d) realizing the degree
    sequence; the deterministic ordering fixes matrix columns downstream.
    """
    found: list[Monomial] = []

    def emit(edges: list[tuple[int, int]]) -> bool:
        found.append(Monomial(tuple(edges)))
        return True

    _degree_backtrack(d, emit)
    found.sort()
    return tuple(found)


def count_monomials(d: Multidegree, limit: int | None = None) -> int:
    """Number of monomials of multidegree d; stops early at limit + 1."""
    count = [0]

    def emit(_edges) -> bool:
        count[0] += 1
        return limit is None or count[0] <= limit

    _degree_backtrack(d, emit)
    return count[0]


class PolynomialFormatError(ValueError):
    """Malformed polynomial JSON; carries the offending location."""

    def __init__(self, message: str, location: str):
        super().__init__(f"{message} (at {location})")
        self.location = location


_PAIRED_NAME = re.compile(r"^([xy])([1-9][0-9]*)$")


def poly_to_json(f: Polynomial) -> dict:
    """Encode a polynomial in the interchange format.

    {"alphabet": "edge"|"paired", "N": int, "terms": [[...vars...], ...]}
    where an edge variable is [u, v] with u < v and a paired generator is
    the string "x3" / "y7".  Terms are listed in canonical order.
    """
    if f.universe.kind == EDGE:
        terms = [[[u, v] for (u, v) in t.vars] for t in f.terms_sorted()]
    else:
        terms = [[f"{k}{i}" for (k, i) in t.vars] for t in f.terms_sorted()]
    return {"alphabet": f.universe.kind, "N": f.universe.n, "terms": terms}


def poly_from_json(obj) -> Polynomial:
    """Decode the interchange format, rejecting malformed input with a location."""
    if not isinstance(obj, dict):
        raise PolynomialFormatError("document must be an object", "$")
    kind = obj.get("alphabet")
    if kind not in (EDGE, PAIRED):
        raise PolynomialFormatError('alphabet must be "edge" or "paired"', "alphabet")
    n = obj.get("N")
    if not isinstance(n, int) or n < 1:
        raise PolynomialFormatError("N must be a positive integer", "N")
    universe = Universe(kind, n)
    raw_terms = obj.get("terms")
    if not isinstance(raw_terms, list):
        raise PolynomialFormatError("terms must be a list", "terms")
    monomials: list[Monomial] = []
    seen_terms: set[Monomial] = set()
    for ti, raw in enumerate(raw_terms):
        loc = f"terms[{ti}]"
        if not isinstance(raw, list):
            raise PolynomialFormatError("term must be a list of variables", loc)
        vars_: list = []
        for vi, entry in enumerate(raw):
            vloc = f"{loc}[{vi}]"
            if kind == EDGE:
                if (
                    not isinstance(entry, list)
                    or len(entry) != 2
                    or not all(isinstance(x, int) for x in entry)
                ):
                    raise PolynomialFormatError("edge must be a pair [u, v] of ints", vloc)
                try:
                    var = edge(entry[0], entry[1])
                except ValueError as exc:
                    raise PolynomialFormatError(str(exc), vloc) from None
            else:
                if not isinstance(entry, str):
                    raise PolynomialFormatError('generator must be a string like "x3"', vloc)
                m = _PAIRED_NAME.match(entry)
                if not m:
                    raise PolynomialFormatError(f"bad generator name {entry!r}", vloc)
                var = (m.group(1), int(m.group(2)))
            try:
                universe.check_var(var)
            except ValueError as exc:
                raise PolynomialFormatError(str(exc), vloc) from None
            if var in vars_:
                raise PolynomialFormatError(
                    f"duplicate variable {entry!r} in term", vloc
                )
            vars_.append(var)
        mono = Monomial(tuple(vars_))
        if mono in seen_terms:
            raise PolynomialFormatError("duplicate term", loc)
        seen_terms.add(mono)
        monomials.append(mono)
    return Polynomial(universe, frozenset(monomials))
