"""Linear-group generators, Lie derivations, and the pairing substitution.

A transvection sends one basis vector e_s to e_s + e_t and fixes the rest;
its action on an edge variable follows from x(a,b) = e_a ∧ e_b, expanded
bilinearly with e_c ∧ e_c = 0.  Transpositions permute indices.  The
derivation D(s→t) replaces index s by t in one variable occurrence at a
time (Leibniz rule), so D(s→t)(x(a,b)) = 0 whenever s ∉ {a, b} and in
particular D kills constants.  phi substitutes x(i,j) ↦ x_i y_j + x_j y_i
into the paired universe and extends multiplicatively.

Over GF(2) the only invertible diagonal matrix is the identity, so
diagonal generators are omitted; transvections and transpositions are the
group generators with content at a finite truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

from .rings import (
    EDGE,
    Monomial,
    Polynomial,
    edge,
    paired_universe,
    relabel,
    xvar,
    yvar,
)


@dataclass(frozen=True)
class Transvection:
    """e_src ↦ e_src + e_add, every other basis vector fixed."""

    src: int
    add: int

    def __post_init__(self):
        if self.src == self.add:
            raise ValueError("transvection needs two distinct indices")
        if self.src < 1 or self.add < 1:
            raise ValueError("indices must be positive")

    def label(self) -> str:
        return f"transv({self.src}+={self.add})"


@dataclass(frozen=True)
class Transposition:
    """The permutation swapping two indices."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("transposition needs two distinct indices")
        if self.a < 1 or self.b < 1:
            raise ValueError("indices must be positive")

    def label(self) -> str:
        return f"swap({self.a},{self.b})"


GroupGenerator = Union[Transvection, Transposition]


@dataclass(frozen=True)
class Derivation:
    """The Leibniz derivation replacing index src by dst, one occurrence at a time."""

    src: int
    dst: int

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError("derivation needs two distinct indices")
        if self.src < 1 or self.dst < 1:
            raise ValueError("indices must be positive")

    def label(self) -> str:
        return f"deriv({self.src}->{self.dst})"


def _require_edge_poly(f: Polynomial) -> None:
    if f.universe.kind != EDGE:
        raise ValueError("alphabet mismatch: expected an edge-universe polynomial")


def apply_generator(g: GroupGenerator, f: Polynomial) -> Polynomial:
    """Image of f under a group generator; a ring homomorphism."""
    _require_edge_poly(f)
    n = f.universe.n
    if isinstance(g, Transposition):
        if g.a > n or g.b > n:
            raise ValueError(f"transposition index exceeds truncation {n}")
        return relabel(f, {g.a: g.b, g.b: g.a})
    if g.src > n or g.add > n:
        raise ValueError(f"transvection index exceeds truncation {n}")
    s, t = g.src, g.add
    universe = f.universe
    one = Polynomial.one(universe)
    acc = Polynomial.zero(universe)
    for term in f.terms:
        factors = []
        for (a, b) in term.vars:
            if s == a or s == b:
                other = b if a == s else a
                images = [Monomial.of(edge(s, other))]
                if other != t:
                    images.append(Monomial.of(edge(t, other)))
                factors.append(Polynomial.from_monomials(universe, images))
            else:
                factors.append(Polynomial.monomial(universe, Monomial.of((a, b))))
        acc = acc + reduce(Polynomial.__mul__, factors, one)
    return acc


def apply_derivation(e: Derivation, f: Polynomial) -> Polynomial:
    """Image of f under the derivation; satisfies the Leibniz rule exactly."""
    _require_edge_poly(f)
    if e.dst > f.universe.n:
        raise ValueError(f"derivation target exceeds truncation {f.universe.n}")
    s, t = e.src, e.dst
    acc: set[Monomial] = set()
    for term in f.terms:
        vars_ = term.vars
        for idx, (a, b) in enumerate(vars_):
            if s != a and s != b:
                continue
            other = b if a == s else a
            if other == t:
                continue  # e_t ∧ e_t = 0
            new_var = edge(other, t)
            rest = vars_[:idx] + vars_[idx + 1 :]
            if new_var in rest:
                continue  # square-kill
            acc.symmetric_difference_update((Monomial(rest + (new_var,)),))
    return Polynomial(f.universe, frozenset(acc))


def phi(f: Polynomial) -> Polynomial:
    """Substitute x(i,j) ↦ x_i y_j + x_j y_i into the paired universe."""
    _require_edge_poly(f)
    target = paired_universe(f.universe.n)
    one = Polynomial.one(target)
    acc = Polynomial.zero(target)
    for term in f.terms:
        factors = [
            Polynomial.from_monomials(
                target,
                [Monomial.of(xvar(i), yvar(j)), Monomial.of(xvar(j), yvar(i))],
            )
            for (i, j) in term.vars
        ]
        acc = acc + reduce(Polynomial.__mul__, factors, one)
    return acc


def permute_paired(f: Polynomial, a: int, b: int) -> Polynomial:
    """Swap indices a and b simultaneously on the x- and y-generators."""
    if f.universe.kind != "paired":
        raise ValueError("alphabet mismatch: expected a paired-universe polynomial")
    return relabel(f, {a: b, b: a})
