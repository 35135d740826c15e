"""Theorem-level verification suites with machine-readable reports.

Each suite runs a family of exact checks through the ideal engine and
returns a VerificationReport: a pass verdict means every check held, a
fail verdict always carries a concrete counterexample witness.  Reports
are JSON-native and round-trip losslessly through to_json/from_json.

Default truncations are the smallest on which each claim is expressible:
the non-membership suite needs n+1 vertices, stability n+2 (so a
transvection can move off a cycle), the tail suite n+3 (cycle plus a
disjoint edge), the pair-product suite 2n+2 (two disjoint generators).
"""

from __future__ import annotations

import bisect
import csv
import io
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .glaction import Derivation, Transposition, Transvection, apply_derivation, apply_generator, phi
from .ideals import (
    IdealEngine,
    IdealSpec,
    default_engine,
    generator_infos,
    proof_replay_dkk,
)
from .rings import (
    Monomial,
    Multidegree,
    Polynomial,
    edge,
    edge_universe,
    plucker,
    poly_to_json,
    standard_cycle,
)


@dataclass
class VerificationReport:
    suite: str
    params: dict
    verdict: str
    witnesses: list
    dims: dict
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "dims": dict(self.dims),
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        return cls(
            suite=obj["suite"],
            params=dict(obj["params"]),
            verdict=obj["verdict"],
            witnesses=list(obj["witnesses"]),
            dims=dict(obj["dims"]),
            elapsed_ms=obj.get("elapsed_ms", 0.0),
        )


def _report(suite: str, params: dict, witnesses: list, dims: dict, t0: float) -> VerificationReport:
    ok = all(w.get("ok", False) for w in witnesses)
    return VerificationReport(
        suite=suite,
        params=params,
        verdict="pass" if ok else "fail",
        witnesses=witnesses,
        dims=dims,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _run_checks(check: Callable, tasks: Sequence, jobs: int) -> list:
    if jobs <= 1:
        return [check(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(check, tasks))


def _cycle_poly(universe, k: int) -> Polynomial:
    return Polynomial.monomial(universe, standard_cycle(k))


def verify_dkk(n: int, N: int | None = None, engine: IdealEngine | None = None) -> VerificationReport:
    """Both oracles agree the (n+1)-cycle avoids the n-th ideal but joins the next."""
    t0 = time.perf_counter()
    engine = engine or default_engine()
    N = N if N is not None else max(4, n + 1)
    spec = IdealSpec(n, N)
    w = _cycle_poly(edge_universe(spec.N), n + 1)
    label = f"cycle(1..{n + 1})"

    rank_verdict = engine.member(w, spec)
    replay = proof_replay_dkk(n, engine)
    next_spec = IdealSpec(n + 1, max(4, n + 1, N))
    chain_verdict = engine.member(w, next_spec)

    witnesses = [
        {
            "element": label,
            "check": f"rank oracle: not a member of ideal n={n}",
            "ok": not rank_verdict.contained and rank_verdict.certified,
        },
        {
            "element": label,
            "check": "functional replay: all spanning rows sum to 0 over long cycles, the cycle sums to 1",
            "ok": replay.passed,
            "rows": replay.num_rows,
        },
        {
            "element": label,
            "check": f"chain strictness: member of ideal n={n + 1}",
            "ok": chain_verdict.contained and chain_verdict.certified,
        },
    ]
    if replay.offending is not None:
        witnesses[1]["counterexample"] = {
            "generator": replay.offending[0],
            "cofactor": replay.offending[1],
        }
    rank_next = chain_verdict.components[0].rank if chain_verdict.components else 0
    dims = {
        "dim_component": replay.num_columns,
        "num_long_cycles": replay.num_cycle_columns,
        "rank_ideal": replay.rank,
        "rank_next": rank_next,
        "rank_gap": rank_next - replay.rank,
    }
    return _report("dkk", {"n": n, "N": N}, witnesses, dims, t0)


def group_generators(N: int) -> list:
    """All transvections (ordered index pairs) and transpositions within [1..N]."""
    els: list = [
        Transvection(s, t) for s in range(1, N + 1) for t in range(1, N + 1) if s != t
    ]
    els.extend(Transposition(a, b) for a, b in combinations(range(1, N + 1), 2))
    return els


def verify_stability(
    n: int,
    N: int | None = None,
    engine: IdealEngine | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Every group generator maps every ideal generator back into the ideal."""
    t0 = time.perf_counter()
    engine = engine or default_engine()
    N = N if N is not None else n + 2
    spec = IdealSpec(n, N)
    infos = generator_infos(spec)
    els = group_generators(N)
    tasks = [(gen, el) for gen in infos for el in els]

    def check(task):
        gen, el = task
        image = apply_generator(el, gen.poly)
        res = engine.member(image, spec)
        w = {
            "element": f"{el.label()} . {gen.label}",
            "ok": res.contained and res.certified,
        }
        if not w["ok"]:
            bad = [c for c in res.components if not c.contained]
            w["counterexample"] = {
                "generator": gen.label,
                "group_element": el.label(),
                "image": poly_to_json(image),
                "failing_degrees": [str(c.degree) for c in bad],
            }
        return w

    witnesses = _run_checks(check, tasks, jobs)
    dims = {
        "generators": len(infos),
        "group_elements": len(els),
        "checks": len(tasks),
    }
    return _report("stability", {"n": n, "N": N}, witnesses, dims, t0)


def verify_tail_containment(
    n: int, N: int | None = None, engine: IdealEngine | None = None
) -> VerificationReport:
    """The (n+1)-cycle times a disjoint edge lands in the n-th ideal."""
    t0 = time.perf_counter()
    engine = engine or default_engine()
    N = N if N is not None else n + 3
    spec = IdealSpec(n, N)
    universe = edge_universe(N)
    f = _cycle_poly(universe, n + 1) * Polynomial.monomial(
        universe, Monomial.of(edge(n + 2, n + 3))
    )
    res = engine.member(f, spec)
    witnesses = [
        {
            "element": f"cycle(1..{n + 1}) * x({n + 2},{n + 3})",
            "check": f"member of ideal n={n}",
            "ok": res.contained and res.certified,
        }
    ]
    if not witnesses[0]["ok"]:
        witnesses[0]["counterexample"] = poly_to_json(f)
    dims = {
        str(c.degree): {"dim_R": c.dim, "dim_I": c.rank} for c in res.components
    }
    return _report("tail", {"n": n, "N": N}, witnesses, dims, t0)


def verify_square_containment(
    n: int,
    N: int | None = None,
    engine: IdealEngine | None = None,
    seed: int = 0,
    limit: int = 5000,
    jobs: int = 1,
) -> VerificationReport:
    """Products of generator pairs of the (n+1)-st ideal lie in the n-th."""
    t0 = time.perf_counter()
    engine = engine or default_engine()
    N = N if N is not None else 2 * (n + 1)
    outer = IdealSpec(n, N)
    infos = generator_infos(IdealSpec(n + 1, N))
    G = len(infos)
    total = G * (G + 1) // 2
    sampled = total > limit
    if sampled:
        # sample flat indices into the (i <= j) pair triangle so the full
        # pair list is never materialized
        offsets = [0] * G
        for i in range(1, G):
            offsets[i] = offsets[i - 1] + (G - i + 1)
        indices = random.Random(seed).sample(range(total), limit)
        pairs = []
        for k in indices:
            i = bisect.bisect_right(offsets, k) - 1
            pairs.append((i, i + (k - offsets[i])))
    else:
        pairs = [(i, j) for i in range(G) for j in range(i, G)]

    def check(pair):
        i, j = pair
        f = infos[i].poly * infos[j].poly
        res = engine.member(f, outer)
        w = {
            "element": f"{infos[i].label} * {infos[j].label}",
            "ok": res.contained and res.certified,
        }
        if not w["ok"]:
            w["counterexample"] = {
                "pair": [infos[i].label, infos[j].label],
                "product": poly_to_json(f),
                "failing_degrees": [str(c.degree) for c in res.components if not c.contained],
            }
        return w

    witnesses = _run_checks(check, pairs, jobs)
    dims = {
        "generators_next": len(infos),
        "pairs_total": len(infos) * (len(infos) + 1) // 2,
        "pairs_checked": len(pairs),
    }
    params = {"n": n, "N": N, "seed": seed, "limit": limit, "sampled": sampled}
    return _report("square", params, witnesses, dims, t0)


def trivalent_cofactors() -> list[Monomial]:
    """Deterministic cofactors avoiding vertices 4 and 5, the hypothesis of the identity."""
    e = edge
    singles = [
        Monomial.of(e(1, 2)), Monomial.of(e(1, 3)), Monomial.of(e(2, 3)),
        Monomial.of(e(1, 6)), Monomial.of(e(2, 7)), Monomial.of(e(3, 8)),
        Monomial.of(e(6, 7)), Monomial.of(e(7, 8)), Monomial.of(e(8, 9)),
        Monomial.of(e(6, 9)), Monomial.of(e(1, 9)), Monomial.of(e(2, 6)),
    ]
    multi = [
        Monomial.of(e(1, 2), e(2, 3)),
        Monomial.of(e(1, 2), e(6, 7)),
        Monomial.of(e(6, 7), e(7, 8)),
        Monomial.of(e(6, 7), e(8, 9)),
        Monomial.of(e(1, 6), e(2, 7), e(3, 8)),
        Monomial.of(e(6, 7), e(7, 8), e(8, 9)),
        Monomial.of(e(6, 7), e(7, 8), e(6, 8)),  # triangle
        Monomial.of(e(1, 2), e(2, 3), e(1, 3)),  # triangle on the trivalent neighbours
        Monomial.of(e(1, 2), e(3, 6), e(7, 8)),
        Monomial.of(e(1, 9), e(2, 6), e(3, 7)),
        Monomial.of(e(1, 2), e(2, 6), e(6, 7), e(7, 9)),
    ]
    return [Monomial()] + singles + multi


def verify_trivalent_lemma(cofactors: Iterable[Monomial] | None = None) -> VerificationReport:
    """Derivation identity at a trivalent vertex.

    For m = m' x(1,4) x(2,4) x(3,4) with m' avoiding vertices 4 and 5, the
    derivation 4→5 must produce exactly m' times the trinomial obtained by
    moving one spoke at a time to vertex 5.
    """
    t0 = time.perf_counter()
    cofs = list(cofactors) if cofactors is not None else trivalent_cofactors()
    maxv = max([5] + [v for m in cofs for v in m.vertices()])
    universe = edge_universe(maxv)
    spokes = Monomial.of(edge(1, 4), edge(2, 4), edge(3, 4))
    trinomial = Polynomial.from_monomials(
        universe,
        [
            Monomial.of(edge(1, 5), edge(2, 4), edge(3, 4)),
            Monomial.of(edge(1, 4), edge(2, 5), edge(3, 4)),
            Monomial.of(edge(1, 4), edge(2, 4), edge(3, 5)),
        ],
    )
    deriv = Derivation(4, 5)
    witnesses = []
    for m_prime in cofs:
        if any(v in (4, 5) for v in m_prime.vertices()):
            raise ValueError(f"cofactor {m_prime} touches vertex 4 or 5")
        m = m_prime.mul(spokes)
        lhs = apply_derivation(deriv, Polynomial.monomial(universe, m))
        expected = Polynomial.monomial(universe, m_prime) * trinomial
        ok = lhs == expected
        w = {"element": m_prime.label(universe), "ok": ok}
        if not ok:
            w["counterexample"] = {
                "derivation_image": poly_to_json(lhs),
                "expected": poly_to_json(expected),
            }
        witnesses.append(w)
    return _report(
        "lemma", {"cofactors": len(cofs)}, witnesses, {"checks": len(cofs)}, t0
    )


def verify_phi_kernel(
    N: int = 6, n_max: int = 6, engine: IdealEngine | None = None
) -> VerificationReport:
    """The pairing substitution kills all quadrics and all cycles, yet the
    3-cycle stays outside the quadric ideal (strictness of the kernel)."""
    t0 = time.perf_counter()
    engine = engine or default_engine()
    universe = edge_universe(N)
    witnesses = []
    for quad in combinations(range(1, N + 1), 4):
        img = phi(plucker(universe, *quad))
        w = {"element": "pl(%d,%d,%d,%d)" % quad, "check": "phi image is zero", "ok": img.is_zero}
        if not img.is_zero:
            w["counterexample"] = poly_to_json(img)
        witnesses.append(w)
    for m in range(3, n_max + 1):
        img = phi(_cycle_poly(universe, m))
        w = {"element": f"cycle(1..{m})", "check": "phi image is zero", "ok": img.is_zero}
        if not img.is_zero:
            w["counterexample"] = poly_to_json(img)
        witnesses.append(w)
    x12 = Polynomial.monomial(universe, Monomial.of(edge(1, 2)))
    witnesses.append(
        {"element": "x(1,2)", "check": "phi image is nonzero", "ok": not phi(x12).is_zero}
    )
    w3 = _cycle_poly(universe, 3)
    strict = engine.member(w3, IdealSpec(2, max(4, N)))
    witnesses.append(
        {
            "element": "cycle(1,2,3)",
            "check": "in the kernel but outside the quadric ideal",
            "ok": phi(w3).is_zero and not strict.contained and strict.certified,
        }
    )
    dims = {"quadrics": len(list(combinations(range(1, N + 1), 4))), "cycles": max(0, n_max - 2)}
    return _report("phi", {"N": N, "n_max": n_max}, witnesses, dims, t0)


@dataclass
class DimensionTable:
    """Exact dimensions per (ideal, degree): component, ideal part, quotient."""

    rows: list = field(default_factory=list)

    def to_json(self) -> list:
        return list(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "degree", "dim_R", "dim_I", "dim_quotient"])
        for r in self.rows:
            writer.writerow([r["n"], r["degree"], r["dim_R"], r["dim_I"], r["dim_quotient"]])
        return buf.getvalue()


def dimension_stats(
    n_values: Sequence[int],
    degrees: Sequence[Multidegree],
    N: int | None = None,
    engine: IdealEngine | None = None,
) -> DimensionTable:
    engine = engine or default_engine()
    table = DimensionTable()
    for n in n_values:
        for d in degrees:
            N_eff = N if N is not None else max(4, n, d.max_vertex)
            basis = engine.basis(IdealSpec(n, N_eff), d)
            table.rows.append(
                {
                    "n": n,
                    "degree": str(d),
                    "dim_R": basis.dim,
                    "dim_I": basis.rank,
                    "dim_quotient": basis.dim - basis.rank,
                }
            )
    return table


def verify_all(
    n_max: int = 4,
    engine: IdealEngine | None = None,
    jobs: int = 1,
    seed: int = 0,
) -> list[VerificationReport]:
    """All suites over n = 2..n_max (pair products capped at n = 3 by budget)."""
    engine = engine or default_engine()
    reports: list[VerificationReport] = []
    for n in range(2, n_max + 1):
        reports.append(verify_dkk(n, engine=engine))
    for n in range(2, n_max + 1):
        reports.append(verify_stability(n, engine=engine, jobs=jobs))
    for n in range(2, n_max + 1):
        reports.append(verify_tail_containment(n, engine=engine))
    for n in range(2, min(n_max, 3) + 1):
        reports.append(verify_square_containment(n, engine=engine, seed=seed, jobs=jobs))
    reports.append(verify_trivalent_lemma())
    reports.append(verify_phi_kernel(N=max(6, n_max), n_max=max(3, n_max), engine=engine))
    return reports
