import random

import pytest

from glideals.ideals import (
    BudgetExceededError,
    IdealEngine,
    IdealSpec,
    canonical_degree,
    cycle_sum_functional,
    default_engine,
    generator_infos,
    generators,
    graded_basis,
    graded_spanning_rows,
    member,
    proof_replay_dkk,
)
from glideals.rings import (
    Monomial,
    Multidegree,
    Polynomial,
    cycle_monomial,
    edge,
    edge_universe,
    is_cycle_monomial,
    multidegree,
    plucker,
    standard_cycle,
)

U5 = edge_universe(5)


def mono(*pairs):
    return Monomial(tuple(edge(u, v) for u, v in pairs))


def cycle_poly(universe, k):
    return Polynomial.monomial(universe, standard_cycle(k))


# -- spec and generators ------------------------------------------------------


def test_idealspec_validation():
    IdealSpec(2, 4)
    with pytest.raises(ValueError):
        IdealSpec(1, 4)
    with pytest.raises(ValueError):
        IdealSpec(2, 3)
    with pytest.raises(ValueError):
        IdealSpec(5, 4)


def test_generator_counts():
    assert len(generators(IdealSpec(2, 4))) == 1
    assert len(generators(IdealSpec(3, 4))) == 5  # one quadric + four triangles
    assert len(generators(IdealSpec(4, 4))) == 8  # ... + three 4-cycle classes


def test_generators_are_multihomogeneous_and_deterministic():
    infos = generator_infos(IdealSpec(4, 5))
    assert [g.label for g in infos] == [g.label for g in generator_infos(IdealSpec(4, 5))]
    for g in infos:
        assert g.poly.is_multihomogeneous()
        comps = g.poly.components()
        assert list(comps) == [g.degree]
    # dihedral dedup: exactly (k-1)!/2 cycle classes per k-subset
    cycles4 = [g for g in infos if g.label.startswith("cycle(") and g.degree.total == 8]
    assert len(cycles4) == 5 * 3  # C(5,4) subsets x 3 classes


def test_nested_generator_lists():
    small = {g.label for g in generator_infos(IdealSpec(3, 5))}
    big = {g.label for g in generator_infos(IdealSpec(4, 5))}
    assert small < big


# -- spanning rows -------------------------------------------------------------


def test_spanning_rows_four_cycle_component_of_triangle_ideal(engine):
    spec = IdealSpec(3, 4)
    d = Multidegree.two_regular(4)
    span = engine.spanning_rows(spec, d)
    # triangles need a lone degree-2 leftover vertex, impossible: only the
    # quadric contributes, via its three perfect-matching cofactors
    infos = generator_infos(spec)
    assert all(infos[i].label == "pl(1,2,3,4)" for i, _ in span.provenance)
    assert len(span.rows) == 3
    for bits in span.rows:
        terms = [span.columns[j] for j in range(len(span.columns)) if (bits >> j) & 1]
        assert len(terms) == 2
        assert all(is_cycle_monomial(t, 4) for t in terms)
    assert graded_basis(spec, d, engine).rank == 2


def test_spanning_rows_triangle_is_its_own_component(engine):
    spec = IdealSpec(3, 4)
    d = Multidegree.from_dense([2, 2, 2])
    span = engine.spanning_rows(spec, d)
    assert len(span.rows) == 1
    assert graded_basis(spec, d, engine).rank == 1


def test_spanning_rows_empty_for_quadric_ideal_in_triangle_degree(engine):
    spec = IdealSpec(2, 4)
    d = Multidegree.from_dense([2, 2, 2])
    span = engine.spanning_rows(spec, d)
    assert span.rows == []
    assert graded_basis(spec, d, engine).rank == 0


def test_graded_basis_rank_examples(engine):
    d = Multidegree.two_regular(4)
    assert graded_basis(IdealSpec(3, 4), d, engine).rank == 2
    assert graded_basis(IdealSpec(4, 4), d, engine).rank == 3  # full: all 4-cycles
    assert graded_basis(IdealSpec(2, 4), Multidegree.from_dense([1, 1]), engine).rank == 0


def test_spanning_rows_rejects_oversized_support(engine):
    with pytest.raises(ValueError):
        engine.spanning_rows(IdealSpec(2, 4), Multidegree.two_regular(5))


# -- membership ----------------------------------------------------------------


def test_member_generator(engine):
    assert member(plucker(U5, 1, 2, 3, 4), IdealSpec(2, 5), engine)


def test_member_cycle_not_in_smaller_ideal(engine):
    res = member(cycle_poly(edge_universe(4), 4), IdealSpec(3, 4), engine)
    assert not res
    assert res.certified
    (comp,) = res.components
    assert comp.dim == 3 and comp.rank == 2


def test_member_tail_product(engine):
    f = cycle_poly(U5, 3) * Polynomial.monomial(U5, mono((4, 5)))
    assert member(f, IdealSpec(2, 5), engine)


def test_member_zero_and_one(engine):
    for spec in (IdealSpec(2, 4), IdealSpec(3, 5), IdealSpec(4, 6)):
        u = edge_universe(spec.N)
        assert member(Polynomial.zero(u), spec, engine)
        assert not member(Polynomial.one(u), spec, engine)


def test_member_mixed_degrees_splits_components(engine):
    u = edge_universe(4)
    f = plucker(u, 1, 2, 3, 4) + cycle_poly(u, 3)
    res = member(f, IdealSpec(2, 4), engine)
    assert len(res.components) == 2
    by_degree = {str(c.degree): c.contained for c in res.components}
    assert by_degree == {"(1,1,1,1)": True, "(2,2,2)": False}
    assert not res


def test_member_rejects_unsupported_degrees(engine):
    f = cycle_poly(U5, 5)
    with pytest.raises(ValueError):
        member(f, IdealSpec(2, 4), engine)


def test_member_requires_edge_universe(engine):
    from glideals.glaction import phi

    with pytest.raises(ValueError):
        member(phi(Polynomial.one(U5)), IdealSpec(2, 4), engine)


# -- canonicalization -----------------------------------------------------------


def test_canonical_degree_sorts_descending():
    d = Multidegree.from_map({3: 1, 5: 2, 7: 2})
    canon, mapping = canonical_degree(d)
    assert canon.dense() == (2, 2, 1)
    assert mapping == {5: 1, 7: 2, 3: 3}


def test_canonical_membership_agrees_with_direct_basis(engine):
    # membership via the canonical relabeling must match the basis computed
    # at the original degree
    rng = random.Random(73)
    spec = IdealSpec(3, 6)
    u = edge_universe(6)
    direct = IdealEngine()
    for _ in range(25):
        verts = sorted(rng.sample(range(1, 7), rng.randrange(3, 6)))
        pool = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]]
        rng.shuffle(pool)
        terms = []
        for _ in range(rng.randrange(1, 4)):
            terms.append(Monomial(tuple(pool[: rng.randrange(1, min(4, len(pool)) + 1)])))
        f = Polynomial.from_monomials(u, terms)
        if f.is_zero:
            continue
        res = engine.member(f, spec)
        for comp, (d, g) in zip(res.components, sorted(f.components().items())):
            basis = direct.basis(spec, d)
            assert comp.contained == basis.contains(g)
            assert comp.rank == basis.rank
            assert comp.dim == basis.dim


# -- invariants ------------------------------------------------------------------


def test_chain_monotonicity(engine):
    for n in (2, 3, 4):
        d = Multidegree.two_regular(n + 1)
        N = max(4, n + 1)
        small = graded_basis(IdealSpec(n, N), d, engine)
        big = graded_basis(IdealSpec(n + 1, N), d, engine)
        for row in small.matrix().rows:
            assert big.echelon.contains(row)
        assert small.rank <= big.rank


def test_ideal_closed_under_multiplication(engine):
    rng = random.Random(79)
    spec = IdealSpec(3, 5)
    d = Multidegree.two_regular(4)
    basis = graded_basis(spec, d, engine)
    u = edge_universe(5)
    rows = basis.matrix().rows
    for _ in range(20):
        h = basis.row_polynomial(rng.choice(rows))
        a, b = rng.sample(range(1, 6), 2)
        f = h * Polynomial.monomial(u, mono((a, b)))
        assert member(f, spec, engine)


def test_localization_rank_independent_of_truncation(engine):
    for n, d in [(2, Multidegree.two_regular(4)), (3, Multidegree.from_dense([2, 2, 1, 1]))]:
        ranks = {graded_basis(IdealSpec(n, N), d, engine).rank for N in (4, 6, 7)}
        assert len(ranks) == 1


# -- functional oracle ------------------------------------------------------------


def test_functional_on_long_cycle():
    for n in (2, 3, 4):
        u = edge_universe(n + 1)
        assert cycle_sum_functional(cycle_poly(u, n + 1), n) == 1


def test_functional_on_quadric_row_is_zero():
    u = edge_universe(4)
    f = plucker(u, 1, 2, 3, 4) * Polynomial.monomial(u, mono((1, 2), (3, 4)))
    assert cycle_sum_functional(f, 3) == 0


def test_functional_zero_on_short_cycle_monomials():
    u = edge_universe(6)
    m = cycle_monomial([1, 2, 3]).mul(cycle_monomial([4, 5, 6]))
    assert cycle_sum_functional(Polynomial.monomial(u, m), 5) == 0


def test_functional_degree_validation():
    u = edge_universe(6)
    with pytest.raises(ValueError):
        cycle_sum_functional(cycle_poly(u, 4), 4)  # needs 5 vertices
    with pytest.raises(ValueError):
        cycle_sum_functional(Polynomial.monomial(u, mono((1, 2))), 1)
    mixed = cycle_poly(u, 4) + Polynomial.monomial(u, cycle_monomial([2, 3, 4, 5]))
    with pytest.raises(ValueError):
        cycle_sum_functional(mixed, 3)  # two different supports
    assert cycle_sum_functional(Polynomial.zero(u), 3) == 0


def test_proof_replay_small(engine):
    rep2 = proof_replay_dkk(2, engine)
    assert rep2.passed and rep2.num_columns == 1 and rep2.rank == 0
    rep3 = proof_replay_dkk(3, engine)
    assert rep3.passed and rep3.num_columns == 3 and rep3.rank == 2
    assert rep3.cycle_functional == 1


def test_oracles_agree(engine):
    for n in (2, 3, 4):
        rep = proof_replay_dkk(n, engine)
        res = member(cycle_poly(edge_universe(max(4, n + 1)), n + 1), IdealSpec(n, max(4, n + 1)), engine)
        assert rep.passed and not res


# -- guards and cache ---------------------------------------------------------------


def test_budget_guard_refuses_then_force_proceeds():
    tiny = IdealEngine(budget=5)
    spec = IdealSpec(3, 4)
    d = Multidegree.two_regular(4)
    with pytest.raises(BudgetExceededError) as exc:
        tiny.basis(spec, d)
    assert exc.value.budget == 5
    forced = IdealEngine(budget=5, force=True)
    assert forced.basis(spec, d).rank == 2


def test_default_budget_clears_all_suite_sizes():
    eng = IdealEngine()
    eng.basis(IdealSpec(5, 6), Multidegree.two_regular(6))  # no BudgetExceededError


def test_disk_cache_roundtrip(tmp_path):
    d = Multidegree.two_regular(4)
    spec = IdealSpec(3, 4)
    first = IdealEngine(cache_dir=tmp_path, spill_cells=1)
    b1 = first.basis(spec, d)
    files = list(tmp_path.glob("basis_v*.json"))
    assert len(files) == 1
    second = IdealEngine(cache_dir=tmp_path, spill_cells=1)
    b2 = second.basis(spec, d)
    assert b2.rank == b1.rank
    assert b2.matrix().rows == b1.matrix().rows


def test_disk_cache_corruption_recomputes(tmp_path):
    d = Multidegree.two_regular(4)
    spec = IdealSpec(3, 4)
    eng = IdealEngine(cache_dir=tmp_path, spill_cells=1)
    b1 = eng.basis(spec, d)
    (path,) = tmp_path.glob("basis_v*.json")
    path.write_text(path.read_text().replace('"rank": 2', '"rank": 3'))
    fresh = IdealEngine(cache_dir=tmp_path, spill_cells=1)
    assert fresh.basis(spec, d).rank == b1.rank


def test_default_engine_is_shared():
    assert default_engine() is default_engine()
    assert member(Polynomial.zero(U5), IdealSpec(2, 5))
    assert graded_spanning_rows(IdealSpec(2, 4), Multidegree.from_dense([1, 1])).rows == []
