import random
from itertools import combinations, product

import pytest

from glideals.glaction import (
    Derivation,
    Transposition,
    Transvection,
    apply_derivation,
    apply_generator,
    permute_paired,
    phi,
)
from glideals.rings import (
    Monomial,
    Polynomial,
    edge,
    edge_universe,
    plucker,
    relabel,
    standard_cycle,
)

U = edge_universe(8)


def mono(*pairs):
    return Monomial(tuple(edge(u, v) for u, v in pairs))


def poly(*monomials):
    return Polynomial.from_monomials(U, monomials)


def random_poly(rng, universe=U, max_terms=3, max_edges=3):
    terms = []
    for _ in range(rng.randrange(0, max_terms + 1)):
        pool = list(combinations(range(1, universe.n + 1), 2))
        rng.shuffle(pool)
        terms.append(Monomial(tuple(pool[: rng.randrange(0, max_edges + 1)])))
    return Polynomial.from_monomials(universe, terms)


def naive_phi_monomial(m):
    """Independent oracle: expand the product of pairing binomials by
    choosing one branch per edge and cancelling squarefree collisions mod 2."""
    counts = {}
    for choice in product((0, 1), repeat=len(m.vars)):
        gens = []
        for (i, j), c in zip(m.vars, choice):
            gens.extend([("x", i), ("y", j)] if c == 0 else [("x", j), ("y", i)])
        if len(set(gens)) != len(gens):
            continue
        key = tuple(sorted(gens))
        counts[key] = counts.get(key, 0) + 1
    return {k for k, c in counts.items() if c % 2}


# -- transvections -------------------------------------------------------------


def test_transvection_moves_free_endpoint():
    g = Transvection(1, 2)
    assert apply_generator(g, poly(mono((1, 3)))) == poly(mono((1, 3)), mono((2, 3)))


def test_transvection_fixed_on_shared_edge():
    # (e1 + e2) ∧ e2 = e1 ∧ e2
    g = Transvection(1, 2)
    assert apply_generator(g, poly(mono((1, 2)))) == poly(mono((1, 2)))


def test_transvection_fixes_untouched_indices():
    g = Transvection(1, 2)
    assert apply_generator(g, poly(mono((3, 4)))) == poly(mono((3, 4)))


def test_transvection_is_involution():
    rng = random.Random(41)
    for _ in range(100):
        f = random_poly(rng)
        g = Transvection(*rng.sample(range(1, 9), 2))
        assert apply_generator(g, apply_generator(g, f)) == f


def test_transvection_is_ring_homomorphism():
    rng = random.Random(43)
    for _ in range(100):
        f = random_poly(rng)
        h = random_poly(rng)
        g = Transvection(*rng.sample(range(1, 9), 2))
        assert apply_generator(g, f + h) == apply_generator(g, f) + apply_generator(g, h)
        assert apply_generator(g, f * h) == apply_generator(g, f) * apply_generator(g, h)


def test_transposition_squares_to_identity_and_relabels():
    rng = random.Random(47)
    for _ in range(50):
        f = random_poly(rng)
        a, b = rng.sample(range(1, 9), 2)
        g = Transposition(a, b)
        once = apply_generator(g, f)
        assert once == relabel(f, {a: b, b: a})
        assert apply_generator(g, once) == f


def test_generator_errors():
    with pytest.raises(ValueError):
        Transvection(2, 2)
    with pytest.raises(ValueError):
        Transposition(1, 1)
    with pytest.raises(ValueError):
        apply_generator(Transvection(1, 9), poly(mono((1, 2))))
    p = phi(poly(mono((1, 2))))
    with pytest.raises(ValueError):
        apply_generator(Transvection(1, 2), p)


# -- derivations ----------------------------------------------------------------


def test_derivation_single_variable():
    d = Derivation(4, 5)
    assert apply_derivation(d, poly(mono((1, 4)))) == poly(mono((1, 5)))
    assert apply_derivation(d, poly(mono((1, 2)))).is_zero


def test_derivation_trivalent_leibniz_expansion():
    d = Derivation(4, 5)
    spokes = poly(mono((1, 4), (2, 4), (3, 4)))
    expected = poly(
        mono((1, 5), (2, 4), (3, 4)),
        mono((1, 4), (2, 5), (3, 4)),
        mono((1, 4), (2, 4), (3, 5)),
    )
    assert apply_derivation(d, spokes) == expected


def test_derivation_trivalent_with_cofactor_by_brute_force():
    # m' = x(1,2): expand termwise; the derivation touches only the spokes
    d = Derivation(4, 5)
    m = poly(mono((1, 2), (1, 4), (2, 4), (3, 4)))
    result = apply_derivation(d, m)
    by_hand = poly(
        mono((1, 2), (1, 5), (2, 4), (3, 4)),
        mono((1, 2), (1, 4), (2, 5), (3, 4)),
        mono((1, 2), (1, 4), (2, 4), (3, 5)),
    )
    assert result == by_hand


def test_derivation_square_kill_and_loop_kill():
    d = Derivation(4, 5)
    # replacing 4 by 5 collides with an existing edge
    assert apply_derivation(d, poly(mono((1, 4), (1, 5)))) == poly(mono((1, 4), (1, 5))) + poly(
        mono((1, 4), (1, 5))
    )  # i.e. zero: both replacement terms die
    # replacing 4 by 5 in x(4,5) would make a loop
    assert apply_derivation(d, poly(mono((4, 5)))).is_zero


def test_derivation_leibniz_product_rule():
    rng = random.Random(53)
    d = Derivation(4, 5)
    for _ in range(100):
        f = random_poly(rng)
        g = random_poly(rng)
        lhs = apply_derivation(d, f * g)
        rhs = apply_derivation(d, f) * g + f * apply_derivation(d, g)
        assert lhs == rhs


def test_derivation_is_linear():
    rng = random.Random(59)
    d = Derivation(2, 7)
    for _ in range(50):
        f = random_poly(rng)
        g = random_poly(rng)
        assert apply_derivation(d, f + g) == apply_derivation(d, f) + apply_derivation(d, g)


def test_derivation_kills_constants():
    d = Derivation(4, 5)
    assert apply_derivation(d, Polynomial.one(U)).is_zero
    assert apply_derivation(d, Polynomial.zero(U)).is_zero


# -- pairing substitution --------------------------------------------------------


def test_phi_single_edge():
    img = phi(poly(mono((1, 2))))
    assert img == Polynomial.from_monomials(
        img.universe,
        [Monomial.of(("x", 1), ("y", 2)), Monomial.of(("x", 2), ("y", 1))],
    )
    assert not img.is_zero


def test_phi_kills_plucker_by_brute_force():
    pl = plucker(U, 1, 2, 3, 4)
    img = phi(pl)
    assert img.is_zero
    # oracle: the 12 expanded products cancel pairwise mod 2
    acc = set()
    for t in pl.terms:
        acc ^= naive_phi_monomial(t)
    assert acc == set()


def test_phi_kills_triangle_by_brute_force():
    w3 = poly(standard_cycle(3))
    assert phi(w3).is_zero
    assert naive_phi_monomial(standard_cycle(3)) == set()


def test_phi_matches_naive_expansion_on_random_monomials():
    rng = random.Random(61)
    for _ in range(60):
        f = random_poly(rng, max_terms=1)
        if not f.terms:
            continue
        (t,) = f.terms
        img = phi(f)
        expected = {m.vars for m in img.terms}
        assert naive_phi_monomial(t) == expected


def test_phi_is_ring_homomorphism():
    rng = random.Random(67)
    for _ in range(100):
        f = random_poly(rng)
        g = random_poly(rng)
        assert phi(f * g) == phi(f) * phi(g)
        assert phi(f + g) == phi(f) + phi(g)


def test_phi_equivariance_under_transpositions():
    rng = random.Random(71)
    for _ in range(100):
        f = random_poly(rng)
        a, b = rng.sample(range(1, 9), 2)
        swapped = apply_generator(Transposition(a, b), f)
        assert phi(swapped) == permute_paired(phi(f), a, b)
