from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zipk0.grpalg import (
    GroupAlgebraElement,
    demazure,
    demazure_character,
    demazure_word,
    frobenius,
    from_terms,
    hecke_invariants_window,
    monomial,
    one,
    orbit_sum,
    weyl_act,
    window_box,
    zero,
)
from zipk0.lattice import hermite_row_basis
from zipk0.rootdata import (
    all_reduced_words,
    pairing,
    positive_root_indices,
    preset,
    reflection_matrix,
    weyl_enumerate,
)


def sl2_x(k=1):
    return monomial(1, (k,))


def random_element(rng, rank, radius=3, nterms=4, cmax=5):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-radius, radius) for _ in range(rank))
        terms[e] = rng.randint(-cmax, cmax)
    return GroupAlgebraElement(rank, terms)


def delta_oracle(rd, i, f):
    """Independent Demazure oracle: geometric-series expansion per monomial."""
    idx = rd.simple_indices[i]
    alpha = rd.roots[idx]
    coroot = rd.coroots[idx]
    out = zero(rd.rank)
    for e, c in f.terms.items():
        m = pairing(e, coroot)
        if m >= 0:
            for j in range(m + 1):
                out = out + monomial(rd.rank, tuple(a - j * b for a, b in zip(e, alpha)), c)
        elif m == -1:
            pass
        else:
            for j in range(1, -m):
                out = out - monomial(rd.rank, tuple(a + j * b for a, b in zip(e, alpha)), c)
    return out


# -- ring arithmetic ---------------------------------------------------------


def test_unit_cancellation():
    assert sl2_x(1) * sl2_x(-1) == one(1)


def test_square_expansion():
    f = sl2_x(1) + sl2_x(-1)
    assert f * f == from_terms(1, [((2,), 1), ((0,), 2), ((-2,), 1)])


def test_difference_of_squares():
    f = sl2_x(1) + sl2_x(-1)
    g = sl2_x(1) - sl2_x(-1)
    assert f * g == from_terms(1, [((2,), 1), ((-2,), -1)])


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        one(1) * one(2)


def test_no_zero_terms_stored():
    f = sl2_x(1) - sl2_x(1)
    assert f.is_zero()
    assert f.terms == {}


def test_hash_and_eq_canonical():
    a = from_terms(1, [((1,), 1), ((2,), 3)])
    b = from_terms(1, [((2,), 3), ((1,), 1)])
    assert a == b and hash(a) == hash(b)


# -- Weyl action and orbit sums ----------------------------------------------


def test_weyl_act_sl2():
    rd = preset("SL2")
    s = reflection_matrix(rd.roots[0], rd.coroots[0])
    assert weyl_act(s, sl2_x(1)) == sl2_x(-1)
    f = sl2_x(1) + sl2_x(-1)
    assert weyl_act(s, f) == f


def test_weyl_act_identity():
    rd = preset("SL3")
    weyl = weyl_enumerate(rd)
    ident = weyl.elements[weyl.index_of(weyl.word_matrix(()))]
    f = from_terms(2, [((1, 2), 3), ((0, -1), -2)])
    assert weyl_act(ident, f) == f


def test_orbit_sums():
    rd = preset("SL2")
    weyl = weyl_enumerate(rd)
    assert orbit_sum(weyl, (1,)) == sl2_x(1) + sl2_x(-1)
    assert orbit_sum(weyl, (0,)) == one(1)
    rd3 = preset("SL3")
    w3 = weyl_enumerate(rd3)
    m = orbit_sum(w3, (1, 0))
    assert m == from_terms(2, [((1, 0), 1), ((-1, 1), 1), ((0, -1), 1)])


def test_frobenius():
    assert frobenius(sl2_x(1), 3) == sl2_x(3)
    assert frobenius(one(1), 5) == one(1)
    f = sl2_x(1) + sl2_x(-1)
    assert frobenius(f, 2) == sl2_x(2) + sl2_x(-2)


def test_frobenius_is_ring_map():
    rng = random.Random(11)
    for _ in range(20):
        f = random_element(rng, 2)
        g = random_element(rng, 2)
        assert frobenius(f * g, 3) == frobenius(f, 3) * frobenius(g, 3)


def test_frobenius_twist():
    tau = ((0, 1), (1, 0))
    f = monomial(2, (1, 0))
    assert frobenius(f, 2, tau) == monomial(2, (0, 2))


def test_weyl_and_frobenius_commute_untwisted():
    rd = preset("Sp4")
    weyl = weyl_enumerate(rd)
    rng = random.Random(5)
    for _ in range(10):
        f = random_element(rng, 2)
        for w in weyl.elements:
            assert weyl_act(w, frobenius(f, 3)) == frobenius(weyl_act(w, f), 3)


# -- Demazure operators ------------------------------------------------------


def test_demazure_of_one():
    rd = preset("SL2")
    assert demazure(rd, 0, one(1)) == one(1)


def test_demazure_sl2_xsquared():
    rd = preset("SL2")
    assert demazure(rd, 0, sl2_x(2)) == from_terms(1, [((2,), 1), ((0,), 1), ((-2,), 1)])


def test_demazure_of_e_minus_alpha():
    # Direct expansion: (e^{-a} - e^{-a}e^{a})/(1 - e^{-a}) = -1.
    rd = preset("SL2")
    e_minus_alpha = sl2_x(-2)
    result = demazure(rd, 0, e_minus_alpha)
    assert result == delta_oracle(rd, 0, e_minus_alpha)
    assert result == -one(1)


@pytest.mark.parametrize("name", ["SL2", "SL3", "Sp4"])
def test_demazure_matches_geometric_series_oracle(name):
    rd = preset(name)
    rng = random.Random(hash(name) % 10**6)
    for _ in range(50):
        f = random_element(rng, rd.rank)
        for i in range(len(rd.simple_indices)):
            assert demazure(rd, i, f) == delta_oracle(rd, i, f)


@pytest.mark.parametrize("name", ["SL2", "SL3"])
def test_demazure_idempotent(name):
    rd = preset(name)
    rng = random.Random(len(name))
    for _ in range(200):
        f = random_element(rng, rd.rank, nterms=3)
        for i in range(len(rd.simple_indices)):
            d = demazure(rd, i, f)
            assert demazure(rd, i, d) == d


@pytest.mark.parametrize("name", ["SL2", "SL3", "Sp4"])
def test_demazure_linear_over_reflection_invariants(name):
    rd = preset(name)
    rng = random.Random(17)
    for _ in range(30):
        f = random_element(rng, rd.rank, nterms=3)
        for i in range(len(rd.simple_indices)):
            idx = rd.simple_indices[i]
            s = reflection_matrix(rd.roots[idx], rd.coroots[idx])
            g0 = random_element(rng, rd.rank, radius=2, nterms=2)
            g = g0 + weyl_act(s, g0)  # s-invariant by construction
            assert demazure(rd, i, f * g) == demazure(rd, i, f) * g


def test_demazure_word_empty():
    rd = preset("SL3")
    f = from_terms(2, [((1, 1), 2)])
    assert demazure_word(rd, (), f) == f


def test_demazure_word_rejects_nonreduced():
    rd = preset("SL2")
    with pytest.raises(ValueError):
        demazure_word(rd, (0, 0), one(1))


@pytest.mark.parametrize("name,nrand", [("SL3", 100), ("Sp4", 100)])
def test_demazure_word_independence(name, nrand):
    # All pairs of reduced words of all Weyl elements agree (A2 and B2).
    rd = preset(name)
    weyl = weyl_enumerate(rd)
    lengths = [len(w) for w in weyl.reduced_words]
    rng = random.Random(23)
    pool = [random_element(rng, rd.rank, nterms=3) for _ in range(nrand)]
    checked = 0
    for k in range(len(weyl)):
        words = all_reduced_words(weyl, k, lengths)
        if len(words) < 2:
            continue
        for f in pool[: max(4, nrand // len(weyl))]:
            results = {hash(demazure_word(rd, w, f)) for w in words}
            first = demazure_word(rd, words[0], f)
            assert all(demazure_word(rd, w, f) == first for w in words[1:])
            checked += 1
    assert checked > 0


# -- Demazure characters -----------------------------------------------------


def weyl_dimension(rd, weight):
    """Weyl dimension formula via exact rational arithmetic."""
    pos = positive_root_indices(rd)
    pos_coroots = [rd.coroots[i] for i in pos]
    pos_roots = [rd.roots[i] for i in pos]
    rho = tuple(Fraction(sum(r[i] for r in pos_roots), 2) for i in range(rd.rank))
    dim = Fraction(1)
    for cv in pos_coroots:
        num = sum((Fraction(w) + r) * c for w, r, c in zip(weight, rho, cv))
        den = sum(r * c for r, c in zip(rho, cv))
        dim *= num / den
    assert dim.denominator == 1
    return dim.numerator


def test_demazure_character_trivial():
    rd = preset("SL3")
    assert demazure_character(rd, (0, 0)) == one(2)


def test_demazure_character_sl2_adjointish():
    rd = preset("SL2")
    ch = demazure_character(rd, (2,))
    assert ch == from_terms(1, [((2,), 1), ((0,), 1), ((-2,), 1)])
    assert ch.evaluate_at_one() == 3 == weyl_dimension(rd, (2,))


def test_demazure_character_sl3_minuscule():
    rd = preset("SL3")
    weyl = weyl_enumerate(rd)
    ch = demazure_character(rd, (1, 0))
    assert ch == orbit_sum(weyl, (1, 0))
    assert ch.evaluate_at_one() == 3


def test_demazure_character_rejects_nondominant():
    rd = preset("SL3")
    with pytest.raises(ValueError):
        demazure_character(rd, (-1, 0))


def test_demazure_character_dimensions_sl3():
    # Ten dominant weights: evaluation at 1 equals the Weyl dimension formula.
    rd = preset("SL3")
    weights = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (2, 2)]
    assert len(weights) == 10
    for lam in weights:
        ch = demazure_character(rd, lam)
        assert ch.evaluate_at_one() == weyl_dimension(rd, lam), lam


def test_demazure_character_invariant_under_weyl():
    rd = preset("Sp4")
    weyl = weyl_enumerate(rd)
    ch = demazure_character(rd, (1, 1), weyl)
    for w in weyl.elements:
        assert weyl_act(w, ch) == ch


# -- Windowed Hecke invariants -------------------------------------------------


def test_hecke_window_sl2():
    rd = preset("SL2")
    weyl = weyl_enumerate(rd)
    basis = hecke_invariants_window(rd, 3)
    assert len(basis) == 4
    # The span equals the span of the orbit sums m_0..m_3 (equivalently the
    # irreducible characters chi_0..chi_3) inside the window.
    box = window_box(1, 3)
    idx = {e: i for i, e in enumerate(box)}

    def coeff_row(f):
        row = [0] * len(box)
        for e, c in f.terms.items():
            row[idx[e]] = c
        return tuple(row)

    span_a = hermite_row_basis([coeff_row(f) for f in basis], len(box))
    span_b = hermite_row_basis(
        [coeff_row(orbit_sum(weyl, (k,))) for k in range(4)], len(box)
    )
    span_c = hermite_row_basis(
        [coeff_row(demazure_character(rd, (k,))) for k in range(4)], len(box)
    )
    assert span_a == span_b == span_c


def test_hecke_window_trivial():
    rd = preset("SL2")
    basis = hecke_invariants_window(rd, 0)
    assert len(basis) == 1
    assert basis[0] == one(1)


def test_hecke_window_sl3():
    rd = preset("SL3")
    weyl = weyl_enumerate(rd)
    basis = hecke_invariants_window(rd, 2)
    box = window_box(2, 2)
    idx = {e: i for i, e in enumerate(box)}

    def coeff_row(f):
        row = [0] * len(box)
        for e, c in f.terms.items():
            row[idx[e]] = c
        return tuple(row)

    # Dominant weights whose orbit stays inside the window.
    dominant = [
        lam
        for lam in box
        if all(pairing(lam, cv) >= 0 for cv in rd.simple_coroots)
        and all(max(abs(x) for x in nu) <= 2 for nu in [tuple(r) for r in orbit_sum(weyl, lam).support()])
    ]
    span_orbit = hermite_row_basis([coeff_row(orbit_sum(weyl, lam)) for lam in dominant], len(box))
    span_hecke = hermite_row_basis([coeff_row(f) for f in basis], len(box))
    assert span_orbit == span_hecke
    assert len(basis) == 6


def test_orbit_sum_weyl_invariant():
    for name in ("SL3", "Sp4", "GL3"):
        rd = preset(name)
        weyl = weyl_enumerate(rd)
        rng = random.Random(3)
        for _ in range(10):
            lam = tuple(rng.randint(-2, 2) for _ in range(rd.rank))
            m = orbit_sum(weyl, lam)
            for w in weyl.elements:
                assert weyl_act(w, m) == m


def test_orbit_sum_product_dominance_triangular():
    # Brute-force expansion: the coefficient of lambda + mu in m_lambda * m_mu
    # is exactly 1 for dominant lambda, mu, and every other dominant exponent
    # is lower in the positive-coroot height.
    for name in ("SL2", "SL3", "Sp4"):
        rd = preset(name)
        weyl = weyl_enumerate(rd)
        pos = positive_root_indices(rd)
        height = tuple(
            sum(rd.coroots[i][j] for i in pos) for j in range(rd.rank)
        )
        rng = random.Random(7)
        doms = []
        for _ in range(40):
            lam = tuple(rng.randint(0, 3) for _ in range(rd.rank))
            if all(pairing(lam, cv) >= 0 for cv in rd.simple_coroots):
                doms.append(lam)
        for i in range(0, len(doms) - 1, 2):
            lam, mu = doms[i], doms[i + 1]
            prod = orbit_sum(weyl, lam) * orbit_sum(weyl, mu)
            top = tuple(a + b for a, b in zip(lam, mu))
            assert prod.coefficient(top) == 1
            h_top = pairing(top, height)
            for e in prod.terms:
                if e != top and all(pairing(e, cv) >= 0 for cv in rd.simple_coroots):
                    assert pairing(e, height) < h_top
