from __future__ import annotations

import random

import pytest

from zipk0.groebner import (
    PolyRingSpec,
    ResourceCapError,
    eliminate,
    ideal_member,
    invariant_factors,
    normal_form_gb,
    poly_to_string,
    quotient_z_module,
    strong_groebner,
    verify_strong_groebner,
)
from zipk0.lattice import IntegerMatrix, smith_normal_form, diagonal_of




def test_coefficient_gcd_combination():
    # (2x, 3x) contains x = 3x - 2x.
    spec = PolyRingSpec(("x",))
    gb = strong_groebner([{(1,): 2}, {(1,): 3}], spec)
    assert gb.to_strings() == ["x"]


def test_laurent_pair_rank_two():
    # (x^2 - 1, x*xbar - 1): normal forms {1, x} span; rank 2, no torsion.
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    gb = strong_groebner([{(0, 2): 1, (0, 0): -1}], spec)
    assert verify_strong_groebner(gb)
    report = quotient_z_module(gb)
    assert report.finite
    assert report.rank == 2
    assert report.torsion == ()
    assert set(report.standard_monomials) == {(0, 0), (0, 1)}


def test_laurent_frobenius_difference_rank_six():
    # x + x^-1 - x^3 - x^-3 with unit relation: rank 2p = 6 for p = 3.
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    f = {(0, 1): 1, (1, 0): 1, (0, 3): -1, (3, 0): -1}
    gb = strong_groebner([f], spec)
    assert verify_strong_groebner(gb)
    report = quotient_z_module(gb)
    assert report.finite and report.rank == 6 and report.torsion == ()


def test_normal_form_membership_and_units():
    spec = PolyRingSpec(("x",))
    g = {(2,): 1, (0,): -5}
    gb = strong_groebner([g], spec)
    assert normal_form_gb(g, gb) == {}
    assert ideal_member({(4,): 1, (2,): -5, (0,): 0}, gb) is False  # x^4 - 5x^2 = x^2 g: member
    assert ideal_member({(4,): 1, (2,): -5}, gb)
    # 2 does not reduce 1 over Z.
    gb2 = strong_groebner([{(0,): 2}], spec)
    assert normal_form_gb({(0,): 1}, gb2) == {(0,): 1}


def test_normal_form_of_generator_is_zero():
    spec = PolyRingSpec(("x", "y"))
    g = {(2, 0): 3, (0, 1): -2, (0, 0): 7}
    gb = strong_groebner([g], spec)
    assert normal_form_gb(g, gb) == {}


def test_eliminate_substitution():
    # (y - x^2, x - t), eliminate x: get y - t^2.
    spec = PolyRingSpec(("x", "y", "t"), blocks=((0,), (1, 2)))
    gb = strong_groebner(
        [{(0, 1, 0): 1, (2, 0, 0): -1}, {(1, 0, 0): 1, (0, 0, 1): -1}], spec
    )
    egb = eliminate(gb, (0,))
    assert egb.spec.names == ("y", "t")
    polys = egb.as_dicts()
    assert len(polys) == 1
    assert polys[0] == {(1, 0): 1, (0, 2): -1} or polys[0] == {(0, 2): 1, (1, 0): -1}


def test_eliminate_gl2_graph_ideal():
    # Graph of the GL2 invariant generators: only relation is y2*y3 = 1.
    # Variables: x1bar, x1, x2bar, x2 | y1, y2, y3.
    names = ("x1bar", "x1", "x2bar", "x2", "y1", "y2", "y3")
    spec = PolyRingSpec(
        names,
        inverse_pairs=((0, 1), (2, 3)),
        blocks=((0, 1, 2, 3), (4, 5, 6)),
    )

    def mono(**kw):
        e = [0] * 7
        for k, v in kw.items():
            e[names.index(k)] = v
        return tuple(e)

    gens = [
        {mono(y1=1): 1, mono(x1=1): -1, mono(x2=1): -1},            # y1 - (x1+x2)
        {mono(y2=1): 1, mono(x1=1, x2=1): -1},                       # y2 - x1 x2
        {mono(y3=1, x1=1, x2=1): 1, mono(): -1},                     # y3 x1 x2 - 1
    ]
    gb = strong_groebner(gens, spec)
    egb = eliminate(gb, (0, 1, 2, 3))
    assert egb.spec.names == ("y1", "y2", "y3")
    assert [poly_to_string(g, egb.spec) for g in egb.as_dicts()] == ["y2*y3 - 1"]


def test_eliminate_sl2_graph_no_relation():
    # R(G) for SL2 is a free polynomial ring: no relation among y.
    names = ("xbar", "x", "y")
    spec = PolyRingSpec(names, inverse_pairs=((0, 1),), blocks=((0, 1), (2,)))
    gens = [{(0, 0, 1): 1, (0, 1, 0): -1, (1, 0, 0): -1}]  # y - (x + xbar)
    gb = strong_groebner(gens, spec)
    egb = eliminate(gb, (0, 1))
    assert egb.as_dicts() == []


def test_quotient_frobenius_rewriting_rank():
    # (x - x^p, xbar - xbar^p, x*xbar - 1) for p = 3: exponents collapse
    # mod p - 1 = 2 with x invertible: free of rank 2.
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    p = 3
    gens = [
        {(0, 1): 1, (0, p): -1},
        {(1, 0): 1, (p, 0): -1},
    ]
    gb = strong_groebner(gens, spec)
    rep = quotient_z_module(gb)
    assert rep.finite and rep.rank == 2 and rep.torsion == ()


def test_quotient_not_module_finite():
    # Ideal (2) in Z[x]: every monomial survives with Z/2 coefficients.
    spec = PolyRingSpec(("x",))
    gb = strong_groebner([{(0,): 2}], spec)
    rep = quotient_z_module(gb, bound=6)
    assert not rep.finite
    assert rep.rank == 0
    # One Z/2 per surviving monomial up to the bound.
    assert rep.torsion == (2,) * 7
    assert "truncated" in rep.note


def test_quotient_mixed_free_and_torsion():
    # (x^2 - 1, 2x - 2) in Z[x]: Z + Z/2.
    spec = PolyRingSpec(("x",))
    gb = strong_groebner([{(2,): 1, (0,): -1}, {(1,): 2, (0,): -2}], spec)
    rep = quotient_z_module(gb)
    assert rep.finite
    assert rep.rank == 1
    assert rep.torsion == (2,)


def test_invariant_factors_merge():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([2, 2]) == (2, 2)
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([]) == ()


def test_laurent_saturation_recovery():
    # Adjoining an inverse and eliminating it saturates at the variable:
    # (v*y - v) with v invertible gives (y - 1).
    names = ("vbar", "v", "y")
    spec = PolyRingSpec(names, inverse_pairs=((0, 1),), blocks=((0,), (1, 2)))
    gens = [{(0, 1, 1): 1, (0, 1, 0): -1}]  # v y - v
    gb = strong_groebner(gens, spec)
    egb = eliminate(gb, (0,))
    # The elimination ideal in Z[v, y] contains y - 1.
    polys = egb.as_dicts()
    assert {(0, 1): 1, (0, 0): -1} in polys


@pytest.mark.parametrize("seed", range(10))
def test_soundness_random_ideals(seed):
    # normal_form(f*g + h) == normal_form(h) for f in the ideal.
    rng = random.Random(seed)
    spec = PolyRingSpec(("x", "y"))

    def rand_poly(nterms, deg=3, cmax=4):
        out = {}
        for _ in range(nterms):
            m = (rng.randint(0, deg), rng.randint(0, deg))
            c = rng.randint(-cmax, cmax)
            if c:
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    gens = [rand_poly(3) for _ in range(2)]
    gens = [g for g in gens if g]
    if not gens:
        return
    gb = strong_groebner(gens, spec)
    assert verify_strong_groebner(gb)
    for _ in range(10):
        f = gens[rng.randrange(len(gens))]
        g = rand_poly(2)
        h = rand_poly(3)
        fg = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                mm = tuple(a + b for a, b in zip(m1, m2))
                fg[mm] = fg.get(mm, 0) + c1 * c2
        lhs = dict(fg)
        for m, c in h.items():
            lhs[m] = lhs.get(m, 0) + c
        lhs = {m: c for m, c in lhs.items() if c}
        assert normal_form_gb(lhs, gb) == normal_form_gb(h, gb)


def test_determinism_repeat_runs():
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    f = {(0, 1): 1, (1, 0): 1, (0, 3): -1, (3, 0): -1}
    a = strong_groebner([f], spec)
    b = strong_groebner([f], spec)
    assert a.polys == b.polys
    assert a.to_strings() == b.to_strings()


def test_resource_cap_raises():
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    f = {(0, 1): 1, (1, 0): 1, (0, 3): -1, (3, 0): -1}
    with pytest.raises(ResourceCapError):
        strong_groebner([f], spec, max_degree=3)
    with pytest.raises(ResourceCapError):
        strong_groebner([f], spec, max_basis=2)


# ---------------------------------------------------------------------------
# Windowed brute-force oracle for Laurent quotient modules (rank-1 lattice)


def laurent_box_invariants(gens_exponents, box_radius):
    """Independent oracle: Z-module invariants of Z[x,x^-1]/(gens) truncated
    to the exponent box [-box, box], relations being all shifts of the
    generators whose support stays inside the box.

    gens_exponents: list of {exponent: coeff} Laurent polynomials in Z.
    Returns (free_rank, torsion tuple).
    """
    basis = list(range(-box_radius, box_radius + 1))
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens_exponents:
        lo = min(g)
        hi = max(g)
        for shift in range(-box_radius - lo, box_radius - hi + 1):
            row = [0] * len(basis)
            for e, c in g.items():
                row[index[e + shift]] = c
            rows.append(row)
    if not rows:
        return len(basis), ()
    m = IntegerMatrix.from_columns(rows, nrows=len(basis))
    s, _, _ = smith_normal_form(m)
    diag = [d for d in diagonal_of(s) if d != 0]
    free = len(basis) - len(diag)
    torsion = invariant_factors([d for d in diag if d > 1])
    return free, torsion


@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_matches_quotient_gm(p):
    # x - x^p in the Laurent ring: rank p - 1.
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    gens = [{(0, 1): 1, (0, p): -1}, {(1, 0): 1, (p, 0): -1}]
    gb = strong_groebner(gens, spec)
    rep = quotient_z_module(gb)
    free, torsion = laurent_box_invariants([{1: 1, p: -1}], box_radius=3 * p)
    assert rep.finite
    assert (rep.rank, rep.torsion) == (free, torsion) == (p - 1, ())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_matches_quotient_sl2_tside(p):
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    f = {(0, 1): 1, (1, 0): 1, (0, p): -1, (p, 0): -1}
    gb = strong_groebner([f], spec)
    rep = quotient_z_module(gb)
    free, torsion = laurent_box_invariants(
        [{1: 1, -1: 1, p: -1, -p: -1}], box_radius=3 * p
    )
    assert rep.finite
    assert (rep.rank, rep.torsion) == (free, torsion) == (2 * p, ())


def test_oracle_matches_mixed_torsion_case():
    # (x^2 - 1, 2x - 2) as a Laurent ideal: x invertible, so Z[x,xbar]/I = Z + Z/2.
    spec = PolyRingSpec(("xbar", "x"), inverse_pairs=((0, 1),))
    gens = [{(0, 2): 1, (0, 0): -1}, {(0, 1): 2, (0, 0): -2}]
    gb = strong_groebner(gens, spec)
    rep = quotient_z_module(gb)
    free, torsion = laurent_box_invariants([{2: 1, 0: -1}, {1: 2, 0: -2}], box_radius=8)
    assert (rep.rank, rep.torsion) == (free, torsion) == (1, (2,))
