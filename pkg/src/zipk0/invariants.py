"""Presentations of the Weyl-invariant subrings R(G) = R(T)^W and R(L).

Generators are orbit sums of the dominant Hilbert basis; expressing an
invariant in them walks down the dominance order (the leading dominant term
of a product of orbit sums is the sum of the highest weights, with
coefficient one).  Also here: restriction of orbit sums to a Levi, the
Frobenius-difference ideal generators, and the empirical Steinberg-basis
freeness certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .grpalg import GroupAlgebraElement, frobenius, monomial, one, orbit_sum, weyl_act
from .lattice import IntegerMatrix, solve_linear_diophantine
from .rootdata import (
    LeviDatum,
    Matrix,
    RootDatum,
    Vector,
    WeylGroup,
    dominant_hilbert_basis,
    fundamental_group,
    mat_vec,
    pairing,
    positive_root_indices,
    weyl_enumerate,
    weyl_orbit,
    _canonical_preimage,
    kernel_basis,
)

GeneratorExponent = tuple[int, ...]
GeneratorPolynomial = dict[GeneratorExponent, int]


class NotInvariantError(ValueError):
    pass


class SimplyConnectedHypothesisError(ValueError):
    """The construction requires a simply connected derived group."""

    def __init__(self, invariants):
        torsion = [d for d in invariants if d > 1]
        super().__init__(
            "derived group is not simply connected: fundamental group has torsion "
            + " x ".join(f"Z/{d}" for d in torsion)
        )
        self.torsion = torsion


@dataclass(frozen=True)
class InvariantRingPresentation:
    """R(T)^W presented by orbit-sum generators over Hilbert-basis weights."""

    rank: int
    generator_weights: tuple[Vector, ...]
    generator_elements: tuple[GroupAlgebraElement, ...]
    weyl: WeylGroup
    dominance_coroots: tuple[Vector, ...]   # simple coroots cutting the dominant cone
    height_vector: Vector                   # sum of positive coroots: H(chi) > 0 on them
    augmentation_generators: tuple[GroupAlgebraElement, ...]


def invariant_ring(rd: RootDatum, levi: Optional[LeviDatum] = None) -> InvariantRingPresentation:
    """Presentation of R(G) (levi=None) or R(L) by dominant orbit sums."""
    if levi is None:
        weyl = weyl_enumerate(rd)
        cosimples = rd.simple_coroots
        pos = positive_root_indices(rd)
        pos_coroots = [rd.coroots[i] for i in pos]
    else:
        weyl = levi.weyl_subgroup
        cosimples = levi.levi_simple_coroots
        pos_coroots = [rd.coroots[i] for i in levi.positive_levi_root_indices()]
    weights = dominant_hilbert_basis(rd, levi)
    elements = tuple(orbit_sum(weyl, w) for w in weights)
    height = tuple(sum(cv[i] for cv in pos_coroots) for i in range(rd.rank)) if pos_coroots else (0,) * rd.rank
    aug = tuple(
        el - one(rd.rank) * len(el.terms) for el in elements
    )
    return InvariantRingPresentation(
        rd.rank, tuple(weights), elements, weyl, tuple(cosimples), height, aug
    )


def is_invariant(f: GroupAlgebraElement, pres: InvariantRingPresentation) -> bool:
    return all(weyl_act(g, f) == f for g in pres.weyl.generators)


def _nonneg_combination(
    target: Vector, pres: InvariantRingPresentation
) -> GeneratorExponent:
    """Write a dominant weight as an N-combination of the generator weights.

    Images under the dominance pairings are decomposed by backtracking over
    the pointed generators; what remains lies in the lineality lattice and is
    expressed through the +/- generator pairs.
    """
    cosimples = pres.dominance_coroots
    weights = pres.generator_weights
    s = len(cosimples)
    imgs = [tuple(pairing(w, cv) for cv in cosimples) for w in weights]
    pointed = [i for i, im in enumerate(imgs) if any(im)]
    lineal = [i for i, im in enumerate(imgs) if not any(im)]
    y = tuple(pairing(target, cv) for cv in cosimples)
    memo: dict[Vector, Optional[tuple[int, ...]]] = {}

    def decompose(v: Vector) -> Optional[tuple[int, ...]]:
        if not any(v):
            return (0,) * len(pointed)
        if v in memo:
            return memo[v]
        memo[v] = None
        for k, gi in enumerate(pointed):
            im = imgs[gi]
            if all(a >= b for a, b in zip(v, im)):
                sub = decompose(tuple(a - b for a, b in zip(v, im)))
                if sub is not None:
                    result = tuple(c + (1 if t == k else 0) for t, c in enumerate(sub))
                    memo[v] = result
                    return result
        return memo[v]

    counts = [0] * len(weights)
    if s:
        dec = decompose(y)
        assert dec is not None, f"dominant weight {target} not in the generator monoid"
        for k, gi in enumerate(pointed):
            counts[gi] = dec[k]
    remainder = tuple(
        t - sum(counts[i] * weights[i][j] for i in range(len(weights)))
        for j, t in enumerate(target)
    )
    if any(remainder):
        # Express the lineality remainder over the +/- generator pairs.
        lin_weights = [weights[i] for i in lineal]
        m = IntegerMatrix.from_columns([list(w) for w in lin_weights], nrows=pres.rank)
        sol = solve_linear_diophantine(m, list(remainder))
        assert sol is not None, f"remainder {remainder} outside the lineality lattice"
        coeffs = list(sol[0])
        # Zero out negative coefficients using the opposite generator.
        neg_index = {}
        for a in lineal:
            for b in lineal:
                if tuple(-x for x in weights[a]) == weights[b]:
                    neg_index[a] = b
        for pos_k, i in enumerate(lineal):
            c = coeffs[pos_k]
            if c >= 0:
                counts[i] += c
            else:
                counts[neg_index[i]] += -c
    return tuple(counts)


def expand_generator_polynomial(
    poly: GeneratorPolynomial, pres: InvariantRingPresentation
) -> GroupAlgebraElement:
    """Substitute the orbit-sum generators into a polynomial in them."""
    total = GroupAlgebraElement(pres.rank, {})
    for expt, c in poly.items():
        term = one(pres.rank) * c
        for g, e in zip(pres.generator_elements, expt):
            for _ in range(e):
                term = term * g
        total = total + term
    return total


def express_invariant(
    f: GroupAlgebraElement, pres: InvariantRingPresentation
) -> GeneratorPolynomial:
    """Integer polynomial in the generators expanding to f.

    Dominance-triangular descent: the leading dominant term of the matched
    generator product has coefficient one, so each step eliminates it exactly.
    """
    if not is_invariant(f, pres):
        raise NotInvariantError("element is not invariant under the given Weyl group")
    cosimples = pres.dominance_coroots
    hv = pres.height_vector

    def hkey(e: Vector):
        return (pairing(e, hv), e)

    work = f
    out: GeneratorPolynomial = {}
    guard = 0
    while not work.is_zero():
        guard += 1
        assert guard < 10000, "descent failed to terminate: internal error"
        dominant_terms = [
            e for e in work.terms if all(pairing(e, cv) >= 0 for cv in cosimples)
        ]
        assert dominant_terms, "invariant element with no dominant term: internal error"
        lead = max(dominant_terms, key=hkey)
        c = work.terms[lead]
        expt = _nonneg_combination(lead, pres)
        prod = expand_generator_polynomial({expt: 1}, pres)
        assert prod.coefficient(lead) == 1, "leading coefficient not 1: internal error"
        work = work - prod * c
        assert work.coefficient(lead) == 0
        out[expt] = out.get(expt, 0) + c
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# Restriction to a Levi


def restrict_to_levi(
    rd: RootDatum, weight: Sequence[int], levi: LeviDatum, weyl: Optional[WeylGroup] = None
) -> tuple[GroupAlgebraElement, list[tuple[Vector, int]]]:
    """Decompose the full orbit sum m_lambda into Levi orbit sums.

    Returns the element of Z[X*(T)] together with the list of
    (Levi-dominant representative, orbit size) pieces.
    """
    weyl = weyl or weyl_enumerate(rd)
    full_orbit = set(weyl_orbit(weyl, weight))
    element = GroupAlgebraElement(rd.rank, {nu: 1 for nu in full_orbit})
    pieces: list[tuple[Vector, int]] = []
    remaining = set(full_orbit)
    cosimples = levi.levi_simple_coroots
    while remaining:
        seed = min(remaining)
        orb = set(weyl_orbit(levi.weyl_subgroup, seed))
        assert orb <= remaining
        dominants = [nu for nu in orb if all(pairing(nu, cv) >= 0 for cv in cosimples)]
        assert dominants, "Levi orbit without dominant representative"
        rep = min(dominants)
        pieces.append((rep, len(orb)))
        remaining -= orb
    pieces.sort()
    return element, pieces


# ---------------------------------------------------------------------------
# Frobenius-difference ideal generators


@dataclass(frozen=True)
class FrobeniusIdealGens:
    """Generators m_lambda - phi(m_lambda) over the Hilbert basis of G."""

    gens: tuple[GroupAlgebraElement, ...]
    provenance: tuple[tuple[Vector, GroupAlgebraElement, GroupAlgebraElement], ...]


def frobenius_ideal_generators(
    rd: RootDatum,
    levi: Optional[LeviDatum],
    p: int,
    twist: Optional[Matrix] = None,
) -> FrobeniusIdealGens:
    """One generator per G-Hilbert-basis weight; they generate I R(L).

    Requires the derived group to be simply connected (the Leibniz identity
    c d - phi(c d) = c (d - phi(d)) + phi(d)(c - phi(c)) reduces the full
    difference ideal to these finitely many generators).
    """
    inv = fundamental_group(rd)
    if any(d > 1 for d in inv):
        raise SimplyConnectedHypothesisError(inv)
    weyl = weyl_enumerate(rd)
    gens = []
    prov = []
    for lam in dominant_hilbert_basis(rd):
        m = orbit_sum(weyl, lam)
        fm = frobenius(m, p, twist)
        gens.append(m - fm)
        prov.append((lam, m, fm))
    return FrobeniusIdealGens(tuple(gens), tuple(prov))


# ---------------------------------------------------------------------------
# Steinberg basis candidates and freeness evidence


_SPECIALIZATION_PRIME = (1 << 61) - 1  # Mersenne prime; huge unit group


def integral_fundamental_weights(rd: RootDatum) -> tuple[Vector, ...]:
    """Integral weights eta_i with <eta_i, alpha_j^vee> = delta_ij.

    These exist exactly when the derived group is simply connected; chosen
    canonically small modulo the coweight-orthogonal lattice.
    """
    cosimples = rd.simple_coroots
    k = len(cosimples)
    m = IntegerMatrix.from_rows([list(cv) for cv in cosimples])
    lin = kernel_basis(m)
    etas = []
    for t in range(k):
        target = [1 if i == t else 0 for i in range(k)]
        sol = solve_linear_diophantine(m, target)
        if sol is None:
            raise SimplyConnectedHypothesisError(fundamental_group(rd))
        etas.append(_canonical_preimage(sol[0], lin))
    return tuple(etas)


def steinberg_candidate_weights(rd: RootDatum, weyl: Optional[WeylGroup] = None) -> list[Vector]:
    """lambda_w = w^{-1}(sum of eta_alpha over simple alpha with w^{-1} alpha < 0).

    Candidate free basis of R(T) over R(G), one weight per Weyl element;
    validated empirically by steinberg_freeness_check.
    """
    weyl = weyl or weyl_enumerate(rd)
    etas = integral_fundamental_weights(rd)
    pos = frozenset(rd.roots[i] for i in positive_root_indices(rd))
    out = []
    for w in weyl.elements:
        winv = _matrix_inverse_unimodular(w)
        total = (0,) * rd.rank
        for i, alpha in enumerate(rd.simple_roots):
            if mat_vec(winv, alpha) not in pos:
                total = tuple(a + b for a, b in zip(total, etas[i]))
        out.append(mat_vec(winv, total))
    return out


def _matrix_inverse_unimodular(w: Matrix) -> Matrix:
    from fractions import Fraction

    n = len(w)
    a = [[Fraction(w[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        prow = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[prow] = a[prow], a[col]
        inv[col], inv[prow] = inv[prow], inv[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            assert inv[i][j].denominator == 1
            row.append(int(inv[i][j]))
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class SteinbergReport:
    candidates: tuple[Vector, ...]
    distinct: bool
    determinant_draws: tuple[bool, ...]   # nonzero at each random specialization
    independent: bool
    spanning_tested: tuple[Vector, ...]
    spanning_ok: bool
    note: str = "empirical certificate: candidates validated numerically, not by construction"


def steinberg_freeness_check(
    rd: RootDatum,
    candidate_weights: Sequence[Sequence[int]],
    weyl: Optional[WeylGroup] = None,
    spanning_radius: int = 2,
    draws: int = 3,
    seed: int = 20250901,
) -> SteinbergReport:
    """Independence via random unit specializations; spanning via window solves.

    The |W| x |W| matrix (e^{v(lambda_w)}) is evaluated at random torus units
    over a large prime field: any nonzero determinant certifies linear
    independence over R(G).  Spanning evidence expresses every monomial e^mu
    in a box as an R(G)-combination of the candidates.
    """
    weyl = weyl or weyl_enumerate(rd)
    cands = [tuple(int(x) for x in w) for w in candidate_weights]
    distinct = len(set(cands)) == len(cands) and len(cands) == len(weyl)
    q = _SPECIALIZATION_PRIME
    rng = random.Random(seed)
    det_draws = []
    if distinct:
        for _ in range(draws):
            units = [rng.randrange(2, q - 1) for _ in range(rd.rank)]
            mat = []
            for v in weyl.elements:
                row = []
                for lam in cands:
                    img = mat_vec(v, lam)
                    val = 1
                    for x, e in zip(units, img):
                        val = (val * pow(x, e, q)) % q
                    row.append(val)
                mat.append(row)
            det_draws.append(_det_mod_p(mat, q) != 0)
    independent = distinct and any(det_draws)

    spanning_tested: list[Vector] = []
    spanning_ok = True
    if independent:
        from .grpalg import window_box

        pres = invariant_ring(rd)
        maxc = max((max(abs(x) for x in lam) for lam in cands if any(lam)), default=0)
        box_r = spanning_radius + maxc + 2
        dominant_window = [
            nu
            for nu in window_box(rd.rank, box_r)
            if all(pairing(nu, cv) >= 0 for cv in rd.simple_coroots)
        ]
        basis_elems = []
        labels = []
        for wi, lam in enumerate(cands):
            for nu in dominant_window:
                basis_elems.append(orbit_sum(weyl, nu) * monomial(rd.rank, lam))
                labels.append((wi, nu))
        for mu in window_box(rd.rank, spanning_radius):
            target = monomial(rd.rank, mu)
            support = sorted({e for el in basis_elems for e in el.terms} | set(target.terms))
            idx = {e: i for i, e in enumerate(support)}
            cols = []
            for el in basis_elems:
                col = [0] * len(support)
                for e, c in el.terms.items():
                    col[idx[e]] = c
                cols.append(col)
            mmat = IntegerMatrix.from_columns(cols, nrows=len(support))
            b = [0] * len(support)
            for e, c in target.terms.items():
                b[idx[e]] = c
            sol = solve_linear_diophantine(mmat, b)
            spanning_tested.append(tuple(mu))
            if sol is None:
                spanning_ok = False
    return SteinbergReport(
        tuple(cands),
        distinct,
        tuple(det_draws),
        independent,
        tuple(spanning_tested),
        spanning_ok,
    )


def _det_mod_p(mat: list[list[int]], q: int) -> int:
    n = len(mat)
    a = [row[:] for row in mat]
    det = 1
    for col in range(n):
        prow = next((r for r in range(col, n) if a[r][col] % q), None)
        if prow is None:
            return 0
        if prow != col:
            a[col], a[prow] = a[prow], a[col]
            det = -det
        pv = a[col][col] % q
        det = (det * pv) % q
        inv = pow(pv, -1, q)
        for r in range(col + 1, n):
            f = (a[r][col] * inv) % q
            if f:
                for c in range(col, n):
                    a[r][c] = (a[r][c] - f * a[col][c]) % q
    return det % q
