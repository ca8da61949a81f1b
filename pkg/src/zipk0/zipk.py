"""End-to-end pipeline: cocharacter datum -> presentation of K0 of the zip stack.

Given (root datum, cocharacter mu, prime p) with simply connected derived
group, the Grothendieck ring of the associated stack of zips is R(L)/IR(L):
L is the Levi centralising mu, I the ideal of Frobenius differences of R(G).
The presentation is computed on the nose: R(L) by eliminating the torus
variables from the graph ideal of its orbit-sum generators, the ideal I
through its finitely many Hilbert-basis generators re-expressed in those
generators, and the quotient's Z-module structure from a strong Groebner
basis over Z.  Cross-checks mirror the structural facts the construction
rests on (Kunneth/freeness rank factorisation, the untwisting identity,
Hecke-versus-Weyl invariants, and the failure of naive Weyl descent).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groebner import (
    GroebnerBasis,
    Poly,
    PolyRingSpec,
    normal_form_gb,
    poly_to_string,
    quotient_z_module,
    QuotientReport,
    strong_groebner,
)
from .grpalg import (
    GroupAlgebraElement,
    frobenius,
    hecke_invariants_window,
    monomial,
    orbit_sum,
    weyl_act,
    window_box,
)
from .invariants import (
    InvariantRingPresentation,
    SimplyConnectedHypothesisError,
    expand_generator_polynomial,
    express_invariant,
    frobenius_ideal_generators,
    invariant_ring,
)
from .lattice import IntegerMatrix, hermite_row_basis, kernel_basis
from .rootdata import (
    Cocharacter,
    LeviDatum,
    Matrix,
    RootDatum,
    Vector,
    fundamental_group,
    levi_from_cocharacter,
    pairing,
    validate,
    weyl_enumerate,
)

DEFAULT_MAX_DEGREE = 60


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class CocharacterDatum:
    """Input to the pipeline: root datum, cocharacter, prime, optional twist."""

    rd: RootDatum
    mu: Cocharacter
    p: int
    twist: Optional[Matrix] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if len(self.mu) != self.rd.rank:
            raise ValueError(
                f"cocharacter length {len(self.mu)} does not match rank {self.rd.rank}"
            )
        if self.twist is None and self.rd.twist is not None:
            object.__setattr__(self, "twist", self.rd.twist)
        elif self.twist is not None and self.rd.twist is not None and self.twist != self.rd.twist:
            raise ValueError("datum twist differs from the root datum's twist")


def validate_datum(datum: CocharacterDatum) -> None:
    """Root datum axioms plus the simply-connectedness gate."""
    validate(datum.rd)
    inv = fundamental_group(datum.rd)
    if any(d > 1 for d in inv):
        raise SimplyConnectedHypothesisError(inv)


# ---------------------------------------------------------------------------
# Group algebra <-> Laurent polynomial ring


def torus_ring_spec(rank: int) -> PolyRingSpec:
    """Z[x1..xn, inverses]: inverse variables sort first so they reduce away."""
    names = []
    pairs = []
    for i in range(rank):
        names.append(f"x{i + 1}b")
        names.append(f"x{i + 1}")
        pairs.append((2 * i, 2 * i + 1))
    return PolyRingSpec(tuple(names), tuple(pairs))


def exponent_to_monomial(chi: Sequence[int]) -> tuple[int, ...]:
    out = []
    for c in chi:
        out.append(-c if c < 0 else 0)
        out.append(c if c > 0 else 0)
    return tuple(out)


def to_poly(f: GroupAlgebraElement, offset_vars: int = 0, total_vars: Optional[int] = None) -> Poly:
    """Character sum -> polynomial in the split positive/negative variables."""
    width = 2 * f.rank
    total = total_vars if total_vars is not None else width
    out: Poly = {}
    for chi, c in f.terms.items():
        mono = exponent_to_monomial(chi)
        full = (0,) * offset_vars + mono + (0,) * (total - offset_vars - width)
        out[full] = c
    return out


# ---------------------------------------------------------------------------
# The torus-side quotient R(T)/IR(T)


def compute_k0_torus(
    datum: CocharacterDatum, max_degree: int = DEFAULT_MAX_DEGREE, bound: int = 12
) -> tuple[GroebnerBasis, QuotientReport]:
    """Strong basis and Z-module report for R(T) modulo the Frobenius differences."""
    fig = frobenius_ideal_generators(datum.rd, None, datum.p, datum.twist)
    spec = torus_ring_spec(datum.rd.rank)
    polys = [to_poly(g) for g in fig.gens]
    gb = strong_groebner(polys, spec, max_degree=max_degree)
    report = quotient_z_module(gb, bound=bound)
    return gb, report


# ---------------------------------------------------------------------------
# The main presentation R(L)/IR(L)


@dataclass(frozen=True)
class KZeroPresentation:
    """Finitely presented ring isomorphic to the Grothendieck ring of the stack."""

    variables: tuple[str, ...]
    generator_weights: tuple[Vector, ...]
    syzygy_relations: tuple[Poly, ...]       # kernel of Z[y] -> R(L)
    frobenius_relations: tuple[Poly, ...]    # images of the ideal generators
    ring_spec: PolyRingSpec
    groebner: GroebnerBasis
    module_report: QuotientReport
    levi: LeviDatum
    presentation_pres: InvariantRingPresentation
    one_nonzero: bool
    experimental_twist: bool

    @property
    def relations(self) -> tuple[Poly, ...]:
        return self.syzygy_relations + self.frobenius_relations

    def relation_strings(self) -> list[str]:
        return [poly_to_string(r, self.ring_spec) for r in self.relations]


def levi_presentation_ring(
    rd: RootDatum, lpres: InvariantRingPresentation, max_degree: int = DEFAULT_MAX_DEGREE
) -> tuple[PolyRingSpec, tuple[Poly, ...]]:
    """Present R(L) on one variable per generator: eliminate the torus block
    from the graph ideal of the orbit-sum generators."""
    n = rd.rank
    k = len(lpres.generator_elements)
    names = list(torus_ring_spec(n).names) + [f"y{j + 1}" for j in range(k)]
    pairs = torus_ring_spec(n).inverse_pairs
    big_spec = PolyRingSpec(
        tuple(names),
        pairs,
        blocks=(tuple(range(2 * n)), tuple(range(2 * n, 2 * n + k))),
    )
    total = 2 * n + k
    gens: list[Poly] = []
    for j, el in enumerate(lpres.generator_elements):
        g = to_poly(-el, 0, total)
        yj = [0] * total
        yj[2 * n + j] = 1
        g[tuple(yj)] = g.get(tuple(yj), 0) + 1
        gens.append({m: c for m, c in g.items() if c})
    from .groebner import eliminate

    gb_big = strong_groebner(gens, big_spec, max_degree=max_degree)
    rel_gb = eliminate(gb_big, tuple(range(2 * n)))
    return rel_gb.spec, tuple(rel_gb.as_dicts())


def compute_k0(
    datum: CocharacterDatum, max_degree: int = DEFAULT_MAX_DEGREE, bound: int = 12
) -> KZeroPresentation:
    """Presentation of R(L)/IR(L) for the Levi of the cocharacter."""
    inv = fundamental_group(datum.rd)
    if any(d > 1 for d in inv):
        raise SimplyConnectedHypothesisError(inv)
    rd = datum.rd
    levi = levi_from_cocharacter(rd, datum.mu)
    lpres = invariant_ring(rd, levi)
    y_spec, syzygies = levi_presentation_ring(rd, lpres, max_degree)

    fig = frobenius_ideal_generators(rd, levi, datum.p, datum.twist)
    frob_polys: list[Poly] = []
    for g in fig.gens:
        gen_poly = express_invariant(g, lpres)
        frob_polys.append(dict(gen_poly))

    gb = strong_groebner(list(syzygies) + frob_polys, y_spec, max_degree=max_degree)
    report = quotient_z_module(gb, bound=bound)
    one_mono = (0,) * y_spec.nvars
    one_nz = normal_form_gb({one_mono: 1}, gb) != {}
    return KZeroPresentation(
        y_spec.names,
        lpres.generator_weights,
        tuple(syzygies),
        tuple(frob_polys),
        y_spec,
        gb,
        report,
        levi,
        lpres,
        one_nz,
        experimental_twist=datum.twist is not None,
    )


def substitution_soundness(datum: CocharacterDatum, kz: KZeroPresentation,
                           torus_gb: Optional[GroebnerBasis] = None) -> bool:
    """Every relation, expanded back into Z[X*(T)], lies in the torus-side ideal."""
    if torus_gb is None:
        torus_gb, _ = compute_k0_torus(datum)
    for rel in kz.relations:
        expanded = expand_generator_polynomial(rel, kz.presentation_pres)
        if normal_form_gb(to_poly(expanded), torus_gb):
            return False
    return True


# ---------------------------------------------------------------------------
# Cross-checks


@dataclass(frozen=True)
class KunnethReport:
    status: str                  # "PASS", "FAIL", or "INCONCLUSIVE"
    torus_rank: Optional[int]
    levi_rank: Optional[int]
    levi_weyl_order: int
    torus_finite: bool
    levi_finite: bool


def kunneth_rank_check(
    datum: CocharacterDatum, max_degree: int = DEFAULT_MAX_DEGREE
) -> KunnethReport:
    """rank of R(T)/IR(T) must equal |W_L| times rank of R(L)/IR(L)."""
    _, torus_report = compute_k0_torus(datum, max_degree)
    kz = compute_k0(datum, max_degree)
    wl = len(kz.levi.weyl_subgroup)
    if not (torus_report.finite and kz.module_report.finite):
        return KunnethReport(
            "INCONCLUSIVE",
            torus_report.rank if torus_report.finite else None,
            kz.module_report.rank if kz.module_report.finite else None,
            wl,
            torus_report.finite,
            kz.module_report.finite,
        )
    ok = torus_report.rank == wl * kz.module_report.rank
    return KunnethReport(
        "PASS" if ok else "FAIL",
        torus_report.rank,
        kz.module_report.rank,
        wl,
        True,
        True,
    )


@dataclass(frozen=True)
class ThetaReport:
    generator_sanity: bool
    invariant_directions: tuple[Vector, ...]
    invariant_vanishing: tuple[bool, ...]
    all_invariant_pass: bool
    samples: tuple[tuple[Vector, bool], ...]


def weyl_invariant_lattice(rd: RootDatum) -> list[Vector]:
    """Basis of the characters fixed by the whole Weyl group."""
    from .rootdata import reflection_matrix

    rows: list[list[int]] = []
    for i in rd.simple_indices:
        s = reflection_matrix(rd.roots[i], rd.coroots[i])
        for r in range(rd.rank):
            row = [s[r][c] - (1 if r == c else 0) for c in range(rd.rank)]
            if any(row):
                rows.append(row)
    if not rows:
        m = IntegerMatrix(0, rd.rank, ())
    else:
        m = IntegerMatrix.from_rows(rows)
    return [tuple(v) for v in kernel_basis(m)]


def theta_map_check(
    datum: CocharacterDatum,
    samples: int = 8,
    seed: int = 20250901,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> ThetaReport:
    """The untwisting identity, concretely: e^chi = e^{p tau(chi)} holds in the
    torus-side quotient exactly for Weyl-invariant directions (where e^chi is a
    class from R(G)), and generically fails otherwise."""
    import random as _random

    gb, _ = compute_k0_torus(datum, max_degree)
    rd = datum.rd
    fig = frobenius_ideal_generators(rd, None, datum.p, datum.twist)
    gen_ok = all(not normal_form_gb(to_poly(g), gb) for g in fig.gens)

    invariant_dirs = weyl_invariant_lattice(rd)
    inv_vanish = []
    for chi in invariant_dirs:
        f = monomial(rd.rank, chi) - frobenius(monomial(rd.rank, chi), datum.p, datum.twist)
        inv_vanish.append(not normal_form_gb(to_poly(f), gb))

    rng = _random.Random(seed)
    sample_results = []
    for _ in range(samples):
        chi = tuple(rng.randint(-2, 2) for _ in range(rd.rank))
        f = monomial(rd.rank, chi) - frobenius(monomial(rd.rank, chi), datum.p, datum.twist)
        sample_results.append((chi, not normal_form_gb(to_poly(f), gb)))
    return ThetaReport(
        gen_ok,
        tuple(invariant_dirs),
        tuple(inv_vanish),
        gen_ok and all(inv_vanish),
        tuple(sample_results),
    )


@dataclass(frozen=True)
class HeckeReport:
    window: int
    hecke_rank: int
    weyl_rank: int
    orbit_span_rank: int
    all_equal: bool


def hecke_check(datum: CocharacterDatum, window: int) -> HeckeReport:
    """At a point, three independent computations of the invariants agree:
    the Demazure/Hecke conditions, plain Weyl invariance, and the span of
    whole orbit sums inside the window."""
    rd = datum.rd
    weyl = weyl_enumerate(rd)
    box = window_box(rd.rank, window)
    idx = {e: i for i, e in enumerate(box)}

    def rows_of(elements: Sequence[GroupAlgebraElement]):
        out = []
        for f in elements:
            row = [0] * len(box)
            for e, c in f.terms.items():
                row[idx[e]] = c
            out.append(row)
        return out

    hecke_basis = hecke_invariants_window(rd, window)

    # Independent route 2: kernel of the full Weyl permutation action.
    rows = []
    for w in weyl.elements:
        images = []
        for e in box:
            m = monomial(rd.rank, e)
            images.append(weyl_act(w, m) - m)
        support = sorted({e for img in images for e in img.terms})
        for e in support:
            row = [img.terms.get(e, 0) for img in images]
            if any(row):
                rows.append(row)
    if rows:
        weyl_kernel = kernel_basis(IntegerMatrix.from_rows(rows))
    else:
        weyl_kernel = [tuple(1 if j == i else 0 for j in range(len(box))) for i in range(len(box))]

    # Independent route 3: orbit sums entirely inside the window.
    dominant = []
    for lam in box:
        if all(pairing(lam, cv) >= 0 for cv in rd.simple_coroots):
            orb = orbit_sum(weyl, lam)
            if all(e in idx for e in orb.terms):
                dominant.append(orb)

    span_hecke = hermite_row_basis(rows_of(hecke_basis), len(box))
    span_weyl = hermite_row_basis([tuple(v) for v in weyl_kernel], len(box))
    span_orbit = hermite_row_basis(rows_of(dominant), len(box))
    return HeckeReport(
        window,
        len(span_hecke),
        len(span_weyl),
        len(span_orbit),
        span_hecke == span_weyl == span_orbit,
    )


# ---------------------------------------------------------------------------
# The Weyl-invariants counterexample (torsion module demo)


@dataclass(frozen=True)
class CounterexampleReport:
    module: str
    image_order: str           # order of the image of M, as a string ("infinite" for Z)
    invariant_order: str
    invariant_structure: str
    strictly_larger: bool


def weyl_counterexample_demo(module: str = "Z/2") -> CounterexampleReport:
    """The rank-one zip-adjacent module demo: for M with 2-torsion the Weyl
    invariants of M + M x strictly contain M.

    The reflection acts by s(a + b x) = (a + 2b) - b x since s(x) = x^{-1} =
    (x + x^{-1}) - x acts through the augmentation value 2 on M.  Invariance
    is exactly 2b = 0 (equivalently (x + x^{-1}) b = 0).
    """
    name = module.strip()
    if name == "Z":
        return CounterexampleReport("Z", "infinite", "infinite", "Z", False)
    if not name.startswith("Z/"):
        raise ValueError(f"unsupported module {module!r}; use Z or Z/<m>")
    m = int(name[2:])
    if m <= 0:
        raise ValueError("modulus must be positive")
    # Brute force over M + M x.
    invariant_count = 0
    ann2 = 0
    for b in range(m):
        if (2 * b) % m == 0:
            ann2 += 1
    invariant_count = m * ann2
    structure_parts = [f"Z/{m}"] if m > 1 else []
    if ann2 > 1:
        structure_parts.append(f"Z/{ann2}")
    structure = " + ".join(structure_parts) if structure_parts else "0"
    return CounterexampleReport(
        f"Z/{m}",
        str(m),
        str(invariant_count),
        structure,
        invariant_count > m,
    )


def counterexample_brute_force(m: int) -> tuple[int, int]:
    """Enumerate M + Mx for M = Z/m and count fixed points of the reflection."""
    fixed = 0
    for a in range(m):
        for b in range(m):
            sa = ((a + 2 * b) % m, (-b) % m)
            if sa == (a, b):
                fixed += 1
    return fixed, m
