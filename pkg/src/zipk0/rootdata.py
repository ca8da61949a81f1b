"""Root data, Weyl groups and cocharacter combinatorics.

A reductive group over an algebraically closed field is modelled by its root
datum: the character lattice Z^n with a finite set of roots, the cocharacter
lattice with coroots paired to them by index, and a distinguished simple
system.  The natural pairing is the dot product.  All group elements (Weyl
reflections, twists) are unimodular n x n integer matrices acting on
characters as column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import IntegerMatrix, cokernel_invariants, kernel_basis, hermite_row_basis, solve_linear_diophantine

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]
Cocharacter = tuple[int, ...]


class RootDatumError(ValueError):
    """Invalid root datum; `kind` names the violated axiom."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class WeylSizeCapError(RuntimeError):
    """Weyl group enumeration exceeded the configured size cap."""


def pairing(chi: Sequence[int], cochar: Sequence[int]) -> int:
    """Natural pairing of a character with a cocharacter (dot product)."""
    return sum(a * b for a, b in zip(chi, cochar))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_vec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(m)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_transpose(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def reflection_matrix(root: Vector, coroot: Vector) -> Matrix:
    """s(chi) = chi - <chi, coroot> root, as a matrix on the character lattice."""
    n = len(root)
    return tuple(
        tuple((1 if i == j else 0) - root[i] * coroot[j] for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class RootDatum:
    """Root datum (X*(T), roots, X_*(T), coroots) with a chosen simple system."""

    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple_indices: tuple[int, ...]
    twist: Optional[Matrix] = None
    name: str = ""

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return tuple(self.roots[i] for i in self.simple_indices)

    @property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return tuple(self.coroots[i] for i in self.simple_indices)

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """C[i][j] = <alpha_j, alpha_i^vee> over the simple system."""
        return tuple(
            tuple(pairing(self.roots[j], self.coroots[i]) for j in self.simple_indices)
            for i in self.simple_indices
        )


def make_root_datum(
    rank: int,
    roots: Sequence[Sequence[int]],
    coroots: Sequence[Sequence[int]],
    simple_roots: Sequence[Sequence[int]],
    twist: Optional[Sequence[Sequence[int]]] = None,
    name: str = "",
) -> RootDatum:
    """Build a RootDatum from explicit vectors, resolving simple roots to indices."""
    rts = tuple(tuple(int(x) for x in r) for r in roots)
    crts = tuple(tuple(int(x) for x in r) for r in coroots)
    simples = []
    for s in simple_roots:
        s = tuple(int(x) for x in s)
        if s not in rts:
            raise RootDatumError("pairing-violation", f"simple root {s} is not a root")
        simples.append(rts.index(s))
    tw = tuple(tuple(int(x) for x in row) for row in twist) if twist is not None else None
    return RootDatum(rank, rts, crts, tuple(simples), tw, name)


def _principal_minors_positive(c: Sequence[Sequence[int]]) -> bool:
    n = len(c)
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            sub = IntegerMatrix.from_rows([[c[i][j] for j in subset] for i in subset])
            if sub.determinant() <= 0:
                return False
    return True


def validate(rd: RootDatum) -> None:
    """Check all root datum axioms; raise RootDatumError otherwise."""
    n = rd.rank
    if len(rd.roots) != len(rd.coroots):
        raise RootDatumError("pairing-violation", "roots and coroots must be paired by index")
    for v in rd.roots + rd.coroots:
        if len(v) != n:
            raise RootDatumError("pairing-violation", f"vector {v} does not have rank {n}")
    if len(set(rd.roots)) != len(rd.roots):
        raise RootDatumError("pairing-violation", "duplicate roots")
    for i, (a, av) in enumerate(zip(rd.roots, rd.coroots)):
        val = pairing(a, av)
        if val != 2:
            raise RootDatumError(
                "pairing-violation", f"<alpha, alpha^vee> = {val} != 2 for root {a}"
            )
    root_set = set(rd.roots)
    root_index = {r: i for i, r in enumerate(rd.roots)}
    for i, (a, av) in enumerate(zip(rd.roots, rd.coroots)):
        s = reflection_matrix(a, av)
        for j, b in enumerate(rd.roots):
            img = mat_vec(s, b)
            if img not in root_set:
                raise RootDatumError(
                    "reflection-not-permuting",
                    f"s_{a} sends root {b} to {img}, not a root",
                )
            # Duality: the coroot of s(b) must be the dual reflection of b's coroot.
            k = root_index[img]
            bv = rd.coroots[j]
            img_cov = tuple(bv[t] - pairing(a, bv) * av[t] for t in range(n))
            if rd.coroots[k] != img_cov:
                raise RootDatumError(
                    "reflection-not-permuting",
                    f"coroot pairing not equivariant under s_{a} at root {b}",
                )
    # Simple system: distinct, and the Cartan matrix has finite type.
    if len(set(rd.simple_indices)) != len(rd.simple_indices):
        raise RootDatumError("non-finite-type-cartan", "duplicate simple roots")
    cartan = rd.cartan_matrix()
    for i in range(len(cartan)):
        for j in range(len(cartan)):
            if i == j:
                continue
            if cartan[i][j] > 0:
                raise RootDatumError(
                    "non-finite-type-cartan",
                    f"off-diagonal Cartan entry {cartan[i][j]} > 0",
                )
            if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise RootDatumError(
                    "non-finite-type-cartan", "asymmetric zero pattern in Cartan matrix"
                )
    if not _principal_minors_positive(cartan):
        raise RootDatumError(
            "non-finite-type-cartan", "Cartan matrix has a non-positive principal minor"
        )
    # Every root is in the orbit of the simple system.
    orbit = set(rd.simple_roots)
    frontier = list(rd.simple_roots)
    gens = [reflection_matrix(rd.roots[i], rd.coroots[i]) for i in rd.simple_indices]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = mat_vec(g, v)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    if orbit != root_set:
        raise RootDatumError(
            "reflection-not-permuting",
            "roots are not a single Weyl orbit closure of the simple system",
        )
    if rd.twist is not None:
        _validate_twist(rd)


def _validate_twist(rd: RootDatum) -> None:
    tau = rd.twist
    n = rd.rank
    if len(tau) != n or any(len(row) != n for row in tau):
        raise RootDatumError("twist-not-preserving-simple-roots", "twist has wrong shape")
    det = IntegerMatrix.from_rows(tau).determinant()
    if det not in (1, -1):
        raise RootDatumError(
            "twist-not-preserving-simple-roots", f"twist determinant {det} not unimodular"
        )
    power = tau
    order = 1
    max_order = 60
    while power != identity_matrix(n):
        power = mat_mul(power, tau)
        order += 1
        if order > max_order:
            raise RootDatumError(
                "twist-not-preserving-simple-roots", "twist is not of finite (small) order"
            )
    simple_set = set(rd.simple_roots)
    images = {mat_vec(tau, a) for a in rd.simple_roots}
    if images != simple_set:
        raise RootDatumError(
            "twist-not-preserving-simple-roots",
            "twist does not permute the simple roots",
        )
    # Pairing preservation: the coroot of tau(alpha) must be (tau^T)^{-1}(alpha^vee),
    # equivalently tau^T applied to the image coroot returns the original coroot.
    taut = mat_transpose(tau)
    root_index = {r: i for i, r in enumerate(rd.roots)}
    for i, a in enumerate(rd.roots):
        img = mat_vec(tau, a)
        if img not in root_index:
            raise RootDatumError(
                "twist-not-preserving-simple-roots", f"twist sends root {a} outside the root set"
            )
        k = root_index[img]
        if mat_vec(taut, rd.coroots[k]) != rd.coroots[i]:
            raise RootDatumError(
                "twist-not-preserving-simple-roots",
                f"twist does not preserve the pairing at root {a}",
            )


@dataclass(frozen=True)
class WeylGroup:
    """Finite Weyl group as explicit matrices with one reduced word each."""

    rank: int
    generators: tuple[Matrix, ...]          # simple reflections, in simple-root order
    elements: tuple[Matrix, ...]
    reduced_words: tuple[tuple[int, ...], ...]
    longest_element: int

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, m: Matrix) -> int:
        return self.elements.index(m)

    def word_matrix(self, word: Sequence[int]) -> Matrix:
        m = identity_matrix(self.rank)
        for i in word:
            m = mat_mul(m, self.generators[i])
        return m


def enumerate_weyl_group(
    rank: int,
    simple_roots: Sequence[Vector],
    simple_coroots: Sequence[Vector],
    size_cap: int = 10**6,
) -> WeylGroup:
    """BFS closure of the simple reflections; BFS depth gives reduced words."""
    gens = tuple(reflection_matrix(a, av) for a, av in zip(simple_roots, simple_coroots))
    ident = identity_matrix(rank)
    elements: list[Matrix] = [ident]
    words: list[tuple[int, ...]] = [()]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for i, g in enumerate(gens):
                m = mat_mul(elements[idx], g)
                if m not in seen:
                    seen[m] = len(elements)
                    elements.append(m)
                    words.append(words[idx] + (i,))
                    nxt.append(seen[m])
                    if len(elements) > size_cap:
                        raise WeylSizeCapError(
                            f"Weyl group larger than cap {size_cap}"
                        )
        frontier = nxt
    longest = max(range(len(elements)), key=lambda k: (len(words[k]), k))
    return WeylGroup(rank, gens, tuple(elements), tuple(words), longest)


def weyl_enumerate(rd: RootDatum, size_cap: int = 10**6) -> WeylGroup:
    return enumerate_weyl_group(rd.rank, rd.simple_roots, rd.simple_coroots, size_cap)


def weyl_orbit(weyl: WeylGroup, weight: Sequence[int]) -> tuple[Vector, ...]:
    """The orbit of a weight, sorted for determinism (each element once)."""
    v = tuple(int(x) for x in weight)
    return tuple(sorted({mat_vec(m, v) for m in weyl.elements}))


def root_coefficients(root: Vector, simple_roots: Sequence[Vector]) -> Optional[tuple[Fraction, ...]]:
    """Coefficients of `root` over the simple system, or None if outside its span."""
    if not simple_roots:
        return None
    n = len(root)
    k = len(simple_roots)
    # Solve sum_j c_j simple[j] = root by Gaussian elimination over Q.
    aug = [[Fraction(simple_roots[j][i]) for j in range(k)] + [Fraction(root[i])] for i in range(n)]
    row = 0
    piv_cols = []
    for col in range(k):
        prow = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if prow is None:
            continue
        aug[row], aug[prow] = aug[prow], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == n:
            break
    coeffs = [Fraction(0)] * k
    for r, col in enumerate(piv_cols):
        coeffs[col] = aug[r][k]
    for r in range(row, n):
        if aug[r][k] != 0:
            return None
    # Verify (the system may be underdetermined only if simple roots were dependent).
    for i in range(n):
        if sum(coeffs[j] * simple_roots[j][i] for j in range(k)) != root[i]:
            return None
    return tuple(coeffs)


def positive_root_indices(rd: RootDatum) -> tuple[int, ...]:
    """Indices of roots that are nonnegative combinations of the simple system."""
    out = []
    for i, r in enumerate(rd.roots):
        coeffs = root_coefficients(r, rd.simple_roots)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            out.append(i)
    return tuple(out)


def inversion_length(w: Matrix, positive_roots: Sequence[Vector], positive_set: frozenset) -> int:
    return sum(1 for a in positive_roots if mat_vec(w, a) not in positive_set)


def weyl_lengths(rd: RootDatum, weyl: WeylGroup) -> tuple[int, ...]:
    """l(w) as inversion counts; should match reduced word lengths."""
    pos = [rd.roots[i] for i in positive_root_indices(rd)]
    pos_set = frozenset(pos)
    return tuple(inversion_length(w, pos, pos_set) for w in weyl.elements)


def all_reduced_words(weyl: WeylGroup, index: int, lengths: Sequence[int]) -> list[tuple[int, ...]]:
    """Every reduced word of the element, by left-descent recursion."""
    elem_index = {m: k for k, m in enumerate(weyl.elements)}
    out: list[tuple[int, ...]] = []

    def rec(idx: int, prefix: tuple[int, ...]):
        if lengths[idx] == 0:
            out.append(prefix)
            return
        for i, g in enumerate(weyl.generators):
            nidx = elem_index[mat_mul(g, weyl.elements[idx])]
            if lengths[nidx] == lengths[idx] - 1:
                rec(nidx, prefix + (i,))

    rec(index, ())
    return out


def fundamental_group(rd: RootDatum) -> list[int]:
    """Invariants of X_*(T) / (coroot lattice), 0 per free summand."""
    m = IntegerMatrix.from_columns([list(c) for c in rd.coroots], nrows=rd.rank)
    return cokernel_invariants(m)


def is_derived_simply_connected(rd: RootDatum) -> bool:
    """True iff the fundamental group is torsion-free."""
    return all(d in (0, 1) for d in fundamental_group(rd))


def fundamental_weights(rd: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    """Rational weights eta_i with <eta_i, alpha_j^vee> = delta_ij, in span(roots)."""
    simples = rd.simple_roots
    cosimples = rd.simple_coroots
    k = len(simples)
    cartan = [[Fraction(pairing(simples[j], cosimples[i])) for j in range(k)] for i in range(k)]
    # Invert the Cartan matrix over Q (it is invertible for finite type).
    inv = [[Fraction(1 if i == j else 0) for j in range(k)] for i in range(k)]
    a = [row[:] for row in cartan]
    for col in range(k):
        prow = next(r for r in range(col, k) if a[r][col] != 0)
        a[col], a[prow] = a[prow], a[col]
        inv[col], inv[prow] = inv[prow], inv[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    etas = []
    for t in range(k):
        # eta_t = sum_j inv[j][t] * simple_j lies in the span of the roots.
        eta = tuple(
            sum(inv[j][t] * simples[j][i] for j in range(k)) for i in range(rd.rank)
        )
        etas.append(eta)
    return tuple(etas)


@dataclass(frozen=True)
class LeviDatum:
    """Levi subgroup data: roots pairing to zero with the cocharacter."""

    parent: RootDatum
    mu: Cocharacter
    levi_root_indices: tuple[int, ...]
    levi_simple_indices: tuple[int, ...]
    weyl_subgroup: WeylGroup
    nonpositive_root_indices: tuple[int, ...]   # <alpha, mu> <= 0   (parabolic P^-)
    nonnegative_root_indices: tuple[int, ...]   # <alpha, mu> >= 0   (parabolic P^+)

    @property
    def levi_roots(self) -> tuple[Vector, ...]:
        return tuple(self.parent.roots[i] for i in self.levi_root_indices)

    @property
    def levi_simple_roots(self) -> tuple[Vector, ...]:
        return tuple(self.parent.roots[i] for i in self.levi_simple_indices)

    @property
    def levi_simple_coroots(self) -> tuple[Vector, ...]:
        return tuple(self.parent.coroots[i] for i in self.levi_simple_indices)

    def positive_levi_root_indices(self) -> tuple[int, ...]:
        out = []
        for i in self.levi_root_indices:
            coeffs = root_coefficients(self.parent.roots[i], self.levi_simple_roots)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                out.append(i)
        return tuple(out)


def _lex_positive(v: Vector) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


def levi_from_cocharacter(rd: RootDatum, mu: Sequence[int], size_cap: int = 10**6) -> LeviDatum:
    """Levi centralising the cocharacter: roots with <alpha, mu> = 0.

    The Levi's simple system is the set of indecomposable lex-positive Levi
    roots (positivity by the sign of the first nonzero coordinate); when mu is
    dominant this recovers a subset of any ambient-positive system.
    """
    mu = tuple(int(x) for x in mu)
    if len(mu) != rd.rank:
        raise RootDatumError("pairing-violation", f"cocharacter {mu} does not have rank {rd.rank}")
    levi = tuple(i for i, a in enumerate(rd.roots) if pairing(a, mu) == 0)
    nonpos = tuple(i for i, a in enumerate(rd.roots) if pairing(a, mu) <= 0)
    nonneg = tuple(i for i, a in enumerate(rd.roots) if pairing(a, mu) >= 0)
    levi_roots = [rd.roots[i] for i in levi]
    pos = [r for r in levi_roots if _lex_positive(r)]
    pos_set = set(pos)
    simples = []
    for r in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(r, b)) in pos_set for b in pos if b != r
        )
        if not decomposable:
            simples.append(r)
    simple_idx = tuple(rd.roots.index(r) for r in simples)
    wl = enumerate_weyl_group(
        rd.rank,
        [rd.roots[i] for i in simple_idx],
        [rd.coroots[i] for i in simple_idx],
        size_cap,
    )
    datum = LeviDatum(rd, mu, levi, simple_idx, wl, nonpos, nonneg)
    # Sanity: every Levi root is a +-N-combination of the chosen simple system.
    for r in levi_roots:
        coeffs = root_coefficients(r, datum.levi_simple_roots) if simples else None
        if simples:
            ok = coeffs is not None and (
                all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)
            )
        else:
            ok = not any(levi_roots)
        if not ok:
            raise RootDatumError(
                "reflection-not-permuting",
                f"Levi root {r} is not a signed combination of the Levi simple system",
            )
    return datum


def levi_sub_datum(levi: LeviDatum) -> RootDatum:
    """The Levi as a root datum on the same lattice (for structural checks)."""
    rd = levi.parent
    return RootDatum(
        rd.rank,
        tuple(rd.roots[i] for i in levi.levi_root_indices),
        tuple(rd.coroots[i] for i in levi.levi_root_indices),
        tuple(levi.levi_root_indices.index(i) for i in levi.levi_simple_indices),
        rd.twist,
        name=(rd.name + ":levi") if rd.name else "levi",
    )


# ---------------------------------------------------------------------------
# Dominant monoids


def _extreme_rays(ineq: list[list[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of {t in R^dim : ineq * t >= 0}, primitive integer vectors.

    The cone must be pointed.  Rays are found as one-dimensional kernels of
    (dim-1)-subsets of the constraint rows.
    """
    if dim == 0:
        return []
    rays: set[tuple[int, ...]] = set()
    rows = list(range(len(ineq)))
    for subset in itertools.combinations(rows, dim - 1):
        m = IntegerMatrix.from_rows([ineq[r] for r in subset] or [[0] * dim])
        ker = kernel_basis(m)
        if len(ker) != 1:
            continue
        t = ker[0]
        g = 0
        for x in t:
            g = abs(x) if g == 0 else _gcd(g, abs(x))
        t = tuple(x // g for x in t) if g else t
        for cand in (t, tuple(-x for x in t)):
            if all(sum(row[i] * cand[i] for i in range(dim)) >= 0 for row in ineq):
                rays.add(cand)
    return sorted(rays)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _canonical_preimage(v: Vector, lineality: Sequence[Vector]) -> Vector:
    """Deterministic small representative of v modulo the lineality lattice."""
    if not lineality:
        return v
    cur = list(v)
    # Rounding passes along each lineality direction, then a local box search.
    for _ in range(4):
        changed = False
        for z in lineality:
            zz = sum(x * x for x in z)
            if zz == 0:
                continue
            num = sum(a * b for a, b in zip(cur, z))
            q = int(round(Fraction(num, zz)))
            if q:
                cur = [a - q * b for a, b in zip(cur, z)]
                changed = True
        if not changed:
            break

    def key(vec):
        return (max(abs(x) for x in vec) if vec else 0,
                sum(abs(x) for x in vec),
                tuple(-x for x in vec))

    best = tuple(cur)
    radius = 2
    for combo in itertools.product(range(-radius, radius + 1), repeat=len(lineality)):
        cand = tuple(
            c + sum(t * z[i] for t, z in zip(combo, lineality))
            for i, c in enumerate(cur)
        )
        if key(cand) < key(best):
            best = cand
    return best


def dominant_hilbert_basis(rd: RootDatum, levi: Optional[LeviDatum] = None) -> list[Vector]:
    """Generators of the monoid of (Levi-)dominant weights.

    Directions on which all simple coroots vanish are lattice lines; their
    basis vectors appear with both signs.  The pointed part is computed by
    enumerating lattice points in the box spanned by the extreme rays and
    filtering to indecomposables.
    """
    cosimples = levi.levi_simple_coroots if levi is not None else rd.simple_coroots
    n = rd.rank
    a_rows = [list(c) for c in cosimples]
    a = IntegerMatrix(len(a_rows), n, tuple(tuple(r) for r in a_rows))
    lin = hermite_row_basis(kernel_basis(a), n)
    out: list[Vector] = []
    for z in lin:
        out.append(z)
        out.append(tuple(-x for x in z))
    s = len(a_rows)
    if s == 0:
        return sorted(set(out))
    # Image lattice P = A * Z^n inside Z^s, with basis rows b_1..b_r.
    cols = [a.column(j) for j in range(n)]
    basis = hermite_row_basis(cols, s)
    r = len(basis)
    if r > 0:
        # Inequalities in P-coordinates: N[k][i] = basis_i[k].
        ineq = [[basis[i][k] for i in range(r)] for k in range(s)]
        rays = _extreme_rays(ineq, r)
        lo = [sum(min(0, t[j]) for t in rays) for j in range(r)]
        hi = [sum(max(0, t[j]) for t in rays) for j in range(r)]
        cands = []
        for point in itertools.product(*[range(lo[j], hi[j] + 1) for j in range(r)]):
            if all(x == 0 for x in point):
                continue
            if all(sum(row[i] * point[i] for i in range(r)) >= 0 for row in ineq):
                cands.append(point)

        def in_monoid(t):
            return all(sum(row[i] * t[i] for i in range(r)) >= 0 for row in ineq)

        hilbert = []
        for c in cands:
            decomposable = any(
                other != c and in_monoid(tuple(x - y for x, y in zip(c, other)))
                for other in cands
            )
            if not decomposable:
                hilbert.append(c)
        # Pull each generator back to the weight lattice along a fixed section.
        bmat = IntegerMatrix.from_rows(a_rows)
        for t in sorted(hilbert):
            y = [sum(basis[i][k] * t[i] for i in range(r)) for k in range(s)]
            sol = solve_linear_diophantine(bmat, y)
            assert sol is not None, "image point must lift to the weight lattice"
            out.append(_canonical_preimage(sol[0], lin))
    return sorted(set(out))


def weights_dominant(weight: Sequence[int], cosimples: Sequence[Vector]) -> bool:
    return all(pairing(weight, cv) >= 0 for cv in cosimples)


# ---------------------------------------------------------------------------
# Presets


def _sl2() -> RootDatum:
    return make_root_datum(1, [(2,), (-2,)], [(1,), (-1,)], [(2,)], name="SL2")


def _pgl2() -> RootDatum:
    return make_root_datum(1, [(1,), (-1,)], [(2,), (-2,)], [(1,)], name="PGL2")


def _gl2() -> RootDatum:
    return make_root_datum(2, [(1, -1), (-1, 1)], [(1, -1), (-1, 1)], [(1, -1)], name="GL2")


def _gl3() -> RootDatum:
    pos = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]
    roots = pos + [tuple(-x for x in r) for r in pos]
    return make_root_datum(3, roots, roots, [(1, -1, 0), (0, 1, -1)], name="GL3")


def _sl3() -> RootDatum:
    # Fundamental weight coordinates: X*(T) is the weight lattice.
    pos_roots = [(2, -1), (-1, 2), (1, 1)]
    pos_coroots = [(1, 0), (0, 1), (1, 1)]
    roots = pos_roots + [tuple(-x for x in r) for r in pos_roots]
    coroots = pos_coroots + [tuple(-x for x in r) for r in pos_coroots]
    return make_root_datum(2, roots, coroots, [(2, -1), (-1, 2)], name="SL3")


def _sl4() -> RootDatum:
    pos_roots = [(2, -1, 0), (-1, 2, -1), (0, -1, 2), (1, 1, -1), (-1, 1, 1), (1, 0, 1)]
    pos_coroots = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    roots = pos_roots + [tuple(-x for x in r) for r in pos_roots]
    coroots = pos_coroots + [tuple(-x for x in r) for r in pos_coroots]
    return make_root_datum(3, roots, coroots, [(2, -1, 0), (-1, 2, -1), (0, -1, 2)], name="SL4")


def _sp4() -> RootDatum:
    # Type C2 in the standard symplectic coordinates; also serves as the
    # B2 Weyl group preset.
    pos_roots = [(1, -1), (0, 2), (1, 1), (2, 0)]
    pos_coroots = [(1, -1), (0, 1), (1, 1), (1, 0)]
    roots = pos_roots + [tuple(-x for x in r) for r in pos_roots]
    coroots = pos_coroots + [tuple(-x for x in r) for r in pos_coroots]
    return make_root_datum(2, roots, coroots, [(1, -1), (0, 2)], name="Sp4")


def _gm() -> RootDatum:
    return RootDatum(1, (), (), (), name="Gm")


def _gm2() -> RootDatum:
    return RootDatum(2, (), (), (), name="Gm^2")


def _a1xa1() -> RootDatum:
    return make_root_datum(
        2,
        [(2, 0), (-2, 0), (0, 2), (0, -2)],
        [(1, 0), (-1, 0), (0, 1), (0, -1)],
        [(2, 0), (0, 2)],
        name="A1xA1",
    )


_PRESETS = {
    "sl2": _sl2,
    "sl3": _sl3,
    "sl4": _sl4,
    "gl2": _gl2,
    "gl3": _gl3,
    "sp4": _sp4,
    "pgl2": _pgl2,
    "gm": _gm,
    "gm^2": _gm2,
    "a1xa1": _a1xa1,
}

PRESET_NAMES = ("SL2", "SL3", "SL4", "GL2", "GL3", "Sp4", "PGL2", "Gm", "Gm^2", "A1xA1")


def preset(name: str) -> RootDatum:
    """Named root datum; see PRESET_NAMES."""
    key = name.lower()
    if key not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    return _PRESETS[key]()
