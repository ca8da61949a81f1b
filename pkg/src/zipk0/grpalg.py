"""The group algebra Z[X*(T)]: Laurent characters with exact integer coefficients.

Elements are finite maps from exponent vectors (characters) to nonzero
integers.  This is the representation ring of the torus; the Weyl action,
Frobenius endomorphism and Demazure operators below make it the workhorse
ring for everything downstream.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional, Sequence

from .lattice import hermite_row_basis, kernel_basis, IntegerMatrix
from .rootdata import (
    Matrix,
    RootDatum,
    Vector,
    WeylGroup,
    mat_vec,
    pairing,
    reflection_matrix,
    weyl_orbit,
)


class GroupAlgebraElement:
    """Element of Z[X*(T)]; immutable, hashable, exact."""

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Vector, int]):
        self.rank = rank
        cleaned = {}
        for e, c in terms.items():
            if c:
                e = tuple(int(x) for x in e)
                if len(e) != rank:
                    raise ValueError(f"exponent {e} does not have rank {rank}")
                cleaned[e] = cleaned.get(e, 0) + int(c)
        self.terms = {e: c for e, c in cleaned.items() if c}
        self._hash = None

    # -- basic ring structure ------------------------------------------------

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return GroupAlgebraElement(self.rank, out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.rank, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgebraElement(self.rank, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[Vector, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return GroupAlgebraElement(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupAlgebraElement":
        if k < 0:
            raise ValueError("negative powers: invert exponents explicitly instead")
        result = one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAlgebraElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, tuple(sorted(self.terms.items()))))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Vector]:
        return sorted(self.terms)

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self.terms.get(tuple(exponent), 0)

    def evaluate_at_one(self) -> int:
        """Specialize every torus variable to 1 (the virtual rank)."""
        return sum(self.terms.values())

    def evaluate_units(self, units: Sequence[int], modulus: int) -> int:
        """Evaluate at x_i = units[i] modulo `modulus` (units invertible there)."""
        total = 0
        for e, c in self.terms.items():
            v = c % modulus
            for x, k in zip(units, e):
                v = (v * pow(x, k, modulus)) % modulus
            total = (total + v) % modulus
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"e{i}^{k}" if k != 1 else f"e{i}"
                for i, k in enumerate(e)
                if k
            )
            if not mono:
                bits.append(f"{c:+d}")
            elif c == 1:
                bits.append(f"+{mono}")
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c:+d}*{mono}")
        return "".join(bits)


def zero(rank: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(rank, {})


def one(rank: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(rank, {(0,) * rank: 1})


def monomial(rank: int, exponent: Sequence[int], coeff: int = 1) -> GroupAlgebraElement:
    return GroupAlgebraElement(rank, {tuple(int(x) for x in exponent): coeff})


def from_terms(rank: int, items: Iterable[tuple[Sequence[int], int]]) -> GroupAlgebraElement:
    return GroupAlgebraElement(rank, {tuple(e): c for e, c in items})


# ---------------------------------------------------------------------------
# Group actions


def weyl_act(w: Matrix, f: GroupAlgebraElement) -> GroupAlgebraElement:
    """e^chi -> e^{w chi}, extended Z-linearly; a ring automorphism."""
    return GroupAlgebraElement(f.rank, {mat_vec(w, e): c for e, c in f.terms.items()})


def orbit_sum(weyl: WeylGroup, weight: Sequence[int]) -> GroupAlgebraElement:
    """m_lambda: the sum of e^nu over the orbit (each orbit element once)."""
    rank = len(weight)
    return GroupAlgebraElement(rank, {nu: 1 for nu in weyl_orbit(weyl, weight)})


def frobenius(
    f: GroupAlgebraElement, p: int, twist: Optional[Matrix] = None
) -> GroupAlgebraElement:
    """e^chi -> e^{p * tau(chi)}: pullback along the (possibly twisted) Frobenius."""
    out: dict[Vector, int] = {}
    for e, c in f.terms.items():
        img = mat_vec(twist, e) if twist is not None else e
        key = tuple(p * x for x in img)
        out[key] = out.get(key, 0) + c
    return GroupAlgebraElement(f.rank, out)


# ---------------------------------------------------------------------------
# Demazure operators


def _alpha_key(coroot: Vector):
    def key(exponent: Vector):
        return (pairing(exponent, coroot), exponent)

    return key


def _divide_by_one_minus_inverse_root(
    numerator: GroupAlgebraElement, alpha: Vector, coroot: Vector
) -> GroupAlgebraElement:
    """Exact division by (1 - e^{-alpha}).

    Pseudo-division along the alpha direction: repeatedly peel the term
    maximal for the (alpha-height, lex) order, which is a translation
    invariant total order with leading term 1 for the divisor.  Failure to
    terminate means the division was not exact, which is an internal bug.
    """
    if numerator.is_zero():
        return numerator
    key = _alpha_key(coroot)
    heights = [pairing(e, coroot) for e in numerator.terms]
    span = (max(heights) - min(heights)) // 2 + 1
    cap = len(numerator.terms) * (span + 1) + 16
    quotient: dict[Vector, int] = {}
    work = dict(numerator.terms)
    steps = 0
    while work:
        steps += 1
        assert steps <= cap, "Demazure numerator was not divisible: internal error"
        top = max(work, key=key)
        c = work.pop(top)
        quotient[top] = quotient.get(top, 0) + c
        lower = tuple(a - b for a, b in zip(top, alpha))
        val = work.get(lower, 0) + c
        if val:
            work[lower] = val
        elif lower in work:
            del work[lower]
    return GroupAlgebraElement(numerator.rank, quotient)


def demazure(rd: RootDatum, simple_index: int, f: GroupAlgebraElement) -> GroupAlgebraElement:
    """delta_alpha(f) = (f - e^{-alpha} s_alpha(f)) / (1 - e^{-alpha}).

    Normalized so delta_alpha(1) = 1; the divided difference attached to the
    simple root alpha.
    """
    if simple_index not in range(len(rd.simple_indices)):
        raise ValueError(f"no simple root with index {simple_index}")
    root_idx = rd.simple_indices[simple_index]
    alpha = rd.roots[root_idx]
    coroot = rd.coroots[root_idx]
    s = reflection_matrix(alpha, coroot)
    shifted = monomial(f.rank, tuple(-x for x in alpha)) * weyl_act(s, f)
    return _divide_by_one_minus_inverse_root(f - shifted, alpha, coroot)


def _word_is_reduced(rd: RootDatum, word: Sequence[int]) -> bool:
    from .rootdata import mat_mul, identity_matrix, positive_root_indices

    m = identity_matrix(rd.rank)
    for i in word:
        idx = rd.simple_indices[i]
        m = mat_mul(m, reflection_matrix(rd.roots[idx], rd.coroots[idx]))
    pos = [rd.roots[i] for i in positive_root_indices(rd)]
    pos_set = frozenset(pos)
    inv = sum(1 for a in pos if mat_vec(m, a) not in pos_set)
    return inv == len(word)


def demazure_word(
    rd: RootDatum, word: Sequence[int], f: GroupAlgebraElement
) -> GroupAlgebraElement:
    """Composition along a reduced word (rightmost letter applied first)."""
    if not _word_is_reduced(rd, word):
        raise ValueError(f"word {tuple(word)} is not reduced")
    out = f
    for i in reversed(word):
        out = demazure(rd, i, out)
    return out


def demazure_character(
    rd: RootDatum, weight: Sequence[int], weyl: Optional[WeylGroup] = None
) -> GroupAlgebraElement:
    """delta_{w0}(e^lambda) for dominant lambda: the character of the irreducible
    (in good cases) module of highest weight lambda."""
    if not all(pairing(weight, cv) >= 0 for cv in rd.simple_coroots):
        raise ValueError(f"weight {tuple(weight)} is not dominant")
    if weyl is None:
        from .rootdata import weyl_enumerate

        weyl = weyl_enumerate(rd)
    word = weyl.reduced_words[weyl.longest_element]
    return demazure_word(rd, word, monomial(rd.rank, weight))


# ---------------------------------------------------------------------------
# Windowed Hecke invariants


def window_box(rank: int, radius: int) -> list[Vector]:
    """All exponents with every coordinate in [-radius, radius], sorted."""
    return sorted(itertools.product(range(-radius, radius + 1), repeat=rank))


def hecke_invariants_window(
    rd: RootDatum, radius: int
) -> list[GroupAlgebraElement]:
    """Z-basis of {f supported in the box: delta_alpha f = f and s_alpha f = f}.

    The conditions generate the annihilator of the augmentation left ideal in
    its finite presentation {delta_alpha - 1} plus Weyl invariance; equality
    with genuine invariants is property-tested elsewhere.
    """
    box = window_box(rd.rank, radius)
    index = {e: i for i, e in enumerate(box)}
    rows: list[list[int]] = []

    def add_condition(images: list[GroupAlgebraElement]):
        # images[i] = (operator - identity) applied to basis monomial i.
        support = sorted({e for img in images for e in img.terms})
        for e in support:
            row = [img.terms.get(e, 0) for img in images]
            if any(row):
                rows.append(row)

    for i in range(len(rd.simple_indices)):
        idx = rd.simple_indices[i]
        s = reflection_matrix(rd.roots[idx], rd.coroots[idx])
        s_images = []
        d_images = []
        for e in box:
            mono = monomial(rd.rank, e)
            s_images.append(weyl_act(s, mono) - mono)
            d_images.append(demazure(rd, i, mono) - mono)
        add_condition(s_images)
        add_condition(d_images)

    if not rows:
        coeff_vectors = [
            tuple(1 if j == i else 0 for j in range(len(box))) for i in range(len(box))
        ]
    else:
        m = IntegerMatrix.from_rows(rows)
        coeff_vectors = kernel_basis(m)
    canon = hermite_row_basis(coeff_vectors, len(box))
    return [
        GroupAlgebraElement(rd.rank, {box[i]: c for i, c in enumerate(v) if c})
        for v in canon
    ]
