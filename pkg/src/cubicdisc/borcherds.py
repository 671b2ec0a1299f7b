"""Weight and divisor data of the lifted automorphic form.

The lift of the weight -3 form has weight equal to half the constant term of
the 00 component, and its zeros lie on hyperplanes orthogonal to the norm
-2/3 vectors of the dual lattice (one simple zero per vector, read off from
the single negative-exponent term of the form).  A fixed-point-free order-3
isometry rotates each rank-2 block simultaneously; it groups the divisor
vectors into triples with zero sum and pairwise inner product 1/3, which is
what lets a cube root be taken after restriction to the fixed
complex-hyperbolic subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .lattice import CosetType, Lattice, TYPE_ORDER, cubic_surface_lattice
from .weil import FVector

DIVISOR_NORM = Fraction(-2, 3)
_DENOM = 3  # dual vectors of the distinguished lattice have coordinates in (1/3)Z


class SymmetryError(RuntimeError):
    """The order-3 grouping of divisor vectors failed."""


# ---------------------------------------------------------------------------
# data read off the form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalPart:
    """The negative-exponent terms of the form: (type, exponent, coefficient)."""

    terms: tuple[tuple[CosetType, Fraction, Fraction], ...]

    def as_dict(self) -> dict:
        return {"terms": [{"type": t.label, "exponent": str(e), "coefficient": str(c)}
                          for t, e, c in self.terms]}


def product_weight(f: FVector) -> Fraction:
    """Half the constant coefficient of the 00 component."""
    return f[CosetType.T00].coefficient(0) / 2


def principal_part(f: FVector) -> PrincipalPart:
    """All negative-exponent terms, in type order then by exponent."""
    terms = []
    for t in TYPE_ORDER:
        for e, c in f[t].terms:
            if e < 0:
                terms.append((t, e, c))
    return PrincipalPart(tuple(terms))


# ---------------------------------------------------------------------------
# the order-3 isometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaIsometry:
    """An integer isometry of order 3 with no nonzero fixed vectors."""

    matrix: tuple[tuple[int, ...], ...]

    def apply_numerators(self, nums: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(row[j] * nums[j] for j in range(len(nums)))
                     for row in self.matrix)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum(row[j] * vec[j] for j in range(len(vec)))
                     for row in self.matrix)

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def validate_omega(omega: OmegaIsometry, lattice: Lattice) -> None:
    """Check isometry, order 3, and 1 + w + w^2 = 0; raise on failure."""
    m = omega.matrix
    n = lattice.rank
    if len(m) != n:
        raise SymmetryError("isometry size does not match the lattice rank")
    g = lattice.gram
    mt = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
    if _matmul(_matmul(mt, g), m) != tuple(tuple(row) for row in g):
        raise SymmetryError("matrix does not preserve the bilinear form")
    m2 = _matmul(m, m)
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    if _matmul(m2, m) != ident or m == ident:
        raise SymmetryError("matrix does not have order exactly 3")
    s = tuple(tuple(ident[i][j] + m[i][j] + m2[i][j] for j in range(n)) for i in range(n))
    if any(any(x != 0 for x in row) for row in s):
        raise SymmetryError("1 + w + w^2 != 0; the isometry has fixed vectors")


def omega_isometry() -> OmegaIsometry:
    """Simultaneous 120-degree rotation of all five rank-2 blocks.

    On each block the basis maps as e1 -> e2, e2 -> -e1 - e2, which is
    integral, preserves both the positive and the negated block forms, and
    satisfies 1 + w + w^2 = 0.
    """
    block = ((0, -1), (1, -1))
    n = 10
    m = [[0] * n for _ in range(n)]
    for b in range(5):
        for i in range(2):
            for j in range(2):
                m[2 * b + i][2 * b + j] = block[i][j]
    omega = OmegaIsometry(tuple(tuple(row) for row in m))
    validate_omega(omega, cubic_surface_lattice())
    return omega


# ---------------------------------------------------------------------------
# divisor vectors
# ---------------------------------------------------------------------------

_THIRDS = {n: Fraction(n, _DENOM) for n in range(-64, 65)}


def _third(n: int) -> Fraction:
    f = _THIRDS.get(n)
    return f if f is not None else Fraction(n, _DENOM)


class DivisorVector:
    """A dual-lattice vector of norm -2/3, one hyperplane of the divisor."""

    __slots__ = ("vec", "norm", "numerators")

    def __init__(self, numerators: Sequence[int], norm: Fraction):
        object.__setattr__(self, "numerators", tuple(int(x) for x in numerators))
        object.__setattr__(self, "vec", tuple(_third(x) for x in self.numerators))
        object.__setattr__(self, "norm", norm)

    def __setattr__(self, name, value):
        raise AttributeError("DivisorVector is immutable")

    def __eq__(self, other):
        return isinstance(other, DivisorVector) and self.numerators == other.numerators

    def __lt__(self, other):
        return self.numerators < other.numerators

    def __hash__(self):
        return hash(self.numerators)

    def __repr__(self):
        return f"DivisorVector({self.numerators}, norm={self.norm})"

    def coordinates_str(self) -> list[str]:
        return [str(c) for c in self.vec]


def _block_vectors(bound: int, block_gram) -> dict:
    """Dual vectors of one rank-2 block, grouped by nine times their norm."""
    g = block_gram
    out: dict = {}
    for m1 in range(-bound, bound + 1):
        for m2 in range(-bound, bound + 1):
            if (g[0][0] * m1 + g[0][1] * m2) % _DENOM or \
               (g[1][0] * m1 + g[1][1] * m2) % _DENOM:
                continue
            n9 = (g[0][0] * m1 * m1 + 2 * g[0][1] * m1 * m2 + g[1][1] * m2 * m2)
            out.setdefault(n9, []).append((m1, m2))
    return out


def enumerate_divisor_vectors(bound: int,
                              lattice: Optional[Lattice] = None) -> list[DivisorVector]:
    """All norm -2/3 dual vectors with coordinate numerators bounded by ``bound``.

    Coordinates are written over the fixed denominator 3 of the dual lattice;
    the box constraint is |numerator| <= bound in every coordinate.  The
    indefinite form makes a norm ball infinite, but the block structure keeps
    the box scan exact: vectors are assembled block by block, with block
    norms combined to hit -2/3.  The result is sorted lexicographically by
    numerator vector.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if lattice is None:
        lattice = cubic_surface_lattice()
    g = lattice.gram
    blocks = [tuple(tuple(g[2 * b + i][2 * b + j] for j in range(2)) for i in range(2))
              for b in range(5)]
    groups = [_block_vectors(bound, bg) for bg in blocks]
    target = 9 * DIVISOR_NORM
    assert target.denominator == 1
    target = target.numerator  # -6

    neg_min = [min(gr) for gr in groups]
    vectors: list[tuple[int, ...]] = []

    def extend(bidx: int, acc: int, partial: tuple[int, ...]):
        if bidx == 4:
            rem = target - acc
            for mv in groups[4].get(rem, ()):
                vectors.append(partial + mv)
            return
        floor_rest = sum(neg_min[bidx + 1:])
        for n9, members in groups[bidx].items():
            # remaining blocks are negative definite: acc' + floor <= target <= acc'
            if acc + n9 + floor_rest <= target <= acc + n9:
                for mv in members:
                    extend(bidx + 1, acc + n9, partial + mv)

    extend(0, 0, ())
    vectors.sort()
    return [DivisorVector(nums, DIVISOR_NORM) for nums in vectors]


def omega_orbits(vectors: Sequence[DivisorVector],
                 omega: Optional[OmegaIsometry] = None,
                 lattice: Optional[Lattice] = None) -> list[tuple[DivisorVector, ...]]:
    """Partition divisor vectors into orbits {v, wv, w^2 v} of the rotation.

    The input is closed under the isometry first (a coordinate box need not
    be rotation invariant), then every orbit is verified to have size exactly
    3, to sum to zero, and to have all pairwise inner products equal to 1/3.
    Violations raise :class:`SymmetryError`.  Orbits are returned sorted by
    their lexicographically smallest member.
    """
    if omega is None:
        omega = omega_isometry()
    if lattice is None:
        lattice = cubic_surface_lattice()

    by_nums = {v.numerators: v for v in vectors}
    if not by_nums:
        return []
    w = omega.as_array()
    gram = np.array(lattice.gram, dtype=np.int64)

    nums = np.array(sorted(by_nums), dtype=np.int64)
    img1 = nums @ w.T
    img2 = img1 @ w.T

    # close the set under the isometry
    for arr in (img1, img2):
        norms9 = np.einsum("ij,jk,ik->i", arr, gram, arr)
        for row, n9 in zip(arr.tolist(), norms9.tolist()):
            key = tuple(row)
            if key not in by_nums:
                if n9 != 9 * DIVISOR_NORM:
                    raise SymmetryError("rotation image has wrong norm; not an isometry")
                by_nums[key] = DivisorVector(key, DIVISOR_NORM)

    nums = np.array(sorted(by_nums), dtype=np.int64)
    img1 = nums @ w.T
    img2 = img1 @ w.T

    if (nums + img1 + img2).any():
        raise SymmetryError("some orbit does not sum to zero")
    if (nums == img1).all(axis=1).any():
        raise SymmetryError("the isometry fixes a divisor vector; orbit of size < 3")
    pair9_1 = np.einsum("ij,jk,ik->i", nums, gram, img1)
    pair9_2 = np.einsum("ij,jk,ik->i", nums, gram, img2)
    if (pair9_1 != 3).any() or (pair9_2 != 3).any():
        raise SymmetryError("pairwise inner products within an orbit differ from 1/3")

    orbits = []
    seen = set()
    keys = [tuple(r) for r in nums.tolist()]
    k1 = [tuple(r) for r in img1.tolist()]
    k2 = [tuple(r) for r in img2.tolist()]
    for i, key in enumerate(keys):
        if key in seen:
            continue
        orbit_keys = (key, k1[i], k2[i])
        if len(set(orbit_keys)) != 3:
            raise SymmetryError("orbit has fewer than 3 distinct members")
        seen.update(orbit_keys)
        orbits.append(tuple(by_nums[k] for k in orbit_keys))
    return orbits


def divisor_data_dict(vectors: Sequence[DivisorVector],
                      orbits: Sequence[tuple[DivisorVector, ...]]) -> dict:
    """JSON form: rational coordinate vectors plus orbit index triples.

    The vector list covers the enumerated set together with any rotation
    images added by closure, in lexicographic order; orbits refer to it by
    index.
    """
    all_vecs = sorted({v for orb in orbits for v in orb} | set(vectors))
    index = {v.numerators: i for i, v in enumerate(all_vecs)}
    return {
        "norm": str(DIVISOR_NORM),
        "vectors": [v.coordinates_str() for v in all_vecs],
        "orbits": [[index[v.numerators] for v in orb] for orb in orbits],
        "enumerated": len(vectors),
        "with_closure": len(all_vecs),
    }
