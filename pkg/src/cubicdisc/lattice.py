"""Even integral lattices, their discriminant groups, and coset types.

Everything here is exact: Gram matrices are Python integers, discriminant
group elements are vectors of ``fractions.Fraction``, and norms/pairings are
reduced rationals.  The distinguished lattice of the toolkit is
``cubic_surface_lattice()``, the rank-10 even lattice of signature (2, 8)
and determinant 3^5 obtained as A2 plus four copies of A2 rescaled by -1.
"""

from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class ClassificationError(ValueError):
    """Raised when a coset norm does not fit the four-class labelling."""


class UniformityError(RuntimeError):
    """Raised when a per-coset statistic fails to be constant on a type class."""


# ---------------------------------------------------------------------------
# integer matrix utilities
# ---------------------------------------------------------------------------

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(d, u, v)`` with ``d = u @ mat @ v`` diagonal, ``u`` and ``v``
    unimodular, and nonnegative diagonal entries each dividing the next.
    """
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    u = _identity(n)
    v = _identity(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        for k in range(m):
            a[dst][k] += q * a[src][k]
        for k in range(n):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def diagonalize():
        for t in range(min(n, m)):
            while True:
                piv = None
                best = None
                for i in range(t, n):
                    for j in range(t, m):
                        e = a[i][j]
                        if e != 0 and (best is None or abs(e) < best):
                            best = abs(e)
                            piv = (i, j)
                if piv is None:
                    return
                if piv[0] != t:
                    swap_rows(t, piv[0])
                if piv[1] != t:
                    swap_cols(t, piv[1])
                clean = True
                for i in range(t + 1, n):
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(t, i, -q)
                    if a[i][t] != 0:
                        clean = False
                for j in range(t + 1, m):
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(t, j, -q)
                    if a[t][j] != 0:
                        clean = False
                if clean:
                    break

    diagonalize()
    # repair the divisibility chain d1 | d2 | ...
    r = min(n, m)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di != 0 and dj % di != 0:
                add_col(i + 1, i, 1)
                diagonalize()
                changed = True
                break
    for i in range(r):
        if a[i][i] < 0:
            for k in range(m):
                a[i][k] = -a[i][k]
            for k in range(n):
                u[i][k] = -u[i][k]
    return a, u, v


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

class Lattice:
    """An even integral lattice given by its Gram matrix.

    The Gram matrix must be square, symmetric, nondegenerate, and have even
    diagonal entries.  Instances are immutable.
    """

    __slots__ = ("gram", "rank", "det")

    def __init__(self, gram: Sequence[Sequence[int]]):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            if g[i][i] % 2 != 0:
                raise ValueError(f"diagonal entry gram[{i}][{i}] = {g[i][i]} is odd; lattice not even")
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        d = det_int(g)
        if d == 0:
            raise ValueError("Gram matrix is degenerate")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "det", d)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Lattice(rank={self.rank}, det={self.det})"

    def signature(self) -> tuple[int, int]:
        """Numbers of positive and negative eigenvalues, computed exactly.

        Uses congruence diagonalization over the rationals, so the result
        does not depend on floating-point eigenvalue estimates.
        """
        n = self.rank
        a = [[Fraction(x) for x in row] for row in self.gram]
        pos = neg = 0
        for k in range(n):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][i] != 0:
                        a[k], a[i] = a[i], a[k]
                        for row in a:
                            row[k], row[i] = row[i], row[k]
                        break
                else:
                    # all trailing diagonal entries vanish; create one from an
                    # off-diagonal entry (exists since the form is nondegenerate)
                    for j in range(k + 1, n):
                        if a[k][j] != 0:
                            for t in range(n):
                                a[k][t] += a[j][t]
                            for row in a:
                                row[k] += row[j]
                            break
            piv = a[k][k]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            for i in range(k + 1, n):
                c = a[i][k] / piv
                if c:
                    for j in range(k, n):
                        a[i][j] -= c * a[k][j]
        return pos, neg

    def pairing(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """Bilinear form of two rational vectors in basis coordinates."""
        g = self.gram
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = g[i]
                total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return total

    def norm(self, x: Sequence[Fraction]) -> Fraction:
        return self.pairing(x, x)


def a2_gram() -> Lattice:
    """The A2 root lattice in its standard basis, Gram [[2,-1],[-1,2]]."""
    return Lattice([[2, -1], [-1, 2]])


def rescale(lattice: Lattice, k: int) -> Lattice:
    """Multiply the bilinear form by the nonzero integer ``k``."""
    if k == 0:
        raise ValueError("rescale factor must be nonzero")
    return Lattice([[k * x for x in row] for row in lattice.gram])


def direct_sum(lattices: Sequence[Lattice]) -> Lattice:
    """Orthogonal direct sum; Gram matrices are placed block-diagonally."""
    lattices = list(lattices)
    if not lattices:
        raise ValueError("direct_sum needs at least one summand")
    n = sum(lat.rank for lat in lattices)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[offset + i][offset + j] = lat.gram[i][j]
        offset += lat.rank
    return Lattice(gram)


def cubic_surface_lattice() -> Lattice:
    """The rank-10 lattice A2 + A2(-1)^4 underlying the discriminant form."""
    a2 = a2_gram()
    return direct_sum([a2] + [rescale(a2, -1)] * 4)


# ---------------------------------------------------------------------------
# discriminant groups
# ---------------------------------------------------------------------------

class DiscGroup:
    """The finite quadratic module M'/M of an even nondegenerate lattice.

    Coset representatives are canonical: every coset has a unique
    representative with all coordinates in [0, 1) relative to the lattice
    basis, and ``coset_reps`` lists them in the deterministic order produced
    by Smith reduction of the Gram matrix.
    """

    __slots__ = ("parent", "invariant_factors", "coset_reps", "exponent",
                 "numerators", "_index")

    def __init__(self, parent: Lattice):
        d, u, v = smith_normal_form(parent.gram)
        n = parent.rank
        diag = [d[i][i] for i in range(n)]
        factors = tuple(x for x in diag if x > 1)
        exponent = lcm(*factors) if factors else 1

        # M'/M is generated by (column j of v) / diag[j]; enumerate all
        # residue combinations, working over the common denominator.
        gens = [(j, diag[j]) for j in range(n) if diag[j] > 1]
        numerators = []
        for combo in itertools.product(*(range(dj) for _, dj in gens)):
            num = [0] * n
            for (j, dj), c in zip(gens, combo):
                step = exponent // dj
                for i in range(n):
                    num[i] += c * v[i][j] * step
            numerators.append(tuple(x % exponent for x in num))

        order = 1
        for f in factors:
            order *= f
        if len(set(numerators)) != order:
            raise AssertionError("coset enumeration produced duplicates")
        if order != abs(parent.det):
            raise AssertionError("group order disagrees with |det|")

        reps = [tuple(Fraction(x, exponent) for x in num) for num in numerators]
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "invariant_factors", factors)
        object.__setattr__(self, "coset_reps", reps)
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "numerators", numerators)
        object.__setattr__(self, "_index", {num: i for i, num in enumerate(numerators)})

    def __setattr__(self, name, value):
        raise AttributeError("DiscGroup is immutable")

    @property
    def order(self) -> int:
        return len(self.coset_reps)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"DiscGroup(order={self.order}, invariant_factors={self.invariant_factors})"

    def zero(self) -> "DiscElement":
        return DiscElement(self, (Fraction(0),) * self.parent.rank)

    def element(self, rep: Sequence) -> "DiscElement":
        return DiscElement(self, rep)

    def elements(self) -> Iterable["DiscElement"]:
        for rep in self.coset_reps:
            yield DiscElement(self, rep, _canonical=True)

    def index_of(self, elem: "DiscElement") -> int:
        num = tuple(int(c * self.exponent) for c in elem.rep)
        return self._index[num]


class DiscElement:
    """A coset of M in M', held by its canonical representative."""

    __slots__ = ("group", "rep")

    def __init__(self, group: DiscGroup, rep: Sequence, _canonical: bool = False):
        if not _canonical:
            rep = tuple(Fraction(x) % 1 for x in rep)
            if len(rep) != group.parent.rank:
                raise ValueError("representative has wrong length")
            # membership in the dual lattice: all pairings with M integral
            for row in group.parent.gram:
                s = sum(r * c for r, c in zip(row, rep))
                if s.denominator != 1:
                    raise ValueError(f"{rep} is not in the dual lattice")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "rep", tuple(rep))

    def __setattr__(self, name, value):
        raise AttributeError("DiscElement is immutable")

    def __eq__(self, other):
        return (isinstance(other, DiscElement) and self.group is other.group
                and self.rep == other.rep)

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"DiscElement({self.rep})"

    def __add__(self, other: "DiscElement") -> "DiscElement":
        self._require_same_group(other)
        rep = tuple((a + b) % 1 for a, b in zip(self.rep, other.rep))
        return DiscElement(self.group, rep, _canonical=True)

    def __neg__(self) -> "DiscElement":
        rep = tuple((-a) % 1 for a in self.rep)
        return DiscElement(self.group, rep, _canonical=True)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.rep)

    def _require_same_group(self, other: "DiscElement"):
        if not isinstance(other, DiscElement) or self.group is not other.group:
            raise ValueError("elements belong to different discriminant groups")

    def norm_mod2(self) -> Fraction:
        """The quadratic value of the coset, reduced into [0, 2)."""
        return self.group.parent.norm(self.rep) % 2

    def pairing_mod1(self, other: "DiscElement") -> Fraction:
        """The bilinear value of two cosets, reduced into [0, 1)."""
        self._require_same_group(other)
        return self.group.parent.pairing(self.rep, other.rep) % 1


def discriminant_group(lattice: Lattice) -> DiscGroup:
    """Compute M'/M with canonical coset representatives."""
    return DiscGroup(lattice)


def norm_mod2(gamma: DiscElement) -> Fraction:
    return gamma.norm_mod2()


def pairing_mod1(gamma: DiscElement, delta: DiscElement) -> Fraction:
    return gamma.pairing_mod1(delta)


# ---------------------------------------------------------------------------
# coset types
# ---------------------------------------------------------------------------

class CosetType(Enum):
    """The four coset classes: 00 for the zero coset, n for q-value n/3."""

    T00 = "00"
    T0 = "0"
    T1 = "1"
    T2 = "2"

    @property
    def label(self) -> str:
        return self.value

    def __repr__(self):
        return f"CosetType.{self.name}"


TYPE_ORDER = (CosetType.T00, CosetType.T0, CosetType.T1, CosetType.T2)

_TYPE_BY_THIRD = {Fraction(0): CosetType.T0,
                  Fraction(1, 3): CosetType.T1,
                  Fraction(2, 3): CosetType.T2}


def type_of(gamma: DiscElement) -> CosetType:
    """Classify a coset by half its norm modulo 1.

    The zero coset is type 00; a nonzero coset with norm/2 equal to n/3
    modulo 1 has type n.  Other values cannot occur for the distinguished
    lattice and raise ``ClassificationError``.
    """
    if gamma.is_zero():
        return CosetType.T00
    half = (gamma.norm_mod2() / 2) % 1
    try:
        return _TYPE_BY_THIRD[half]
    except KeyError:
        raise ClassificationError(
            f"coset has norm/2 = {half} mod 1, not a multiple of 1/3") from None
