"""
exactalg: exact arithmetic backends for finite reflection groups.

Two element models are provided.

- ScaledMatrix: an exact rational matrix stored as `scale` times an integer
  matrix.  All products, powers and inverses are integer arithmetic with an
  exactness assertion; nothing is ever rounded.  The rank-4 example group of
  8x8 matrices generated by `build_e8` has all entries in (1/4)·Z, so it
  lives at scale 4.  Permutation and signed-permutation groups live at
  scale 1.

- MonomialElement: a monomial matrix e_i ↦ ζ_m^{exps[i]} · e_{perm[i]}
  (0-indexed), i.e. a permutation together with a diagonal of m-th roots of
  unity kept as exponents mod m.  Composition matches the matrix product
  under the convention that matrices act on column vectors, so (g*h)(x) =
  g(h(x)).

Reflection length ℓ_R(w) — the codimension of the fixed space of w — is
computed by fraction-free integer elimination (Bareiss) in the matrix model
and by a cycle count in the monomial model.  A batched characteristic-
polynomial route (`reflection_length_batch`) serves bulk enumeration; it
must always agree with the elimination route.

Conventions: conjugation is a^g := g⁻¹ a g, and matrix products apply the
right factor first.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np


class ResourceLimitError(RuntimeError):
    """A closure or search exceeded its configured cap."""


# ---------------------------------------------------------------------------
# Exact scaled-integer matrices
# ---------------------------------------------------------------------------

def scaled_product(a: np.ndarray, b: np.ndarray, scale: int) -> np.ndarray:
    """
    Product of two scale-times-integer matrices, returned at the same scale.

    Supports numpy broadcasting (e.g. a batch (N,n,n) against one (n,n)).
    Raises if the true rational product does not lie at the given scale.
    """
    p = np.matmul(a, b)
    if scale != 1:
        if (p % scale).any():
            raise ArithmeticError("product leaves the 1/scale integer lattice")
        p //= scale
    return p


class ScaledMatrix:
    """
    An exact rational matrix M stored as the integer matrix `arr` = scale·M.

    Immutable and hashable (by scale and the bytes of `arr`); suitable as a
    dict key during group enumeration.
    """

    __slots__ = ("scale", "arr", "_key", "_hash")

    def __init__(self, arr: np.ndarray | Sequence[Sequence[int]], scale: int = 1):
        a = np.array(arr, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        a.setflags(write=False)
        self.scale = scale
        self.arr = a
        self._key = (scale, a.shape[0], a.tobytes())
        self._hash = hash(self._key)

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> ScaledMatrix:
        return cls(np.eye(n, dtype=np.int64) * scale, scale)

    @property
    def n(self) -> int:
        return self.arr.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, ScaledMatrix) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: ScaledMatrix) -> ScaledMatrix:
        if self.scale != other.scale:
            raise ValueError("mixed scales")
        return ScaledMatrix(scaled_product(self.arr, other.arr, self.scale), self.scale)

    def __pow__(self, k: int) -> ScaledMatrix:
        if k < 0:
            return self.inv() ** (-k)
        result = ScaledMatrix.identity(self.n, self.scale)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self) -> ScaledMatrix:
        return ScaledMatrix(-self.arr, self.scale)

    @property
    def T(self) -> ScaledMatrix:
        return ScaledMatrix(self.arr.T.copy(), self.scale)

    def is_identity(self) -> bool:
        return bool((self.arr == np.eye(self.n, dtype=np.int64) * self.scale).all())

    def is_orthogonal(self) -> bool:
        p = np.matmul(self.arr, self.arr.T)
        return bool((p == self.scale * self.scale * np.eye(self.n, dtype=np.int64)).all())

    def inv(self) -> ScaledMatrix:
        if self.is_orthogonal():
            return self.T
        return ScaledMatrix(_invert_exact(self.arr, self.scale), self.scale)

    def order(self, cap: int = 1000) -> int:
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * self
        raise ResourceLimitError(f"order exceeds {cap}")

    def sort_key(self) -> bytes:
        return self._key[2]

    def as_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.scale) for v in row] for row in self.arr]

    def __repr__(self) -> str:
        return f"ScaledMatrix(scale={self.scale}, arr={self.arr.tolist()})"


def _invert_exact(arr: np.ndarray, scale: int) -> np.ndarray:
    """Exact inverse of a scaled matrix via Gauss-Jordan over Fraction."""
    n = arr.shape[0]
    a = [[Fraction(int(arr[i][j]), scale) for j in range(n)] for i in range(n)]
    b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        b[col] = [x / d for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = b[i][j] * scale
            if v.denominator != 1:
                raise ArithmeticError("inverse leaves the 1/scale integer lattice")
            out[i, j] = v.numerator
    return out


# ---------------------------------------------------------------------------
# Reflections from roots; the rank-8 example group
# ---------------------------------------------------------------------------

# Roots (num, den): the root is num/den.  Squared norm 2 throughout.
_E8_ROOT_DATA = [
    ((1, -1, -1, -1, -1, -1, -1, 1), 2),
    ((1, 1, 0, 0, 0, 0, 0, 0), 1),
    ((-1, 1, 0, 0, 0, 0, 0, 0), 1),
    ((0, -1, 1, 0, 0, 0, 0, 0), 1),
    ((0, 0, -1, 1, 0, 0, 0, 0), 1),
    ((0, 0, 0, -1, 1, 0, 0, 0), 1),
    ((0, 0, 0, 0, -1, 1, 0, 0), 1),
    ((0, 0, 0, 0, 0, -1, 1, 0), 1),
    ((1, 0, 1, 0, 0, 0, 0, 0), 1),
    ((0, 0, -1, 0, 1, 0, 0, 0), 1),
    ((1, 0, 0, 0, 0, 1, 0, 0), 1),
    ((-1, -1, -1, -1, -1, 1, -1, 1), 2),
    ((0, 1, 0, 0, 0, 1, 0, 0), 1),
    ((-1, -1, -1, -1, -1, -1, 1, 1), 2),
    ((0, 1, 0, 0, 0, 0, 1, 0), 1),
    ((1, -1, 1, -1, -1, -1, 1, 1), 2),
    ((1, -1, -1, 1, -1, -1, 1, 1), 2),
    ((-1, 1, -1, -1, 1, -1, 1, 1), 2),
]

#: The 18 roots used to build the rank-8 group: tuples of Fractions.
E8_ROOTS: list[tuple[Fraction, ...]] = [
    tuple(Fraction(v, den) for v in num) for num, den in _E8_ROOT_DATA
]

#: Scale at which the rank-8 group lives: entries of its elements are in (1/4)Z.
E8_SCALE = 4


def reflection_from_root(alpha: Sequence, scale: int = E8_SCALE) -> ScaledMatrix:
    """
    The orthogonal reflection x ↦ x − 2⟨x,α⟩/⟨α,α⟩·α as a ScaledMatrix.

    Raises ValueError on a zero root, ArithmeticError if the reflection does
    not lie at the requested scale.
    """
    a = [Fraction(v) for v in alpha]
    norm2 = sum(v * v for v in a)
    if norm2 == 0:
        raise ValueError("zero root")
    n = len(a)
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            entry = (Fraction(int(i == j)) - 2 * a[i] * a[j] / norm2) * scale
            if entry.denominator != 1:
                raise ArithmeticError("reflection does not live at this scale")
            out[i, j] = entry.numerator
    return ScaledMatrix(out, scale)


def build_e8() -> tuple[list[ScaledMatrix], ScaledMatrix]:
    """
    The 18 reflections of the fixed root list, and the product c of the
    first eight.  Checks on construction: c has order 30, c^15 = −Id, and
    ℓ_R(c) = 8.
    """
    reflections = [reflection_from_root(alpha) for alpha in E8_ROOTS]
    c = functools.reduce(lambda x, y: x * y, reflections[:8])
    if c.order() != 30:
        raise AssertionError("Coxeter element does not have order 30")
    if (c ** 15) != -ScaledMatrix.identity(8, E8_SCALE):
        raise AssertionError("c^15 is not -Id")
    if reflection_length(c) != 8:
        raise AssertionError("Coxeter element does not have reflection length 8")
    return reflections, c


# ---------------------------------------------------------------------------
# Reflection length
# ---------------------------------------------------------------------------

def bareiss_rank(mat: np.ndarray | Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    rows = [[int(v) for v in row] for row in np.asarray(mat)]
    n = len(rows)
    m = len(rows[0]) if n else 0
    rank = 0
    denom = 1
    for col in range(m):
        piv = next((r for r in range(rank, n) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, n):
            q = rows[r][col]
            rows[r] = [(p * rows[r][j] - q * rows[rank][j]) // denom for j in range(m)]
        denom = p
        rank += 1
        if rank == n:
            break
    return rank


def reflection_length(w: ScaledMatrix | MonomialElement) -> int:
    """
    Codimension of the fixed space of w.

    Matrix model: rank(w − Id) by Bareiss elimination.  Monomial model: each
    cycle of the permutation contributes its length when the product of its
    root-of-unity entries is nontrivial, its length minus one otherwise.
    """
    if isinstance(w, ScaledMatrix):
        delta = w.arr - w.scale * np.eye(w.n, dtype=np.int64)
        return bareiss_rank(delta)
    if isinstance(w, MonomialElement):
        total = 0
        for cycle in w.cycles():
            weight = sum(w.exps[i] for i in cycle) % w.m
            total += len(cycle) if weight else len(cycle) - 1
        return total
    raise TypeError(f"unsupported element type {type(w).__name__}")


def char_poly_batch(mats: np.ndarray) -> np.ndarray:
    """
    Characteristic polynomials det(λI − A) of a batch of integer matrices,
    shape (N,n,n) → coefficient rows (N,n+1), leading coefficient first.

    Faddeev–LeVerrier recurrence; all divisions are exact over the integers.
    """
    mats = np.asarray(mats, dtype=np.int64)
    batch, n, _ = mats.shape
    coeffs = np.zeros((batch, n + 1), dtype=np.int64)
    coeffs[:, 0] = 1
    eye = np.eye(n, dtype=np.int64)
    m_k = np.broadcast_to(eye, mats.shape).copy()
    for k in range(1, n + 1):
        am = np.matmul(mats, m_k)
        tr = np.trace(am, axis1=1, axis2=2)
        if (tr % k).any():
            raise ArithmeticError("inexact division in characteristic polynomial")
        coeffs[:, k] = -(tr // k)
        if k < n:
            m_k = am + coeffs[:, k, None, None] * eye
    return coeffs


def root_multiplicity_batch(coeffs: np.ndarray, value: int) -> np.ndarray:
    """
    Multiplicity of `value` as a root of each coefficient row (monic, leading
    coefficient first), via successive scaled derivatives p^(k)(value)/k!.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    batch, n1 = coeffs.shape
    n = n1 - 1
    mult = np.zeros(batch, dtype=np.int64)
    remaining = np.ones(batch, dtype=bool)
    for k in range(n + 1):
        weights = np.array(
            [comb(n - i, k) * value ** (n - i - k) if n - i >= k else 0 for i in range(n1)],
            dtype=np.int64,
        )
        val = coeffs @ weights
        hit = remaining & (val != 0)
        mult[hit] = k
        remaining &= ~hit
    if remaining.any():
        raise ArithmeticError("polynomial vanished identically")
    return mult


def reflection_length_batch(mats: np.ndarray, scale: int) -> np.ndarray:
    """
    Reflection lengths of a batch (N,n,n) of scale-times-integer matrices:
    n minus the multiplicity of eigenvalue 1 (= root `scale` of the integer
    characteristic polynomial).
    """
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[1]
    coeffs = char_poly_batch(mats)
    return n - root_multiplicity_batch(coeffs, scale)


# ---------------------------------------------------------------------------
# Monomial matrices
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class MonomialElement:
    """
    The monomial matrix e_i ↦ ζ_m^{exps[i]} · e_{perm[i]} (0-indexed).

    perm[i] is the image of index i; exps are kept reduced mod m.  Products
    compose right-to-left like matrices: (g*h)(x) = g(h(x)).
    """

    m: int
    perm: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if len(self.exps) != len(self.perm):
            raise ValueError("exps length mismatch")
        if any(not 0 <= e < self.m for e in self.exps):
            object.__setattr__(self, "exps", tuple(e % self.m for e in self.exps))

    @classmethod
    def identity(cls, m: int, n: int) -> MonomialElement:
        return cls(m, tuple(range(n)), (0,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: MonomialElement) -> MonomialElement:
        if self.m != other.m or self.n != other.n:
            raise ValueError("mixed monomial groups")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        exps = tuple(
            (other.exps[i] + self.exps[other.perm[i]]) % self.m for i in range(self.n)
        )
        return MonomialElement(self.m, perm, exps)

    def inv(self) -> MonomialElement:
        iperm = [0] * self.n
        for i, j in enumerate(self.perm):
            iperm[j] = i
        exps = tuple((-self.exps[iperm[j]]) % self.m for j in range(self.n))
        return MonomialElement(self.m, tuple(iperm), exps)

    def __pow__(self, k: int) -> MonomialElement:
        if k < 0:
            return self.inv() ** (-k)
        result = MonomialElement.identity(self.m, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and not any(self.exps)

    def order(self, cap: int = 10_000) -> int:
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * self
        raise ResourceLimitError(f"order exceeds {cap}")

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of the underlying permutation, including fixed points."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.perm[i]
            out.append(tuple(cyc))
        return out

    def chi_exponent(self) -> int:
        """Exponent k with ζ_m^k = product of the nonzero matrix entries."""
        return sum(self.exps) % self.m

    def sort_key(self) -> tuple:
        return (self.perm, self.exps)

    def __repr__(self) -> str:
        return f"MonomialElement(m={self.m}, perm={self.perm}, exps={self.exps})"


@functools.cache
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending degree."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    deg_n, deg_d = len(num) - 1, len(den) - 1
    out = [0] * (deg_n - deg_d + 1)
    for k in range(deg_n - deg_d, -1, -1):
        q, r = divmod(num[k + deg_d], den[deg_d])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for j in range(deg_d + 1):
            num[k + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("nonzero polynomial remainder")
    return out


@functools.cache
def _zeta_block(m: int, k: int) -> np.ndarray:
    """
    Integer matrix of multiplication by ζ_m^k on Z[ζ_m] in the power basis
    1, ζ, …, ζ^{φ(m)−1}.
    """
    phi = cyclotomic_poly(m)
    f = len(phi) - 1
    companion = np.zeros((f, f), dtype=np.int64)
    for i in range(1, f):
        companion[i, i - 1] = 1
    for i in range(f):
        companion[i, f - 1] = -phi[i]
    out = np.eye(f, dtype=np.int64)
    for _ in range(k % m):
        out = companion @ out
    out.setflags(write=False)
    return out


def monomial_to_matrix(g: MonomialElement) -> ScaledMatrix:
    """
    Integer matrix of g acting on Z[ζ_m]^n viewed as a rank n·φ(m) lattice.

    Ranks over this embedding scale by φ(m): rank(emb(g) − Id) equals
    φ(m) · (codimension of the fixed space of g over the cyclotomic field).
    """
    f = len(cyclotomic_poly(g.m)) - 1
    big = np.zeros((g.n * f, g.n * f), dtype=np.int64)
    for i in range(g.n):
        block = _zeta_block(g.m, g.exps[i])
        r = g.perm[i] * f
        c = i * f
        big[r:r + f, c:c + f] = block
    return ScaledMatrix(big, 1)


# ---------------------------------------------------------------------------
# Reflection-set closure
# ---------------------------------------------------------------------------

def enumerate_reflections(
    generators: Iterable,
    cap: int = 100_000,
) -> list:
    """
    All reflections (length-1 elements) of the group generated by
    `generators`, computed by closing the reflections among the generators
    under conjugation by the generators until stable.

    Deterministic output order (by element sort key).  Raises
    ResourceLimitError when the closure exceeds `cap` elements.
    """
    gens = list(generators)
    found = {g for g in gens if reflection_length(g) == 1}
    inverses = [g.inv() for g in gens]
    frontier = list(found)
    while frontier:
        fresh = []
        for g, gi in zip(gens, inverses):
            for r in frontier:
                conj = gi * r * g
                if conj not in found:
                    found.add(conj)
                    fresh.append(conj)
        if len(found) > cap:
            raise ResourceLimitError(f"reflection closure exceeds {cap}")
        frontier = fresh
    return sorted(found, key=lambda x: x.sort_key())
