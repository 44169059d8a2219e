"""
interval: the divisibility interval I_c = [1, c] of a Coxeter element as a
finite lattice, plus the derived object sets for divided categories.

Divisibility is the prefix order of reflection length: v ⪯ w iff
ℓ_R(v) + ℓ_R(v⁻¹w) = ℓ_R(w).  The lattice is enumerated once by a
breadth-first search from the identity (right-multiplying by reflections,
keeping length-additive products that still divide c) and frozen into:

- an id table of the elements (ids sorted by length, ties broken by the
  byte serialization of the scaled matrix — fully deterministic),
- a bit-packed divisibility matrix in both orientations (up-sets for joins,
  down-sets for meets),
- the permutation realizing w ↦ w^c = c⁻¹wc.

All elements must be orthogonal scaled matrices (inverse = transpose); this
holds for permutation groups and for the real reflection groups handled
here.  A versioned binary cache round-trips the whole structure bit-exactly.
"""

from __future__ import annotations

import dataclasses
import struct
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .exactalg import (
    ScaledMatrix,
    reflection_length,
    reflection_length_batch,
    scaled_product,
)

CACHE_MAGIC = b"GARS"
CACHE_VERSION = 1


class LatticeError(RuntimeError):
    """A meet or join failed to be unique (must never fire on real input)."""


class IntegrityError(RuntimeError):
    """Constructed data failed a structural self-check."""


# ---------------------------------------------------------------------------
# Bit-set helpers (rows of uint64 words, bit j of a row = word j>>6, bit j&63)
# ---------------------------------------------------------------------------

def _set_bits_diag(rows: np.ndarray) -> None:
    n = rows.shape[0]
    ids = np.arange(n)
    rows[ids, ids >> 6] |= np.uint64(1) << (ids & 63).astype(np.uint64)


def _test_bit(row: np.ndarray, j: int) -> bool:
    return bool((int(row[j >> 6]) >> (j & 63)) & 1)


def _bits_to_ids(row: np.ndarray, n: int) -> np.ndarray:
    bools = np.unpackbits(row.view(np.uint8), bitorder="little")[:n]
    return np.nonzero(bools)[0]


def _popcount_range(row: np.ndarray, lo: int, hi: int) -> int:
    """Number of set bits with index in [lo, hi)."""
    total = 0
    for j in range(lo >> 6, ((hi + 63) >> 6)):
        word = int(row[j])
        if word == 0:
            continue
        base = j << 6
        if base < lo:
            word &= ~((1 << (lo - base)) - 1)
        if base + 64 > hi:
            word &= (1 << (hi - base)) - 1
        total += word.bit_count()
    return total


def _top_bit(row: np.ndarray) -> int:
    for j in range(len(row) - 1, -1, -1):
        word = int(row[j])
        if word:
            return (j << 6) + word.bit_length() - 1
    return -1


def _bottom_bit(row: np.ndarray) -> int:
    for j in range(len(row)):
        word = int(row[j])
        if word:
            return (j << 6) + (word & -word).bit_length() - 1
    return -1


def _transpose_bits(packed: np.ndarray, n: int) -> np.ndarray:
    """Transpose an n×n bit matrix given as packed uint64 rows."""
    out = np.zeros_like(packed)
    out8 = out.view(np.uint8)
    chunk = 2048
    for i0 in range(0, n, chunk):
        i1 = min(n, i0 + chunk)
        rows8 = packed[i0:i1].view(np.uint8)
        bools = np.unpackbits(rows8, axis=1, bitorder="little")[:, :n]
        t8 = np.packbits(bools.T, axis=1, bitorder="little")
        out8[:, i0 // 8: i0 // 8 + t8.shape[1]] = t8
    return out


# ---------------------------------------------------------------------------
# The lattice
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class IntervalLattice:
    """
    Frozen interval [1, c].  Ids are 0 (identity) through size−1, sorted by
    length; `c_id` is the top.  `up[v]` has bit w set iff v ⪯ w; `below[w]`
    has bit v set iff v ⪯ w.  `conj_c[v]` is the id of c⁻¹vc.
    """

    group_tag: str
    scale: int
    mats: np.ndarray          # (N, n, n) int64, scaled
    lengths: np.ndarray       # (N,) int64
    conj_c: np.ndarray        # (N,) int32
    up: np.ndarray            # (N, words) uint64
    below: np.ndarray         # (N, words) uint64
    index: dict[bytes, int]
    c_id: int

    # -- basic queries ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.lengths)

    @property
    def dim(self) -> int:
        return self.mats.shape[1]

    @property
    def c_length(self) -> int:
        return int(self.lengths[self.c_id])

    def element(self, i: int) -> ScaledMatrix:
        return ScaledMatrix(self.mats[i], self.scale)

    def id_of_arr(self, arr: np.ndarray) -> int | None:
        return self.index.get(np.ascontiguousarray(arr, dtype=np.int64).tobytes())

    def id_of(self, w: ScaledMatrix) -> int | None:
        return self.id_of_arr(w.arr)

    def rank_sizes(self) -> list[int]:
        return np.bincount(self.lengths, minlength=self.c_length + 1).tolist()

    def layer_range(self, length: int) -> tuple[int, int]:
        lo, hi = np.searchsorted(self.lengths, [length, length + 1])
        return int(lo), int(hi)

    # -- order --------------------------------------------------------------

    def divides(self, v: int, w: int) -> bool:
        return _test_bit(self.up[v], w)

    def divisor_ids(self, w: int) -> np.ndarray:
        return _bits_to_ids(self.below[w], self.size)

    def multiple_ids(self, v: int) -> np.ndarray:
        return _bits_to_ids(self.up[v], self.size)

    def meet(self, x: int, y: int) -> int:
        """Unique common divisor of maximal length (checked unique)."""
        common = self.below[x] & self.below[y]
        best = _top_bit(common)
        lo, hi = self.layer_range(int(self.lengths[best]))
        if _popcount_range(common, lo, hi) != 1:
            raise LatticeError(f"meet({x},{y}) is not unique")
        return best

    def join(self, x: int, y: int) -> int:
        """Unique common multiple of minimal length (checked unique)."""
        common = self.up[x] & self.up[y]
        best = _bottom_bit(common)
        lo, hi = self.layer_range(int(self.lengths[best]))
        if _popcount_range(common, lo, hi) != 1:
            raise LatticeError(f"join({x},{y}) is not unique")
        return best

    # -- arithmetic ---------------------------------------------------------

    def product_id(self, a: int, b: int) -> int | None:
        """Id of the group product ab, or None when ab leaves the interval."""
        return self.id_of_arr(scaled_product(self.mats[a], self.mats[b], self.scale))

    def complement_left(self, v: int, w: int) -> int:
        """Id of v⁻¹w for v ⪯ w (lengths add: ℓ(v) + ℓ(v⁻¹w) = ℓ(w))."""
        if not self.divides(v, w):
            raise ValueError(f"{v} does not divide {w}")
        arr = scaled_product(self.mats[v].T, self.mats[w], self.scale)
        out = self.id_of_arr(arr)
        if out is None:
            raise IntegrityError("left complement fell outside the interval")
        return out

    def complement_right(self, w: int, v: int) -> int:
        """Id of wv⁻¹ for v a right-divisor of w (i.e. wv⁻¹ ⪯ w)."""
        arr = scaled_product(self.mats[w], self.mats[v].T, self.scale)
        out = self.id_of_arr(arr)
        if out is None or not self.divides(out, w):
            raise ValueError(f"{v} is not a right divisor of {w}")
        return out

    def dual_id(self, x: int) -> int:
        """Id of x⁻¹c (the length-reversing involution of the interval)."""
        return self.complement_left(x, self.c_id)

    def conj_pow(self, x: int, k: int) -> int:
        """Id of c^{-k} x c^k."""
        perm = self.conj_c
        if k < 0:
            inv = np.empty_like(perm)
            inv[perm] = np.arange(self.size, dtype=perm.dtype)
            perm, k = inv, -k
        out = x
        for _ in range(k):
            out = int(perm[out])
        return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_interval(
    c: ScaledMatrix,
    reflections: Sequence[ScaledMatrix],
    tag: str = "",
) -> IntervalLattice:
    """
    Enumerate [1, c] by breadth-first search: from each w of length L keep
    the products x = wr (r a reflection) with ℓ_R(x) = L + 1 and
    ℓ_R(x) + ℓ_R(x⁻¹c) = ℓ_R(c).  Cover edges w → wr feed the transitive
    closure that fills both bit-packed divisibility orientations.
    """
    scale = c.scale
    n = c.n
    if not c.is_orthogonal():
        raise IntegrityError("c is not orthogonal")
    if any(r.scale != scale or not r.is_orthogonal() for r in reflections):
        raise IntegrityError("reflections must be orthogonal, same scale")
    lc = reflection_length(c)
    refl = np.stack([r.arr for r in reflections]).astype(np.int64)
    nrefl = len(reflections)
    c_arr = c.arr.astype(np.int64)

    ident = np.eye(n, dtype=np.int64) * scale
    index: dict[bytes, int] = {ident.tobytes(): 0}
    mats_list: list[np.ndarray] = [ident]
    lengths_list: list[int] = [0]
    edges_src: list[int] = []
    edges_dst: list[int] = []

    layer_ids = [0]
    layer_len = 0
    while layer_ids:
        pending: dict[bytes, np.ndarray] = {}
        pending_edges: list[tuple[int, bytes]] = []
        for i0 in range(0, len(layer_ids), 512):
            ids_chunk = layer_ids[i0:i0 + 512]
            w = np.stack([mats_list[i] for i in ids_chunk])
            prod = scaled_product(w[:, None], refl[None, :], scale).reshape(-1, n, n)
            for j in range(prod.shape[0]):
                key = prod[j].tobytes()
                if key in index:
                    continue  # strictly shorter element, already placed
                src = ids_chunk[j // nrefl]
                if key not in pending:
                    pending[key] = prod[j]
                pending_edges.append((src, key))
        if not pending:
            break
        keys_sorted = sorted(pending)
        cand = np.stack([pending[k] for k in keys_sorted])
        rest = scaled_product(np.transpose(cand, (0, 2, 1)), c_arr, scale)
        rest_len = reflection_length_batch(rest, scale)
        new_ids = []
        for k_i, key in enumerate(keys_sorted):
            if rest_len[k_i] == lc - layer_len - 1:
                idx = len(mats_list)
                index[key] = idx
                mats_list.append(pending[key])
                lengths_list.append(layer_len + 1)
                new_ids.append(idx)
        for src, key in pending_edges:
            dst = index.get(key)
            if dst is not None and lengths_list[dst] == layer_len + 1:
                edges_src.append(src)
                edges_dst.append(dst)
        layer_ids = new_ids
        layer_len += 1

    size = len(mats_list)
    lengths = np.array(lengths_list, dtype=np.int64)
    if layer_len != lc or lengths[-1] != lc:
        raise IntegrityError("interval top not reached at the expected length")
    mats = np.stack(mats_list)
    c_id = index[c_arr.tobytes()]
    if lengths[c_id] != lc or (lengths == lc).sum() != 1:
        raise IntegrityError("interval has no unique top")

    # conjugation permutation
    cw = scaled_product(c_arr.T, mats, scale)
    cwc = scaled_product(cw, c_arr, scale)
    conj = np.empty(size, dtype=np.int32)
    for i in range(size):
        j = index.get(cwc[i].tobytes())
        if j is None:
            raise IntegrityError("conjugation by c does not preserve the interval")
        conj[i] = j

    # divisibility in both orientations, by layered transitive closure
    words = (size + 63) >> 6
    e_src = np.array(edges_src, dtype=np.int64)
    e_dst = np.array(edges_dst, dtype=np.int64)
    below = np.zeros((size, words), dtype=np.uint64)
    up = np.zeros((size, words), dtype=np.uint64)
    _set_bits_diag(below)
    _set_bits_diag(up)
    dst_len = lengths[e_dst] if len(e_dst) else np.zeros(0, dtype=np.int64)
    for level in range(1, lc + 1):
        mask = dst_len == level
        s, d = e_src[mask], e_dst[mask]
        for i0 in range(0, len(s), 8192):
            np.bitwise_or.at(below, d[i0:i0 + 8192], below[s[i0:i0 + 8192]])
    src_len = lengths[e_src] if len(e_src) else np.zeros(0, dtype=np.int64)
    for level in range(lc - 1, -1, -1):
        mask = src_len == level
        s, d = e_src[mask], e_dst[mask]
        for i0 in range(0, len(s), 8192):
            np.bitwise_or.at(up, s[i0:i0 + 8192], up[d[i0:i0 + 8192]])

    mats.setflags(write=False)
    return IntervalLattice(
        group_tag=tag,
        scale=scale,
        mats=mats,
        lengths=lengths,
        conj_c=conj,
        up=up,
        below=below,
        index=index,
        c_id=c_id,
    )


# ---------------------------------------------------------------------------
# Divided objects and the twist exponent
# ---------------------------------------------------------------------------

def compute_eta(p: int, q: int) -> int:
    """
    The twist exponent η for the (p,q) divided category: η = 1 when p = 1;
    otherwise with q = pk + r (0 < r < p), m ∈ [1, p−1] minimal such that
    mr ≡ 1 mod p and mr = a_m·p + 1, return −(mk + a_m).  Satisfies
    p·η ≡ 1 mod q.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    if p == 1:
        return 1
    k, r = divmod(q, p)
    m = next(m for m in range(1, p) if (m * r) % p == 1)
    a_m = (m * r - 1) // p
    eta = -(m * k + a_m)
    if (p * eta) % q != 1 % q:
        raise IntegrityError("twist exponent failed its defining congruence")
    return eta


def divided_objects(lat: IntervalLattice, p: int, q: int) -> list[int]:
    """
    Ids of the u ∈ I_c with u^{c^q} = u, ℓ_R(u) = ℓ_R(c)/p, and
    u · u^{c^η} ⋯ u^{c^{(p−1)η}} = c.  Empty when p ∤ ℓ_R(c).
    """
    lc = lat.c_length
    if lc % p != 0:
        return []
    eta = compute_eta(p, q)
    target = lc // p
    lo, hi = lat.layer_range(target)
    out = []
    for u in range(lo, hi):
        if lat.conj_pow(u, q) != u:
            continue
        acc = lat.mats[u]
        v = u
        for _ in range(p - 1):
            v = lat.conj_pow(v, eta)
            acc = scaled_product(acc, lat.mats[v], lat.scale)
        if (acc == lat.mats[lat.c_id]).all():
            out.append(u)
    return out


def phi_orbits(lat: IntervalLattice, objects: Iterable[int], p: int, q: int) -> list[list[int]]:
    """
    Orbits of the object set under u ↦ u^{c^η}, each listed from its least
    id, orbits sorted by least id.  Orbit sizes divide q.
    """
    eta = compute_eta(p, q)
    remaining = set(objects)
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = [start]
        cur = lat.conj_pow(start, eta)
        while cur != start:
            orbit.append(cur)
            cur = lat.conj_pow(cur, eta)
        for u in orbit:
            remaining.discard(u)
        orbits.append(orbit)
    return orbits


# ---------------------------------------------------------------------------
# Binary cache
# ---------------------------------------------------------------------------

def save_cache(lat: IntervalLattice, path: str) -> None:
    """Serialize the lattice (deterministic bytes; see load_cache)."""
    tag = lat.group_tag.encode()
    words = lat.up.shape[1]
    header = struct.pack(
        "<4sIH", CACHE_MAGIC, CACHE_VERSION, len(tag)
    ) + tag + struct.pack(
        "<IIIIII", lat.scale, lat.dim, lat.c_length, lat.size, lat.c_id, words
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(lat.mats.astype(np.int8).tobytes())
        fh.write(lat.lengths.astype(np.uint8).tobytes())
        fh.write(lat.conj_c.astype("<i4").tobytes())
        fh.write(lat.up.astype("<u8").tobytes())


def load_cache(path: str) -> IntervalLattice:
    """Load a lattice saved by save_cache; reconstructs the derived fields."""
    with open(path, "rb") as fh:
        blob = fh.read()
    magic, version, tag_len = struct.unpack_from("<4sIH", blob, 0)
    if magic != CACHE_MAGIC:
        raise IntegrityError("bad cache magic")
    if version != CACHE_VERSION:
        raise IntegrityError(f"unsupported cache version {version}")
    off = struct.calcsize("<4sIH")
    tag = blob[off:off + tag_len].decode()
    off += tag_len
    scale, n, lc, size, c_id, words = struct.unpack_from("<IIIIII", blob, off)
    off += struct.calcsize("<IIIIII")
    mats = np.frombuffer(blob, dtype=np.int8, count=size * n * n, offset=off)
    off += size * n * n
    mats = mats.reshape(size, n, n).astype(np.int64)
    lengths = np.frombuffer(blob, dtype=np.uint8, count=size, offset=off).astype(np.int64)
    off += size
    conj = np.frombuffer(blob, dtype="<i4", count=size, offset=off).astype(np.int32)
    off += size * 4
    up = np.frombuffer(blob, dtype="<u8", count=size * words, offset=off)
    up = up.reshape(size, words).astype(np.uint64)
    index = {mats[i].tobytes(): i for i in range(size)}
    if len(index) != size or lengths[c_id] != lc:
        raise IntegrityError("cache content inconsistent")
    below = _transpose_bits(up, size)
    mats.setflags(write=False)
    return IntervalLattice(
        group_tag=tag,
        scale=scale,
        mats=mats,
        lengths=lengths,
        conj_c=conj,
        up=up,
        below=below,
        index=index,
        c_id=c_id,
    )
