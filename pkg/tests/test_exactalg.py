"""Exact linear algebra: scaled matrices, monomial matrices, lengths."""
from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from garcat.exactalg import (
    MonomialElement,
    ResourceLimitError,
    ScaledMatrix,
    bareiss_rank,
    build_e8,
    char_poly_batch,
    cyclotomic_poly,
    enumerate_reflections,
    monomial_to_matrix,
    reflection_length,
    reflection_length_batch,
    root_multiplicity_batch,
)

import oracles


# ---------------------------------------------------------------------------
# ScaledMatrix


def test_scaled_matrix_identity_and_inverse():
    gens, c = build_e8()
    eye = ScaledMatrix.identity(8, c.scale)
    for g in gens[:4]:
        assert g.is_orthogonal()
        assert g * g == eye
        assert g.inv() == g
    assert (c * c.inv()) == eye
    assert c ** 0 == eye
    assert c ** 3 == c * c * c
    assert c ** -2 == (c.inv()) ** 2


def test_scaled_matrix_hashable_and_mixed_scale():
    a = ScaledMatrix([[1, 0], [0, 1]], 1)
    b = ScaledMatrix([[1, 0], [0, 1]], 1)
    assert a == b and hash(a) == hash(b) and len({a, b}) == 1
    with pytest.raises(ValueError):
        a * ScaledMatrix([[2, 0], [0, 2]], 2)
    with pytest.raises(ValueError):
        ScaledMatrix([[1, 0, 0], [0, 1, 0]], 1)


def test_build_e8_sanity():
    gens, c = build_e8()
    assert len(gens) == 18
    assert all(reflection_length(g) == 1 for g in gens)
    assert c.order() == 30
    assert (c ** 15) == -ScaledMatrix.identity(8, c.scale)
    assert reflection_length(c) == 8


def test_matrix_order_cap():
    gens, c = build_e8()
    with pytest.raises(ResourceLimitError):
        c.order(cap=5)


# ---------------------------------------------------------------------------
# Ranks and characteristic polynomials (vs. numpy / sympy routes)


def test_bareiss_rank_matches_numpy():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 6)
        r = rng.randint(0, n)
        a = np.array([[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)])
        b = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)])
        mat = a @ b if r else np.zeros((n, n), dtype=np.int64)
        assert bareiss_rank(mat) == np.linalg.matrix_rank(mat.astype(float))


def test_char_poly_batch_matches_sympy():
    import sympy

    rng = random.Random(11)
    mats = np.array(
        [[[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)] for _ in range(12)]
    )
    ours = char_poly_batch(mats)
    lam = sympy.Symbol("x")
    for mat, row in zip(mats, ours):
        poly = sympy.Matrix(mat.tolist()).charpoly(lam)
        expect = [int(v) for v in poly.all_coeffs()]
        assert list(row) == expect


def test_root_multiplicity_batch():
    # (x-2)^k * (x+1)^(4-k) for k = 0..4: multiplicity of 2 is exactly k.
    rows = []
    for k in range(5):
        poly = np.array([1])
        for _ in range(k):
            poly = np.convolve(poly, [1, -2])
        for _ in range(4 - k):
            poly = np.convolve(poly, [1, 1])
        rows.append(poly)
    mult = root_multiplicity_batch(np.array(rows), 2)
    assert list(mult) == [0, 1, 2, 3, 4]


def test_reflection_length_matches_cycle_oracle_on_permutations():
    for p in (
        (0, 1, 2, 3, 4),
        (1, 0, 2, 3, 4),
        (1, 2, 3, 4, 0),
        (1, 0, 3, 2, 4),
        (2, 0, 1, 4, 3),
    ):
        mat = np.zeros((5, 5), dtype=np.int64)
        for i, j in enumerate(p):
            mat[j, i] = 1
        assert reflection_length(ScaledMatrix(mat, 1)) == oracles.perm_reflection_length(p)


def test_reflection_length_batch_matches_scalar_route():
    gens, c = build_e8()
    rng = random.Random(3)
    elems = []
    for _ in range(40):
        w = ScaledMatrix.identity(8, c.scale)
        for _ in range(rng.randint(0, 6)):
            w = w * gens[rng.randrange(8)]
        elems.append(w)
    batch = np.stack([w.arr for w in elems])
    lengths = reflection_length_batch(batch, c.scale)
    assert [int(v) for v in lengths] == [reflection_length(w) for w in elems]


# ---------------------------------------------------------------------------
# Monomial matrices


@st.composite
def monomial_triple(draw):
    m = draw(st.integers(1, 6))
    n = draw(st.integers(1, 5))

    def one():
        perm = tuple(draw(st.permutations(list(range(n)))))
        exps = tuple(draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)))
        return MonomialElement(m, perm, exps)

    return one(), one(), one()


@given(monomial_triple())
def test_monomial_group_laws(triple):
    a, b, c = triple
    eye = MonomialElement.identity(a.m, a.n)
    assert (a * b) * c == a * (b * c)
    assert a * a.inv() == eye and a.inv() * a == eye
    assert (a * b).inv() == b.inv() * a.inv()
    assert a ** 3 == a * a * a


@given(monomial_triple())
def test_monomial_chi_and_embedding_are_homomorphisms(triple):
    a, b, _ = triple
    assert (a * b).chi_exponent() == (a.chi_exponent() + b.chi_exponent()) % a.m
    assert monomial_to_matrix(a * b) == monomial_to_matrix(a) * monomial_to_matrix(b)


@given(monomial_triple())
def test_monomial_length_matches_integer_rank_route(triple):
    a, _, _ = triple
    phi = len(cyclotomic_poly(a.m)) - 1
    emb = monomial_to_matrix(a)
    delta = emb.arr - np.eye(emb.n, dtype=np.int64)
    assert bareiss_rank(delta) == phi * reflection_length(a)


def test_monomial_cycles_partition_indices():
    g = MonomialElement(4, (1, 0, 2, 4, 3), (1, 3, 0, 2, 2))
    cycles = g.cycles()
    assert sorted(i for cyc in cycles for i in cyc) == list(range(5))
    assert (2,) in cycles  # fixed points are included


def test_cyclotomic_poly_known_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    for m in range(1, 13):
        prod = np.array([1])
        for d in range(1, m + 1):
            if m % d == 0:
                prod = np.convolve(prod, list(cyclotomic_poly(d))[::-1])
        expect = [1] + [0] * (m - 1) + [-1]
        assert list(prod) == expect


# ---------------------------------------------------------------------------
# Reflection closure


def _transposition_matrix(n: int, i: int, j: int) -> ScaledMatrix:
    mat = np.eye(n, dtype=np.int64)
    mat[[i, j]] = mat[[j, i]]
    return ScaledMatrix(mat, 1)


def test_enumerate_reflections_symmetric_group():
    gens = [_transposition_matrix(4, i, i + 1) for i in range(3)]
    refl = enumerate_reflections(gens)
    assert len(refl) == 6
    assert all(reflection_length(t) == 1 for t in refl)


def test_enumerate_reflections_cap():
    gens, _ = build_e8()
    with pytest.raises(ResourceLimitError):
        enumerate_reflections(gens, cap=10)
