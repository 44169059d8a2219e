"""Independent brute-force oracles used to pin expected values.

Everything here is implemented from first principles -- permutations as
tuples, partitions as frozensets, lengths by closed formulas -- so that
agreement with the package is a genuine two-route check rather than a
tautology.  Nothing in this module imports from :mod:`garcat`.
"""
from __future__ import annotations

import itertools
import math
from functools import cache

# ---------------------------------------------------------------------------
# Permutations as tuples, composed like the package's matrices: (ab)(i) = a(b(i)).


def perm_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_cycle_count(a: tuple[int, ...]) -> int:
    seen = [False] * len(a)
    count = 0
    for i in range(len(a)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
    return count


def perm_reflection_length(a: tuple[int, ...]) -> int:
    """Absolute length in the symmetric group: n minus the number of cycles."""
    return len(a) - perm_cycle_count(a)


def coxeter_perm(n: int) -> tuple[int, ...]:
    """The n-cycle i -> i+1 (mod n)."""
    return tuple((i + 1) % n for i in range(n))


def perm_divides(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    lx = perm_reflection_length(x)
    rest = perm_mul(perm_inv(x), y)
    return lx + perm_reflection_length(rest) == perm_reflection_length(y)


def absolute_interval(n: int) -> set[tuple[int, ...]]:
    """All permutations below the n-cycle in absolute order, by exhaustion."""
    c = coxeter_perm(n)
    return {
        p
        for p in itertools.permutations(range(n))
        if perm_divides(p, c)
    }


# ---------------------------------------------------------------------------
# Set partitions of {0..n-1} as frozensets of frozensets.


def set_partitions_brute(n: int) -> list[frozenset[frozenset[int]]]:
    """All set partitions, by recursive insertion of n-1 into partitions of n-1."""
    if n == 0:
        return [frozenset()]
    out = []
    for smaller in set_partitions_brute(n - 1):
        parts = list(smaller)
        for i, block in enumerate(parts):
            rest = parts[:i] + parts[i + 1 :]
            out.append(frozenset(rest + [block | {n - 1}]))
        out.append(frozenset(list(parts) + [frozenset({n - 1})]))
    return out


def is_crossing(parts: frozenset[frozenset[int]]) -> bool:
    """A partition crosses iff some a < b < c < d has a,c together and b,d
    together but in a different block."""
    blocks = list(parts)
    for p, q in itertools.combinations(blocks, 2):
        for a, c in itertools.combinations(sorted(p), 2):
            for b, d in itertools.combinations(sorted(q), 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


@cache
def bell(n: int) -> int:
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell(k) for k in range(n))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# The twist exponent: the defining property is p * eta = 1 (mod q).


def eta_mod_q(p: int, q: int) -> int:
    """Unique residue e in [0, q) with p*e = 1 mod q (gcd(p, q) = 1)."""
    hits = [e for e in range(q) if (p * e) % q == 1 % q]
    assert len(hits) == 1, (p, q, hits)
    return hits[0]


# ---------------------------------------------------------------------------
# Abelianization of a finite group presentation, via Smith normal form.


def abelian_invariants(
    num_letters: int, relators: list[list[tuple[int, int]]]
) -> tuple[int, list[int]]:
    """(free rank, nontrivial torsion coefficients) of the abelianized group.

    Each relator is a list of (letter index, exponent) pairs.
    """
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    rows = []
    for rel in relators:
        row = [0] * num_letters
        for idx, exp in rel:
            row[idx] += exp
        rows.append(row)
    if not rows:
        return num_letters, []
    m = smith_normal_form(sympy.Matrix(rows))
    diag = [int(m[i, i]) for i in range(min(m.shape))]
    nonzero = [abs(d) for d in diag if d != 0]
    return num_letters - len(nonzero), [d for d in nonzero if d > 1]
