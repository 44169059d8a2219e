"""
garside: the category of (p,q)-periodic elements over an interval lattice.

Objects are the ids returned by interval.divided_objects: elements u with
u^{c^q} = u, ℓ_R(u) = ℓ_R(c)/p, and u·u^{c^η}⋯u^{c^{(p−1)η}} = c.  A simple
morphism is a pair (a,b) of c^q-fixed interval elements with ab an object;
its source is ab and its target is b·φ^η(a), where φ(x) = x^c.  The local
Garside map is Δ(u) = (u,1), the identity is (1,u), and (a,b)(b,φ^η(a)) =
Δ(ab).

A general morphism of the enveloping groupoid is kept in left-weighted form:
a Δ-power plus a greedy sequence of non-Δ, non-identity simples.  Only the
a-components are stored — b is recovered from the running source, and a pair
of simples (a,b),(α,β) is greedy exactly when b ∧ α = 1.  Equality of
morphisms is literal equality of the normalized triples.

Everything is driven by a CategoryContext holding the lattice, the twist
exponent η, per-object atom tables, and memoized meet/complement/product
caches (the hot operations of greedy normalization).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exactalg import ResourceLimitError, scaled_product
from .interval import IntervalLattice, IntegrityError, compute_eta, divided_objects

#: A simple morphism, as the pair of interval ids (a, b).
Simple = tuple[int, int]


class Morphism(NamedTuple):
    """A normalized groupoid element Δ^delta · (factors), based at source."""

    source: int
    delta: int
    factors: tuple[int, ...]  # a-components of the greedy simple sequence

    @property
    def inf(self) -> int:
        return self.delta

    @property
    def sup(self) -> int:
        return self.delta + len(self.factors)


class CategoryContext:
    """
    Frozen computational context for C_p^q over a given interval lattice.

    All morphism-level operations live here; simples are plain (a,b) id
    pairs and morphisms are Morphism triples, so both hash cheaply.
    """

    def __init__(self, lat: IntervalLattice, p: int, q: int):
        self.lat = lat
        self.p = p
        self.q = q
        self.eta = compute_eta(p, q)
        self._phi_cache: dict[int, np.ndarray] = {}
        base = np.arange(lat.size, dtype=np.int32)
        perm = base
        for _ in range(abs(self.eta)):
            perm = lat.conj_c[perm] if self.eta > 0 else self._inv_conj()[perm]
        self._phi_cache[1] = perm
        self._phi_cache[0] = base
        qperm = base
        for _ in range(q):
            qperm = lat.conj_c[qperm]
        self.fixed_q = qperm == base
        self.objects: list[int] = divided_objects(lat, p, q)
        self.object_set = frozenset(self.objects)
        if not self.objects:
            raise IntegrityError(f"no objects for (p,q)=({p},{q})")
        self._div: dict[int, tuple[int, ...]] = {}
        self._meet_cache: dict[tuple[int, int], int] = {}
        self._comp_cache: dict[tuple[int, int], int] = {}
        self._prod_cache: dict[tuple[int, int], int | None] = {}
        self._st_cache: dict[Simple, tuple[int, int]] = {}
        self._greedy_cache: dict[tuple[Simple, Simple], tuple[Simple, Simple]] = {}
        self._atoms: dict[int, list[Simple]] = {}
        self._simples_at: dict[int, list[Simple]] = {}

    def _inv_conj(self) -> np.ndarray:
        inv = np.empty_like(self.lat.conj_c)
        inv[self.lat.conj_c] = np.arange(self.lat.size, dtype=np.int32)
        return inv

    # -- interval helpers ---------------------------------------------------

    def phi_pow(self, k: int) -> np.ndarray:
        """Permutation of interval ids realizing x ↦ x^{c^{kη}} (= φ_p^k)."""
        k %= self.q
        if k not in self._phi_cache:
            self._phi_cache[k] = self._phi_cache[1][self.phi_pow(k - 1)]
        return self._phi_cache[k]

    def phi(self, x: int, k: int = 1) -> int:
        return int(self.phi_pow(k)[x])

    def divisors(self, x: int) -> tuple[int, ...]:
        out = self._div.get(x)
        if out is None:
            out = self._div[x] = tuple(int(i) for i in self.lat.divisor_ids(x))
        return out

    def meet(self, x: int, y: int) -> int:
        if x == y:
            return x
        key = (x, y) if x < y else (y, x)
        out = self._meet_cache.get(key)
        if out is None:
            common = set(self.divisors(x)) & set(self.divisors(y))
            lengths = self.lat.lengths
            best = max(common, key=lambda i: int(lengths[i]))
            if sum(1 for i in common if lengths[i] == lengths[best]) != 1:
                raise IntegrityError(f"meet({x},{y}) not unique")
            out = self._meet_cache[key] = best
        return out

    def comp(self, v: int, w: int) -> int:
        """Left complement v⁻¹w for v ⪯ w."""
        key = (v, w)
        out = self._comp_cache.get(key)
        if out is None:
            out = self._comp_cache[key] = self.lat.complement_left(v, w)
        return out

    def prod(self, a: int, b: int) -> int | None:
        key = (a, b)
        if key not in self._prod_cache:
            self._prod_cache[key] = self.lat.product_id(a, b)
        return self._prod_cache[key]

    def conj_elem(self, x: int, g: int) -> int:
        """Interval id of g⁻¹xg (must stay inside the interval)."""
        lat = self.lat
        arr = scaled_product(
            scaled_product(lat.mats[g].T, lat.mats[x], lat.scale), lat.mats[g], lat.scale
        )
        out = lat.id_of_arr(arr)
        if out is None:
            raise IntegrityError("conjugate left the interval")
        return out

    # -- simples ------------------------------------------------------------

    def source_target(self, s: Simple) -> tuple[int, int]:
        """(source, target) = (ab, b·φ^η(a)); both must be objects."""
        out = self._st_cache.get(s)
        if out is None:
            a, b = s
            src = self.prod(a, b)
            tgt = self.prod(b, self.phi(a))
            if src not in self.object_set or tgt not in self.object_set:
                raise IntegrityError(f"simple {s} does not join two objects")
            out = self._st_cache[s] = (src, tgt)
        return out

    def is_simple(self, s: Simple) -> bool:
        a, b = s
        if not (self.fixed_q[a] and self.fixed_q[b]):
            return False
        src = self.prod(a, b)
        return (
            src in self.object_set
            and self.lat.lengths[a] + self.lat.lengths[b] == self.lat.lengths[src]
        )

    def identity_simple(self, u: int) -> Simple:
        return (0, u)

    def delta_simple(self, u: int) -> Simple:
        return (u, 0)

    def bar(self, s: Simple) -> Simple:
        """The right complement: s · bar(s) = Δ(source s)."""
        a, b = s
        return (b, self.phi(a))

    def simple_length(self, s: Simple) -> int:
        return int(self.lat.lengths[s[0]])

    def simples_at(self, u: int) -> list[Simple]:
        """All simples with source u, ordered by a-component id."""
        out = self._simples_at.get(u)
        if out is None:
            out = [
                (a, self.comp(a, u))
                for a in self.divisors(u)
                if self.fixed_q[a] and self.fixed_q[self.comp(a, u)]
            ]
            self._simples_at[u] = out
        return out

    def atoms_of(self, u: int) -> list[Simple]:
        """
        Atoms with source u: simples (a,b) whose a admits no proper
        nontrivial c^q-fixed divisor.  When conjugation by c^q is trivial
        these are exactly the length-1 simples.
        """
        out = self._atoms.get(u)
        if out is None:
            out = []
            for a, b in self.simples_at(u):
                if a == 0:
                    continue
                if any(d not in (0, a) and self.fixed_q[d] for d in self.divisors(a)):
                    continue
                out.append((a, b))
            self._atoms[u] = out
        return out

    def left_divides_simple(self, s: Simple, t: Simple) -> bool:
        """s ⪯ t among simples with equal source: a-component divisibility."""
        if self.source_target(s)[0] != self.source_target(t)[0]:
            raise ValueError("comparing simples with different sources")
        return self.lat.divides(s[0], t[0])

    # -- greedy normalization ----------------------------------------------

    def composable(self, s: Simple, t: Simple) -> bool:
        return self.source_target(s)[1] == self.source_target(t)[0]

    def is_greedy(self, s: Simple, t: Simple) -> bool:
        """(a,b)(α,β) is left-weighted iff b ∧ α = 1."""
        if not self.composable(s, t):
            raise ValueError("factors not composable")
        return self.meet(t[0], s[1]) == 0

    def greedy_step(self, s: Simple, t: Simple) -> tuple[Simple, Simple]:
        """
        One left-weighting step: with d = α ∧ b,
        (a,b)(α,β) = (ad, d⁻¹b)(d⁻¹α, β·φ^η(d)).  Identity on greedy pairs.
        """
        key = (s, t)
        out = self._greedy_cache.get(key)
        if out is None:
            if not self.composable(s, t):
                raise ValueError("factors not composable")
            a, b = s
            alpha, beta = t
            d = self.meet(alpha, b)
            if d == 0:
                out = (s, t)
            else:
                ad = self.prod(a, d)
                new_s = (ad, self.comp(d, b))
                new_t = (self.comp(d, alpha), self.prod(beta, self.phi(d)))
                out = (new_s, new_t)
            self._greedy_cache[key] = out
        return out

    def normalize_pairs(
        self, source: int, delta: int, pairs: Iterable[Simple]
    ) -> Morphism:
        """
        Left-weighted form of Δ^delta · (pairs) based at source: greedy
        passes to a fixpoint, identity factors dropped, leading Δ's absorbed
        into the power.
        """
        work = [p for p in pairs if p[0] != 0]
        if work:
            expected = self.phi_obj(source, delta)
            if self.source_target(work[0])[0] != expected:
                raise ValueError("word does not start at the stated source")
        changed = True
        while changed:
            changed = False
            for i in range(len(work) - 1):
                s2, t2 = self.greedy_step(work[i], work[i + 1])
                if (s2, t2) != (work[i], work[i + 1]):
                    work[i], work[i + 1] = s2, t2
                    changed = True
            if changed:
                work = [p for p in work if p[0] != 0]
        while work and work[0][1] == 0:
            delta += 1
            work.pop(0)
        return Morphism(source, delta, tuple(a for a, _ in work))

    def phi_obj(self, u: int, k: int = 1) -> int:
        """Object action of φ_p^k (u ↦ u^{c^{kη}})."""
        return self.phi(u, k % self.q)

    def factor_pairs(self, f: Morphism) -> list[Simple]:
        """Recover the (a,b) factor pairs of a morphism from its a-ids."""
        v = self.phi_obj(f.source, f.delta)
        out = []
        for a in f.factors:
            b = self.comp(a, v)
            out.append((a, b))
            v = self.source_target((a, b))[1]
        return out

    def target(self, f: Morphism) -> int:
        v = self.phi_obj(f.source, f.delta)
        for a in f.factors:
            v = self.source_target((a, self.comp(a, v)))[1]
        return v

    # -- morphism arithmetic -------------------------------------------------

    def identity_morphism(self, u: int) -> Morphism:
        return Morphism(u, 0, ())

    def delta_morphism(self, u: int, k: int = 1) -> Morphism:
        return Morphism(u, k, ())

    def simple_morphism(self, s: Simple) -> Morphism:
        src = self.source_target(s)[0]
        return self.normalize_pairs(src, 0, [s])

    def phi_morphism(self, f: Morphism, k: int = 1) -> Morphism:
        perm = self.phi_pow(k % self.q)
        return Morphism(int(perm[f.source]), f.delta, tuple(int(perm[a]) for a in f.factors))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """Δ^a F · Δ^b G = Δ^{a+b} · φ_p^b(F) · G, then re-normalized."""
        if self.target(f) != g.source:
            raise ValueError("morphisms not composable")
        f_pairs = self.factor_pairs(f)
        if g.delta % self.q:
            perm = self.phi_pow(g.delta % self.q)
            f_pairs = [(int(perm[a]), int(perm[b])) for a, b in f_pairs]
        g_pairs = self.factor_pairs(g)
        return self.normalize_pairs(f.source, f.delta + g.delta, f_pairs + g_pairs)

    def inverse(self, f: Morphism) -> Morphism:
        """Groupoid inverse: reverse the complements, negate the Δ-power."""
        pairs = self.factor_pairs(f)
        out = self.identity_morphism(self.target(f))
        for s in reversed(pairs):
            # s⁻¹ = Δ⁻¹ · φ_p⁻¹(bar(s)), a morphism from target(s) to source(s)
            tgt = self.source_target(s)[1]
            back = self.phi_morphism(self.simple_morphism(self.bar(s)), -1)
            inv_s = self.compose(self.delta_morphism(tgt, -1), back)
            out = self.compose(out, inv_s)
        return self.compose(out, self.delta_morphism(self.phi_obj(f.source, f.delta), -f.delta))

    def word_morphism(self, u: int, simples: Sequence[Simple]) -> Morphism:
        return self.normalize_pairs(u, 0, list(simples))

    def power(self, f: Morphism, k: int) -> Morphism:
        if k < 0:
            return self.power(self.inverse(f), -k)
        out = self.identity_morphism(f.source)
        base = f
        while k:
            if k & 1:
                out = self.compose(out, base)
            if k > 1:
                base = self.compose(base, base)
            k >>= 1
        return out

    def conjugate(self, x: Morphism, g: Morphism) -> Morphism:
        """g⁻¹ · x · g (x an endomorphism at g's source)."""
        return self.compose(self.compose(self.inverse(g), x), g)

    def is_endomorphism(self, f: Morphism) -> bool:
        return self.target(f) == f.source

    def is_positive(self, f: Morphism) -> bool:
        return f.delta >= 0

    # -- sharp / flat / loops ------------------------------------------------

    def sharp(self, s: Simple) -> Simple:
        """s^# = (a^{c^η b⁻¹}, b): the unique simple making s·s^# greedy-tight."""
        a, b = s
        lat = self.lat
        t = self.phi(a)
        arr = scaled_product(
            scaled_product(lat.mats[b], lat.mats[t], lat.scale), lat.mats[b].T, lat.scale
        )
        new_a = lat.id_of_arr(arr)
        if new_a is None:
            raise IntegrityError("sharp left the interval")
        return (new_a, b)

    def flat(self, s: Simple) -> Simple:
        """s^♭ = (a^{bc^{−η}}, b): inverse of sharp."""
        a, b = s
        return (self._phi_neg(self.conj_elem(a, b)), b)

    def _phi_neg(self, x: int) -> int:
        """φ^{−η}-action on interval ids (inverse of self.phi(·, 1))."""
        perm = self.phi_pow(1)
        inv = getattr(self, "_phi_inv", None)
        if inv is None:
            inv = np.empty_like(perm)
            inv[perm] = np.arange(self.lat.size, dtype=np.int32)
            self._phi_inv = inv
        return int(inv[x])

    def atomic_loop(self, s: Simple) -> Morphism:
        """λ(s) = s·s^#·s^{##}⋯ until the sharp-orbit closes; a rigid loop."""
        factors = [s]
        t = self.sharp(s)
        while t != s:
            factors.append(t)
            t = self.sharp(t)
            if len(factors) > 10 * self.q:
                raise ResourceLimitError("sharp orbit failed to close")
        src = self.source_target(s)[0]
        out = self.normalize_pairs(src, 0, factors)
        if len(out.factors) != len(factors) or out.delta != 0:
            raise IntegrityError("atomic loop was not already left-weighted")
        return out

    def atomic_loops(self, u: int) -> list[Morphism]:
        """The atomic loops of u, one per atom, ordered by the atom table."""
        return [self.atomic_loop(s) for s in self.atoms_of(u)]

    def is_rigid(self, x: Morphism) -> bool:
        """Endomorphism whose final·initial factor pair (after φ^{−Δ}) is greedy."""
        if not self.is_endomorphism(x):
            raise ValueError("rigidity is for endomorphisms")
        if not x.factors:
            return True
        pairs = self.factor_pairs(x)
        wrap = self.phi_morphism(self.simple_morphism(pairs[0]), (-x.delta) % self.q)
        wrap_pair = self.factor_pairs(wrap)
        if not wrap_pair:  # initial factor was Δ itself
            return True
        return self.is_greedy(pairs[-1], wrap_pair[0])

    # -- cycling, decycling, super summit sets -------------------------------

    def cycling(self, x: Morphism) -> Morphism:
        if not self.is_endomorphism(x):
            raise ValueError("cycling needs an endomorphism")
        if not x.factors:
            return x
        pairs = self.factor_pairs(x)
        conj = self.phi_morphism(self.simple_morphism(pairs[0]), (-x.delta) % self.q)
        return self.conjugate(x, conj)

    def decycling(self, x: Morphism) -> Morphism:
        if not self.is_endomorphism(x):
            raise ValueError("decycling needs an endomorphism")
        if not x.factors:
            return x
        pairs = self.factor_pairs(x)
        conj = self.inverse(self.simple_morphism(pairs[-1]))
        return self.conjugate(x, conj)

    def super_summit_set(self, x: Morphism, cap: int = 1_000_000) -> list[Morphism]:
        """
        All conjugates of x with maximal inf and minimal sup, found by
        cycling/decycling to a representative and closing under conjugation
        by simples.  Deterministic order; ResourceLimitError past `cap`.
        """
        if not self.is_endomorphism(x):
            raise ValueError("super summit sets need endomorphisms")
        y = x
        trajectory = {y}
        while True:  # cycle: inf is maximal once the orbit closes without gain
            z = self.cycling(y)
            if z.inf > y.inf:
                trajectory = {z}
            elif z in trajectory:
                y = z
                break
            else:
                trajectory.add(z)
            y = z
        trajectory = {y}
        while True:  # decycle: sup is minimal once the orbit closes without gain
            z = self.decycling(y)
            if z.sup < y.sup:
                trajectory = {z}
            elif z in trajectory:
                y = z
                break
            else:
                trajectory.add(z)
            y = z
        best_inf, best_sup = y.inf, y.sup
        frontier = [y]
        out = {y}
        while frontier:
            nxt = []
            for m in frontier:
                for s in self.simples_at(m.source):
                    if s[0] == 0:
                        continue
                    z = self.conjugate(m, self.simple_morphism(s))
                    if (z.inf, z.sup) == (best_inf, best_sup) and z not in out:
                        out.add(z)
                        nxt.append(z)
                        if len(out) > cap:
                            raise ResourceLimitError("super summit closure exceeded cap")
            frontier = nxt
        return sorted(out)

    # -- lifting and centrality ----------------------------------------------

    def lift_word(self, s: Simple, letters: Sequence[int]) -> list[Simple]:
        """
        The unique simple path with the given a-components composing to s.
        Letters must be c^q-fixed, length-additive, with product a.
        """
        a, b = s
        if not letters:
            raise ValueError("empty word cannot express a nontrivial simple")
        acc = letters[0]
        total = int(self.lat.lengths[letters[0]])
        for x in letters[1:]:
            nxt = self.prod(acc, x)
            if nxt is None:
                raise ValueError("letters do not multiply inside the interval")
            acc = nxt
            total += int(self.lat.lengths[x])
        if acc != a or total != int(self.lat.lengths[a]):
            raise ValueError("word does not express the simple's a-component")
        if any(not self.fixed_q[x] for x in letters):
            raise ValueError("letters are not c^q-fixed")
        path = []
        v = self.source_target(s)[0]
        for x in letters:
            t = (x, self.comp(x, v))
            path.append(t)
            v = self.source_target(t)[1]
        return path

    def is_central(self, assignment: dict[int, Morphism]) -> bool:
        """
        Whether an object-indexed family z_u of endomorphisms is central:
        z_u · f = f · z_v for every atom f: u → v.
        """
        for u in self.objects:
            if u not in assignment:
                raise ValueError("family must cover every object")
            if not self.is_endomorphism(assignment[u]) or assignment[u].source != u:
                raise ValueError("family entries must be endomorphisms at their keys")
        for u in self.objects:
            for s in self.atoms_of(u):
                v = self.source_target(s)[1]
                f = self.simple_morphism(s)
                left = self.compose(assignment[u], f)
                right = self.compose(f, assignment[v])
                if left != right:
                    return False
        return True
