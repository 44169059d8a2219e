"""
presentation: presentations of categories/groupoids and the rewriting
toolbox used to turn vertex groups into explicit group presentations.

Words over a label alphabet come in two flavors:
- signed words: tuples of (label, ±1), used for groupoid paths and group
  relators;
- positive words: plain tuples of labels, used in the positive monoids H⁺.

The pipeline implemented here:
  1. hurwitz_presentation: atoms of a periodic category + all commuting
     squares of atoms whose collapses agree inside the interval.
  2. schreier_transversal / reidemeister_schreier: a prefix-closed tree of
     groupoid paths and the induced presentation of the vertex group at the
     root (generators γ(s) = m_src · s · m_tgt⁻¹, tree arrows dying).
  3. tietze_eliminate: generator elimination by single-occurrence relators.
  4. complement_table: shortest common right-multiples of loop generators by
     breadth-first search (lexicographically least witnesses), giving a
     right-complemented presentation a·θ(a,b) = b·θ(b,a).
  5. word_problem_positive / SaturationCache: the word problem in the
     homogeneous positive monoid by saturation.
  6. right_reverse: rewrite a signed word into a right fraction f·g⁻¹ using
     the complements, with optional left-fraction simplification.
  7. fraction_trivial: certify f·g⁻¹ = 1 in the enveloping group by finding
     n with f·n ≡ g·n (the monoid need not be cancellative).
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import deque
from typing import Callable, Iterable, Sequence

from .exactalg import ResourceLimitError
from .garside import CategoryContext, Morphism

Letter = tuple  # (label, +1 | -1)
Word = tuple    # of Letter
PosWord = tuple  # of labels


class DivergenceError(RuntimeError):
    """Right-reversing exceeded its step cap without terminating."""


class UndecidedError(RuntimeError):
    """The bounded search certified nothing (not a proof of inequality)."""


class EliminationStuckError(RuntimeError):
    """No relator can eliminate any further non-kept generator."""


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def free_reduce(word: Word) -> Word:
    out: list[Letter] = []
    for lbl, e in word:
        if out and out[-1][0] == lbl and out[-1][1] == -e:
            out.pop()
        else:
            out.append((lbl, e))
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple((lbl, -e) for lbl, e in reversed(word))


def signed(pos: PosWord) -> Word:
    return tuple((lbl, 1) for lbl in pos)


# ---------------------------------------------------------------------------
# Graphs and presentations
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Arrow:
    label: object
    source: object
    target: object


@dataclasses.dataclass
class OrientedGraph:
    objects: list
    arrows: list[Arrow]

    def __post_init__(self):
        objs = set(self.objects)
        labels = set()
        for a in self.arrows:
            if a.source not in objs or a.target not in objs:
                raise ValueError(f"arrow {a.label} has endpoints outside the object set")
            if a.label in labels:
                raise ValueError(f"duplicate arrow label {a.label}")
            labels.add(a.label)
        self._by_label = {a.label: a for a in self.arrows}

    def arrow(self, label) -> Arrow:
        return self._by_label[label]

    def endpoints(self, word: Word, source=None) -> tuple[object, object]:
        """Source and target of a path word (letters must chain)."""
        cur = source
        first = None
        for lbl, e in word:
            a = self.arrow(lbl)
            frm, to = (a.source, a.target) if e == 1 else (a.target, a.source)
            if cur is not None and cur != frm:
                raise ValueError("word is not a composable path")
            if first is None:
                first = frm
            cur = to
        if first is None:  # empty path
            return source, source
        return first, cur


@dataclasses.dataclass
class GroupoidPresentation:
    graph: OrientedGraph
    relations: list[tuple[Word, Word]]

    def __post_init__(self):
        for lhs, rhs in self.relations:
            s1, t1 = self.graph.endpoints(lhs)
            s2, t2 = self.graph.endpoints(rhs)
            if (s1, t1) != (s2, t2):
                raise ValueError("relation sides are not parallel paths")


@dataclasses.dataclass
class GroupPresentation:
    generators: list
    relators: list[Word]

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            if any(lbl not in gens for lbl, _ in r):
                raise ValueError("relator uses an undeclared generator")


@dataclasses.dataclass
class PositivePresentation:
    """A homogeneous positive presentation: relation sides of equal length."""

    generators: list
    relations: list[tuple[PosWord, PosWord]]

    def __post_init__(self):
        for lhs, rhs in self.relations:
            if len(lhs) != len(rhs):
                raise ValueError("presentation is not homogeneous")

    def as_group_presentation(self) -> GroupPresentation:
        relators = [
            free_reduce(signed(lhs) + invert_word(signed(rhs)))
            for lhs, rhs in self.relations
        ]
        return GroupPresentation(list(self.generators), relators)


@dataclasses.dataclass
class SchreierTransversal:
    root: object
    paths: dict[object, Word]


@dataclasses.dataclass
class ComplementTable:
    """θ with a·θ(a,b) = b·θ(b,a), one complement pair per unordered pair."""

    labels: list
    theta: dict[tuple[object, object], PosWord]

    def presentation(self) -> PositivePresentation:
        relations = []
        for i, a in enumerate(self.labels):
            for b in self.labels[i + 1:]:
                relations.append(((a,) + self.theta[(a, b)], (b,) + self.theta[(b, a)]))
        return PositivePresentation(list(self.labels), relations)


# ---------------------------------------------------------------------------
# Hurwitz presentation of a periodic category
# ---------------------------------------------------------------------------

def hurwitz_presentation(ctx: CategoryContext) -> GroupoidPresentation:
    """
    Generators: all atoms (labels = their (a,b) id pairs).  Relations: all
    squares st = στ of composable atom paths with the same length-additive
    collapse in the interval.  Each emitted relation is verified by
    normalize.
    """
    arrows = []
    for u in ctx.objects:
        for s in ctx.atoms_of(u):
            src, tgt = ctx.source_target(s)
            arrows.append(Arrow(s, src, tgt))
    graph = OrientedGraph(list(ctx.objects), arrows)
    relations: list[tuple[Word, Word]] = []
    lengths = ctx.lat.lengths
    for u in ctx.objects:
        by_collapse: dict[int, list[tuple]] = {}
        for s in ctx.atoms_of(u):
            v = ctx.source_target(s)[1]
            for t in ctx.atoms_of(v):
                w = ctx.prod(s[0], t[0])
                if w is None:
                    continue
                if lengths[w] != lengths[s[0]] + lengths[t[0]]:
                    continue
                by_collapse.setdefault(w, []).append((s, t))
        for w in sorted(by_collapse):
            paths = by_collapse[w]
            for p1, p2 in itertools.combinations(paths, 2):
                m1 = ctx.word_morphism(u, list(p1))
                m2 = ctx.word_morphism(u, list(p2))
                if m1 != m2:
                    raise AssertionError("collapse-equal square failed to commute")
                relations.append((signed(p1), signed(p2)))
    return GroupoidPresentation(graph, relations)


# ---------------------------------------------------------------------------
# Schreier transversals and Reidemeister-Schreier
# ---------------------------------------------------------------------------

def schreier_transversal(
    graph: OrientedGraph, root, must_include: Sequence = ()
) -> SchreierTransversal:
    """
    Breadth-first prefix-closed tree of paths from root, seeded so that each
    arrow label in must_include (all with source = root, pairwise distinct
    targets ≠ root) is itself the transversal path to its target.
    """
    seeds = [graph.arrow(lbl) for lbl in must_include]
    targets = [a.target for a in seeds]
    if any(a.source != root for a in seeds):
        raise ValueError("must_include arrows must start at the root")
    if len(set(targets)) != len(targets) or root in targets:
        raise ValueError("must_include arrows must have distinct non-root targets")
    paths: dict[object, Word] = {root: ()}
    queue = deque([root])
    for a in seeds:
        paths[a.target] = ((a.label, 1),)
        queue.append(a.target)
    while queue:
        cur = queue.popleft()
        base = paths[cur]
        for a in graph.arrows:
            if a.source == cur and a.target not in paths:
                paths[a.target] = base + ((a.label, 1),)
                queue.append(a.target)
            elif a.target == cur and a.source not in paths:
                paths[a.source] = base + ((a.label, -1),)
                queue.append(a.source)
    if len(paths) != len(graph.objects):
        raise ValueError("graph is not connected")
    return SchreierTransversal(root, paths)


def reidemeister_schreier(
    pres: GroupoidPresentation, transversal: SchreierTransversal
) -> GroupPresentation:
    """
    Presentation of the vertex group at the transversal's root.  Generators
    are the labels s whose loop γ(s) = m_src·s·m_tgt⁻¹ is not freely
    trivial; each groupoid relation w₁ = w₂ contributes the γ-image of
    m·w₁·w₂⁻¹·m⁻¹ with trivial γ's removed.
    """
    graph = pres.graph
    trivial = set()
    generators = []
    for a in graph.arrows:
        loop = free_reduce(
            transversal.paths[a.source]
            + ((a.label, 1),)
            + invert_word(transversal.paths[a.target])
        )
        if loop:
            generators.append(a.label)
        else:
            trivial.add(a.label)
    relators = []
    seen = set()
    for lhs, rhs in pres.relations:
        source, _ = graph.endpoints(lhs)
        loop = transversal.paths[source] + lhs + invert_word(rhs) + invert_word(
            transversal.paths[source]
        )
        rel = free_reduce(tuple((lbl, e) for lbl, e in loop if lbl not in trivial))
        if rel and rel not in seen:
            seen.add(rel)
            relators.append(rel)
    return GroupPresentation(generators, relators)


# ---------------------------------------------------------------------------
# Tietze elimination (generator reduction)
# ---------------------------------------------------------------------------

def cyclic_reduce(word: Word) -> Word:
    """Cyclically reduced representative: trim matching x…x⁻¹ conjugation."""
    w = free_reduce(word)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = free_reduce(w[1:-1])
    return w


def _relator_canonical(word: Word) -> Word:
    """Least rotation among the cyclic reduction and its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    return min(
        base[i:] + base[:i]
        for base in (w, invert_word(w))
        for i in range(len(base))
    )


def tietze_eliminate(pres: GroupPresentation, keep: Iterable) -> GroupPresentation:
    """
    Repeatedly pick the shortest relator (ties by index) containing exactly
    one occurrence of exactly one non-kept generator, solve for that
    generator, substitute it away, and drop both.  Relators are kept
    cyclically reduced and deduplicated up to rotation and inversion, which
    keeps the substitution cascade from inflating them.  Raises
    EliminationStuckError when non-kept generators remain but no relator is
    eligible.
    """
    keep_set = set(keep)
    gens = list(pres.generators)
    relators = []
    seen = set()
    for r in pres.relators:
        c = _relator_canonical(r)
        if c and c not in seen:
            seen.add(c)
            relators.append(c)
    while any(g not in keep_set for g in gens):
        choice = None
        for ri, r in enumerate(relators):
            outside = [i for i, (lbl, _) in enumerate(r) if lbl not in keep_set]
            if len(outside) == 1 and (choice is None or len(r) < len(relators[choice[0]])):
                choice = (ri, outside[0])
        if choice is None:
            raise EliminationStuckError(
                f"cannot eliminate {[g for g in gens if g not in keep_set]}"
            )
        ri, pos = choice
        r = relators[ri]
        lbl, e = r[pos]
        prefix, suffix = r[:pos], r[pos + 1:]
        # p·a^e·q = 1  ⇒  a^e = p⁻¹q⁻¹  ⇒  a = (p⁻¹q⁻¹)^e
        expr = invert_word(prefix) + invert_word(suffix)
        if e == -1:
            expr = invert_word(expr)
        expr = free_reduce(expr)
        replacement = {1: expr, -1: invert_word(expr)}
        new_relators = []
        seen = set()
        for i, other in enumerate(relators):
            if i == ri:
                continue
            out: list[Letter] = []
            for l2, e2 in other:
                out.extend(replacement[e2] if l2 == lbl else [(l2, e2)])
            red = _relator_canonical(tuple(out))
            if red and red not in seen:
                seen.add(red)
                new_relators.append(red)
        relators = new_relators
        gens.remove(lbl)
    return GroupPresentation(gens, relators)


# ---------------------------------------------------------------------------
# Positive word problem by saturation
# ---------------------------------------------------------------------------

class SaturationCache:
    """
    Saturation sets of positive words under a homogeneous presentation,
    shared across queries: the closure of a word is cached for every word
    in it.
    """

    def __init__(self, pres: PositivePresentation):
        self.pres = pres
        rules: list[tuple[PosWord, PosWord]] = []
        for lhs, rhs in pres.relations:
            if lhs != rhs:
                rules.append((lhs, rhs))
                rules.append((rhs, lhs))
        self._rules_by_len: dict[int, list[tuple[PosWord, PosWord]]] = {}
        for lhs, rhs in rules:
            self._rules_by_len.setdefault(len(lhs), []).append((lhs, rhs))
        self._closures: dict[PosWord, frozenset] = {}
        self._strips: dict[tuple, PosWord | None] = {}

    def closure(self, w: PosWord) -> frozenset:
        w = tuple(w)
        hit = self._closures.get(w)
        if hit is not None:
            return hit
        seen = {w}
        queue = [w]
        while queue:
            cur = queue.pop()
            n = len(cur)
            for plen, rules in self._rules_by_len.items():
                for i in range(n - plen + 1):
                    window = cur[i:i + plen]
                    for lhs, rhs in rules:
                        if window == lhs:
                            new = cur[:i] + rhs + cur[i + plen:]
                            if new not in seen:
                                seen.add(new)
                                queue.append(new)
        out = frozenset(seen)
        for member in out:
            self._closures[member] = out
        return out

    def equal(self, w1: PosWord, w2: PosWord) -> bool:
        if len(w1) != len(w2):
            return False
        return tuple(w2) in self.closure(w1)

    def equal_bounded(self, w1: PosWord, w2: PosWord, limit: int) -> bool:
        """
        Like equal, but explores at most `limit` words and leaves the
        closure cache untouched (transient queries stay memory-flat).  True
        answers are exact; False may mean "not found within the budget".
        """
        w1, w2 = tuple(w1), tuple(w2)
        if len(w1) != len(w2):
            return False
        if w1 == w2:
            return True
        full = self._closures.get(w1)
        if full is not None:
            return w2 in full
        seen = {w1}
        queue = deque([w1])
        while queue and len(seen) <= limit:
            cur = queue.popleft()
            n = len(cur)
            for plen, rules in self._rules_by_len.items():
                for i in range(n - plen + 1):
                    window = cur[i:i + plen]
                    for lhs, rhs in rules:
                        if window == lhs:
                            new = cur[:i] + rhs + cur[i + plen:]
                            if new == w2:
                                return True
                            if new not in seen:
                                seen.add(new)
                                queue.append(new)
        return False

    def _strip_search(self, w: PosWord, x, end: int, limit: int) -> PosWord | None:
        """
        Witness search: a word w' with w ≡ x·w' (end = 0) or w ≡ w'·x
        (end = -1).  Breadth-first over single relation applications, capped
        at `limit` explored words; a miss past the cap returns None, which
        only costs a simplification opportunity, never soundness.
        """
        w = tuple(w)
        if not w:
            return None
        key = (w, x, end, limit)
        if key in self._strips:
            return self._strips[key]
        # Breadth-first order fixes *which* equivalent stripped word comes
        # back; downstream reversing is sensitive to that choice, so the
        # order must not depend on whether the class happens to be cached.
        result = None
        seen = {w}
        queue = deque([w])
        while queue:
            cur = queue.popleft()
            if cur[end] == x:
                result = cur[1:] if end == 0 else cur[:-1]
                break
            if len(seen) > limit:
                break
            n = len(cur)
            for plen, rules in self._rules_by_len.items():
                for i in range(n - plen + 1):
                    window = cur[i:i + plen]
                    for lhs, rhs in rules:
                        if window == lhs:
                            new = cur[:i] + rhs + cur[i + plen:]
                            if new not in seen:
                                seen.add(new)
                                queue.append(new)
        self._strips[key] = result
        return result

    def strip_leading(self, w: PosWord, x, limit: int = 4000) -> PosWord | None:
        """Some w' with w ≡ x·w', if the letter x left-divides w."""
        return self._strip_search(w, x, 0, limit)

    def strip_trailing(self, w: PosWord, x, limit: int = 4000) -> PosWord | None:
        """Some w' with w ≡ w'·x, if the letter x right-divides w."""
        return self._strip_search(w, x, -1, limit)


def word_problem_positive(
    pres: PositivePresentation, w1: PosWord, w2: PosWord
) -> bool:
    """Equality in the positive monoid of a homogeneous presentation."""
    return SaturationCache(pres).equal(tuple(w1), tuple(w2))


# ---------------------------------------------------------------------------
# Complement tables (shortest common right-multiples of loops)
# ---------------------------------------------------------------------------

def complement_table(
    ctx: CategoryContext,
    loops: Sequence[tuple[object, Morphism]],
    cap: int = 6,
) -> ComplementTable:
    """
    For each unordered pair of the given loop generators, search positive
    loop words by increasing common length i for λ(a)·m₁ = λ(b)·m₂; take
    the lexicographically least m₁ (label order = input order) and then the
    least matching m₂.  θ(a,b) = m₁, θ(b,a) = m₂.
    """
    labels = [lbl for lbl, _ in loops]
    morphs = [m for _, m in loops]
    n = len(loops)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    unresolved = set(pairs)
    theta: dict[tuple[object, object], PosWord] = {}
    # ext[k] maps index-words of the current length to λ(k)·word, built in
    # lexicographic generation order (dicts preserve it).
    ext: list[dict[tuple[int, ...], Morphism]] = [{(): m} for m in morphs]
    length = 0
    while unresolved:
        for i, j in sorted(unresolved):
            right = {}
            for w, m in ext[j].items():
                if m not in right:
                    right[m] = w
            hit = None
            for w, m in ext[i].items():
                if m in right:
                    hit = (w, right[m])
                    break
            if hit is not None:
                theta[(labels[i], labels[j])] = tuple(labels[k] for k in hit[0])
                theta[(labels[j], labels[i])] = tuple(labels[k] for k in hit[1])
                unresolved.discard((i, j))
        if not unresolved:
            break
        length += 1
        if length > cap:
            missing = sorted((labels[i], labels[j]) for i, j in unresolved)
            raise ResourceLimitError(
                f"no common multiple within length {cap} for pairs {missing}"
            )
        ext = [
            {
                w + (k,): ctx.compose(m, morphs[k])
                for w, m in table.items()
                for k in range(n)
            }
            for table in ext
        ]
    return ComplementTable(labels, theta)


# ---------------------------------------------------------------------------
# Right-reversing and fraction certification
# ---------------------------------------------------------------------------

class DivisibilityOracle:
    """
    Sound negative filters for letter divisibility in the positive monoid.
    The default answers are always True (no filtering); a caller with an
    ambient cancellative category can rule out divisibilities cheaply,
    sparing the word-level witness searches below.
    """

    def may_left_divide(self, x, w: PosWord) -> bool:
        return True

    def may_right_divide(self, x, w: PosWord) -> bool:
        return True


class CategoryOracle(DivisibilityOracle):
    """
    Divisibility filter through the ambient category: a letter can divide a
    word in the monoid only if its loop divides the word's image morphism
    (the category is cancellative, so the image test is exact there; the
    monoid may still refuse the divisibility, which the witness search then
    detects).  Also doubles as a word evaluator for image-equality checks.
    """

    def __init__(self, ctx: CategoryContext, loops: Sequence[tuple[object, Morphism]]):
        self.ctx = ctx
        self.morph = dict(loops)
        self.inv = {lbl: ctx.inverse(m) for lbl, m in loops}
        source = ctx.source_target(ctx.factor_pairs(loops[0][1])[0])[0]
        self._eval: dict[PosWord, Morphism] = {(): ctx.identity_morphism(source)}
        self._memo: dict[tuple, bool] = {}

    def evaluate(self, w: PosWord) -> Morphism:
        w = tuple(w)
        hit = self._eval.get(w)
        if hit is None:
            hit = self.ctx.compose(self.evaluate(w[:-1]), self.morph[w[-1]])
            self._eval[w] = hit
        return hit

    def image_equal(self, w1: PosWord, w2: PosWord) -> bool:
        return self.evaluate(w1) == self.evaluate(w2)

    def may_left_divide(self, x, w: PosWord) -> bool:
        key = (0, x, tuple(w))
        hit = self._memo.get(key)
        if hit is None:
            m = self.ctx.compose(self.inv[x], self.evaluate(w))
            hit = self._memo[key] = self.ctx.is_positive(m)
        return hit

    def may_right_divide(self, x, w: PosWord) -> bool:
        key = (1, x, tuple(w))
        hit = self._memo.get(key)
        if hit is None:
            m = self.ctx.compose(self.evaluate(w), self.inv[x])
            hit = self._memo[key] = self.ctx.is_positive(m)
        return hit


def _strip_pair(
    neg: tuple,
    pos: tuple,
    cache: SaturationCache,
    oracle: DivisibilityOracle,
    limit: int,
) -> tuple[tuple, tuple]:
    """Cancel common left-divisor letters of the left fraction neg⁻¹·pos."""
    changed = True
    while changed and neg and pos:
        changed = False
        for x in cache.pres.generators:
            if not (oracle.may_left_divide(x, neg) and oracle.may_left_divide(x, pos)):
                continue
            n2 = cache.strip_leading(neg, x, limit)
            if n2 is None:
                continue
            p2 = cache.strip_leading(pos, x, limit)
            if p2 is None:
                continue
            neg, pos = n2, p2
            changed = True
            break
    return neg, pos


def right_reverse(
    word: Word,
    table: ComplementTable,
    pres: PositivePresentation | SaturationCache | None = None,
    cap: int = 10_000,
    oracle: DivisibilityOracle | None = None,
    strip_limit: int = 20_000,
) -> tuple[PosWord, PosWord]:
    """
    Rewrite a signed word into a right fraction (f, g) with word ≡ f·g⁻¹:
    repeatedly replace the leftmost a⁻¹·b by θ(a,b)·θ(b,a)⁻¹ (or erase it
    when a = b).  When a positive presentation is supplied, the left
    fraction around the active position is simplified by common-left-divisor
    removal before every replacement, and the final fraction by
    common-right-divisor removal; both cancellations hold in the enveloping
    group whenever a word-level witness certifies the divisibility, so no
    cancellativity is assumed.  DivergenceError past cap steps.
    """
    cache = None
    if pres is not None:
        cache = pres if isinstance(pres, SaturationCache) else SaturationCache(pres)
    oracle = oracle or DivisibilityOracle()
    w = list(free_reduce(word))
    steps = 0
    while True:
        idx = next(
            (i for i in range(len(w) - 1) if w[i][1] == -1 and w[i + 1][1] == 1),
            None,
        )
        if idx is None:
            break
        i = idx
        while i > 0 and w[i - 1][1] == -1:
            i -= 1
        k = idx + 1
        while k < len(w) and w[k][1] == 1:
            k += 1
        neg = tuple(lbl for lbl, _ in reversed(w[i:idx + 1]))  # segment = neg⁻¹·pos
        pos = tuple(lbl for lbl, _ in w[idx + 1:k])
        if cache is not None:
            neg, pos = _strip_pair(neg, pos, cache, oracle, strip_limit)
        if neg and pos:
            a, b = neg[0], pos[0]
            if a == b:
                neg, pos = neg[1:], pos[1:]
            else:
                ta, tb = table.theta[(a, b)], table.theta[(b, a)]
                seg = (
                    [(lbl, -1) for lbl in reversed(neg[1:])]
                    + [(lbl, 1) for lbl in ta]
                    + [(lbl, -1) for lbl in reversed(tb)]
                    + [(lbl, 1) for lbl in pos[1:]]
                )
                w[i:k] = seg
                steps += 1
                if steps > cap:
                    raise DivergenceError(
                        f"right-reversing did not terminate within {cap} steps"
                    )
                continue
        w[i:k] = [(lbl, -1) for lbl in reversed(neg)] + [(lbl, 1) for lbl in pos]
        steps += 1
        if steps > cap:
            raise DivergenceError(f"right-reversing did not terminate within {cap} steps")
    split = next((i for i, (_, e) in enumerate(w) if e == -1), len(w))
    f = tuple(lbl for lbl, _ in w[:split])
    g = tuple(lbl for lbl, _ in reversed(w[split:]))
    if cache is not None:
        f, g = _strip_common_right(f, g, cache, oracle, strip_limit)
    return f, g


def _strip_common_right(
    f: tuple,
    g: tuple,
    cache: SaturationCache,
    oracle: DivisibilityOracle,
    limit: int,
) -> tuple[tuple, tuple]:
    """Cancel common right-divisor letters of the right fraction f·g⁻¹."""
    changed = True
    while changed and f and g:
        changed = False
        for x in cache.pres.generators:
            if not (oracle.may_right_divide(x, f) and oracle.may_right_divide(x, g)):
                continue
            f2 = cache.strip_trailing(f, x, limit)
            if f2 is None:
                continue
            g2 = cache.strip_trailing(g, x, limit)
            if g2 is None:
                continue
            f, g = f2, g2
            changed = True
            break
    return f, g


def shrink_fraction(
    f: PosWord,
    g: PosWord,
    table: ComplementTable,
    pres: PositivePresentation | SaturationCache,
    cap: int = 10_000,
    oracle: DivisibilityOracle | None = None,
    strip_limit: int = 4000,
) -> tuple[PosWord, PosWord]:
    """
    Shrink a fraction while preserving *triviality* of f·g⁻¹ (not the group
    element itself): strip witnessed common right-divisors (equality
    preserving) and common left-divisors (conjugation, triviality
    preserving), and replace (f, g) by the right-reversal of f⁻¹·g whenever
    that comes out smaller (f·g⁻¹ = 1 iff f⁻¹·g = 1).  A fixpoint of this
    loop is a much easier input for fraction_trivial.
    """
    cache = pres if isinstance(pres, SaturationCache) else SaturationCache(pres)
    oracle = oracle or DivisibilityOracle()
    f, g = tuple(f), tuple(g)
    changed = True
    while changed and f and g:
        changed = False
        f2, g2 = _strip_common_right(f, g, cache, oracle, strip_limit)
        f2, g2 = _strip_pair(f2, g2, cache, oracle, strip_limit)
        if (f2, g2) != (f, g):
            f, g = f2, g2
            changed = True
            continue
        flipped = tuple((lbl, -1) for lbl in reversed(f)) + tuple((lbl, 1) for lbl in g)
        try:
            f3, g3 = right_reverse(flipped, table, cache, cap, oracle, strip_limit)
        except DivergenceError:
            break
        if len(f3) + len(g3) < len(f) + len(g):
            f, g = f3, g3
            changed = True
    return f, g


def fraction_trivial(
    f: PosWord,
    g: PosWord,
    pres: PositivePresentation | SaturationCache,
    cap: int = 8,
    closure_limit: int | None = None,
) -> bool:
    """
    Certify f·g⁻¹ = 1 in the enveloping group by searching words n of
    length 0, 1, … with f·n ≡ g·n in the positive monoid.  True when a
    witness is found; UndecidedError past the length cap.  (The monoid need
    not be cancellative, so f ≠ g does not settle anything.)  A
    closure_limit bounds the per-candidate saturation search, trading
    completeness below the length cap for a hard memory bound.
    """
    cache = pres if isinstance(pres, SaturationCache) else SaturationCache(pres)
    f, g = tuple(f), tuple(g)

    def eq(a: PosWord, b: PosWord) -> bool:
        if closure_limit is None:
            return cache.equal(a, b)
        return cache.equal_bounded(a, b, closure_limit)

    if eq(f, g):
        return True
    gens = list(cache.pres.generators)
    for i in range(1, cap + 1):
        for n in itertools.product(gens, repeat=i):
            if eq(f + n, g + n):
                return True
    raise UndecidedError(f"no certifying multiplier of length ≤ {cap}")
