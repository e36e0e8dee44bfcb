"""Finite cellular sets: presheaves on the shape category within a window.

Presheaves are evaluator-backed: a cellular set is a pair of callables
(cells, restrict) and nothing is tabulated until queried.  Sieves are the
materialized subobjects of representables; covers are sieves containing the
spine whose inclusion lifts against every cospinal map between window
shapes (a window-relative check by design: the defining condition
quantifies over an infinite class).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Callable

from .trees import (
    LEAF,
    ThetaObject,
    height,
    leaf_count,
    max_arity,
    iter_objects,
    size,
)
from .morphisms import (
    DeltaMap,
    ThetaMorphism,
    compose_theta,
    delta_maps,
    epis_between,
    hom_set,
    identity_theta,
    is_cospinal,
    is_epi,
    is_jointly_monic,
    is_mono,
    is_spinal,
    monos_into,
    spine_legs,
)


@dataclass
class CellularSet:
    """An evaluator-backed presheaf on the shape category.

    ``cells(shape)`` returns a finite tuple in a deterministic order;
    ``restrict(cell, f)`` acts contravariantly: for f: a -> b and a cell at
    b, the result is a cell at a.
    """

    name: str
    cells_fn: Callable[[ThetaObject], tuple]
    restrict_fn: Callable[[object, ThetaMorphism], object]
    _cache: dict = field(default_factory=dict, repr=False)

    def cells(self, shape: ThetaObject) -> tuple:
        got = self._cache.get(shape)
        if got is None:
            got = tuple(self.cells_fn(shape))
            self._cache[shape] = got
        return got

    def restrict(self, cell, f: ThetaMorphism):
        return self.restrict_fn(cell, f)

    def __repr__(self):
        return f"CellularSet({self.name})"


def representable(t: ThetaObject) -> CellularSet:
    """cells(a) = Hom(a, t); restriction is precomposition."""
    return CellularSet(
        name=f"Theta[{t}]",
        cells_fn=lambda shape: hom_set(shape, t),
        restrict_fn=compose_theta,
    )


def terminal_cellular() -> CellularSet:
    return representable(LEAF)


def empty_cellular() -> CellularSet:
    return CellularSet(
        name="empty",
        cells_fn=lambda shape: (),
        restrict_fn=lambda cell, f: (_ for _ in ()).throw(
            ValueError("empty presheaf has no cells")
        ),
    )


def product(x: CellularSet, y: CellularSet) -> CellularSet:
    return CellularSet(
        name=f"({x.name} x {y.name})",
        cells_fn=lambda shape: tuple(
            (a, b) for a in x.cells(shape) for b in y.cells(shape)
        ),
        restrict_fn=lambda cell, f: (x.restrict(cell[0], f), y.restrict(cell[1], f)),
    )


def coproduct(x: CellularSet, y: CellularSet) -> CellularSet:
    return CellularSet(
        name=f"({x.name} + {y.name})",
        cells_fn=lambda shape: tuple(
            [(0, a) for a in x.cells(shape)] + [(1, b) for b in y.cells(shape)]
        ),
        restrict_fn=lambda cell, f: (
            cell[0],
            (x if cell[0] == 0 else y).restrict(cell[1], f),
        ),
    )


@dataclass(frozen=True)
class CellularMap:
    """A map of cellular sets given by a per-cell assignment."""

    name: str
    src: CellularSet
    dst: CellularSet
    fn: Callable[[object, ThetaObject], object]

    def apply(self, cell, shape: ThetaObject):
        return self.fn(cell, shape)

    def is_natural_on(self, window: list[ThetaObject]) -> bool:
        for b in window:
            for a in window:
                for f in hom_set(a, b):
                    for c in self.src.cells(b):
                        lhs = self.apply(self.src.restrict(c, f), a)
                        rhs = self.dst.restrict(self.apply(c, b), f)
                        if lhs != rhs:
                            return False
        return True

    def is_injective_on(self, window: list[ThetaObject]) -> bool:
        for b in window:
            seen = {}
            for c in self.src.cells(b):
                v = self.apply(c, b)
                if v in seen and seen[v] != c:
                    return False
                seen[v] = c
        return True


# ---------------------------------------------------------------------------
# Sieves
# ---------------------------------------------------------------------------


class Sieve:
    """A subobject of the representable of ``target``.

    Backed either by a finite generating set (saturated under
    precomposition on demand) or by a membership predicate.
    """

    def __init__(
        self,
        target: ThetaObject,
        generators: tuple[ThetaMorphism, ...] | None = None,
        member_fn: Callable[[ThetaMorphism], bool] | None = None,
        name: str = "sieve",
    ):
        if (generators is None) == (member_fn is None):
            raise ValueError("provide exactly one of generators, member_fn")
        if generators is not None:
            for g in generators:
                if g.dst != target:
                    raise ValueError("generator does not land in the target")
        self.target = target
        self.generators = tuple(generators) if generators is not None else None
        self.member_fn = member_fn
        self.name = name
        self._members: dict[ThetaObject, tuple] = {}

    def members(self, shape: ThetaObject) -> tuple[ThetaMorphism, ...]:
        got = self._members.get(shape)
        if got is None:
            if self.generators is not None:
                hits = set()
                for gen in self.generators:
                    for h in hom_set(shape, gen.src):
                        hits.add(compose_theta(gen, h))
                got = tuple(m for m in hom_set(shape, self.target) if m in hits)
            else:
                got = tuple(
                    m for m in hom_set(shape, self.target) if self.member_fn(m)
                )
            self._members[shape] = got
        return got

    def contains(self, f: ThetaMorphism) -> bool:
        if f.dst != self.target:
            return False
        return f in set(self.members(f.src))

    def as_cellular_set(self) -> CellularSet:
        return CellularSet(
            name=f"{self.name}[{self.target}]",
            cells_fn=self.members,
            restrict_fn=compose_theta,
        )

    def equals_on(self, other: "Sieve", window: list[ThetaObject]) -> bool:
        if self.target != other.target:
            return False
        return all(self.members(s) == other.members(s) for s in window)

    def contained_in_on(self, other: "Sieve", window: list[ThetaObject]) -> bool:
        if self.target != other.target:
            return False
        return all(
            set(self.members(s)) <= set(other.members(s)) for s in window
        )

    def __repr__(self):
        return f"Sieve({self.name}[{self.target}])"


def whole_sieve(t: ThetaObject) -> Sieve:
    return Sieve(t, generators=(identity_theta(t),), name="whole")


def spine(t: ThetaObject) -> Sieve:
    """The subobject generated by the globular summand inclusions."""
    return Sieve(t, generators=spine_legs(t), name="spine")


def boundary(t: ThetaObject) -> Sieve:
    """The subobject generated by all non-identity monomorphisms."""
    ident = identity_theta(t)
    gens = tuple(m for m in monos_into(t) if m != ident)
    if not gens:
        return Sieve(t, member_fn=lambda f: False, name="boundary")
    return Sieve(t, generators=gens, name="boundary")


def segal_core(n: int, components: list[ThetaObject]) -> Sieve:
    """The subobject of [n](c_1..c_n) generated by its segment inclusions."""
    if len(components) != n:
        raise ValueError("need exactly n component shapes")
    t = ThetaObject(tuple(components))
    if n == 0:
        return whole_sieve(t)
    gens = [segment_inclusion(t, i) for i in range(1, n + 1)]
    return Sieve(t, generators=tuple(gens), name="segal-core")


def segment_inclusion(t: ThetaObject, i: int) -> ThetaMorphism:
    """The inclusion [1](c_i) -> [n](c_1..c_n) over the edge (i-1, i)."""
    child = t.children[i - 1]
    src = ThetaObject((child,))
    root = DeltaMap(1, t.arity, (i - 1, i))
    return ThetaMorphism(src, t, root, {(1, i): identity_theta(child)})


def segal_core_of_spines(n: int, components: list[ThetaObject]) -> Sieve:
    """The segment-wise union of suspended spines inside [n](c_1..c_n).

    A cell belongs iff it factors through some segment with the crossing
    label landing in the spine of that component.
    """
    if len(components) != n:
        raise ValueError("need exactly n component shapes")
    t = ThetaObject(tuple(components))
    segments = [segment_inclusion(t, i) for i in range(1, n + 1)]
    spines = [spine(c) for c in components]

    def member(f: ThetaMorphism) -> bool:
        for i, seg in enumerate(segments, 1):
            for h in hom_set(f.src, seg.src):
                if compose_theta(seg, h) != f:
                    continue
                # h: a -> [1](c_i); through the suspended spine iff its root
                # is constant (a vertex) or every crossing label is spinal.
                if all(
                    spines[i - 1].contains(lab) for lab in h.labels.values()
                ):
                    return True
        return False

    return Sieve(t, member_fn=member, name="segal-core-of-spines")


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cospinal_maps(window: tuple[ThetaObject, ...]) -> tuple[ThetaMorphism, ...]:
    out = []
    for a in window:
        for b in window:
            out.extend(f for f in hom_set(a, b) if is_cospinal(f))
    return tuple(out)


def is_cover(s: Sieve, window: list[ThetaObject]) -> bool:
    """Window-relative cover check: contains the spine and lifts against
    every cospinal map between window shapes.

    The lifting condition unwinds to: whenever g precomposed with a cospinal
    map lands in the sieve, g itself already belongs.
    """
    t = s.target
    for leg in spine_legs(t):
        if not s.contains(leg):
            return False
    for c in cospinal_maps(tuple(window)):
        for g in hom_set(c.dst, t):
            if s.contains(compose_theta(g, c)) and not s.contains(g):
                return False
    return True


def pullback_sieve(s: Sieve, f: ThetaMorphism) -> Sieve:
    """{g into the source of f : f o g belongs to s}."""
    if f.dst != s.target:
        raise ValueError("map does not land in the sieve's target")
    return Sieve(
        f.src,
        member_fn=lambda g: s.contains(compose_theta(f, g)),
        name=f"pullback({s.name})",
    )


def pullback_product_sieve(
    s: Sieve, t: Sieve, f: ThetaMorphism, g: ThetaMorphism
) -> Sieve:
    """Pullback of s x t inside Theta[s.target] x Theta[t.target] along the
    pair (f, g) out of a common source shape."""
    if f.src != g.src:
        raise ValueError("the two maps must share a source")
    return Sieve(
        f.src,
        member_fn=lambda h: s.contains(compose_theta(f, h))
        and t.contains(compose_theta(g, h)),
        name="pullback-product",
    )


def mono_part(f: ThetaMorphism) -> ThetaMorphism:
    """The monomorphism through which f factors after splitting off its
    epi part; f belongs to a sieve iff its mono part does."""
    from .morphisms import epi_mono_factorize

    return epi_mono_factorize(f)[1]


@lru_cache(maxsize=None)
def cover_closure_data(
    t: ThetaObject,
) -> tuple[tuple[ThetaMorphism, ...], tuple[frozenset[int], ...], frozenset[int]]:
    """The forcing structure on the monos into t that cuts out the covers.

    A sieve is determined by the monos it contains, and the lifting
    condition against an arbitrary cospinal map reduces, after splitting
    epi parts off both legs of the square (a quotient of a total-composite
    classifier is again one), to the rule: if m o c belongs to the sieve
    for a cospinal monomorphism c, then m belongs.  Both closure rules
    consume one membership fact at a time, so a sieve containing the spine
    is a cover iff its mono set is closed under a reachability relation.

    Returns (all monos into t, per-mono reachable sets, the spine-forced
    base set).
    """
    gens = sorted(set(monos_into(t)), key=lambda m: (size(m.src), m._key()))
    index = {m: k for k, m in enumerate(gens)}
    n = len(gens)
    succ: list[set[int]] = [set() for _ in range(n)]
    # Precomposition: m in S forces every mono factoring through m.
    for k, mk in enumerate(gens):
        for i, mi in enumerate(gens):
            if i != k and any(
                compose_theta(mk, h) == mi for h in hom_set(mi.src, mk.src)
            ):
                succ[k].add(i)
    # Lifting: if m o c lies in S for a cospinal mono c, so does m.
    for m in gens:
        for c in monos_into(m.src):
            if is_cospinal(c):
                need = index[compose_theta(m, c)]
                if need != index[m]:
                    succ[need].add(index[m])
    reach: list[set[int]] = [{k} for k in range(n)]
    changed = True
    while changed:
        changed = False
        for k in range(n):
            extra: set[int] = set()
            for j in reach[k]:
                extra |= succ[j]
            if not extra <= reach[k]:
                reach[k] |= extra
                changed = True
    base: set[int] = set()
    for leg in spine_legs(t):
        base |= reach[index[leg]]
    return gens, tuple(frozenset(r) for r in reach), frozenset(base)


def is_cover_mono_set(t: ThetaObject, members: frozenset[int]) -> bool:
    """Is a mono index set the mono set of a cover of t?"""
    gens, reach, base = cover_closure_data(t)
    if not base <= members:
        return False
    return all(reach[k] <= members for k in members)


def mono_set_of_sieve(t: ThetaObject, s: Sieve) -> frozenset[int]:
    gens, _, _ = cover_closure_data(t)
    return frozenset(k for k, m in enumerate(gens) if s.contains(m))


@lru_cache(maxsize=None)
def mono_index(t: ThetaObject) -> dict[ThetaMorphism, int]:
    gens, _, _ = cover_closure_data(t)
    return {m: k for k, m in enumerate(gens)}


def mono_set_contains(t: ThetaObject, members: frozenset[int], x: ThetaMorphism) -> bool:
    """Membership of an arbitrary map in the sieve with the given mono set:
    a map belongs iff its mono part does (epi parts split)."""
    if x.dst != t:
        return False
    return mono_index(t)[mono_part(x)] in members


@lru_cache(maxsize=None)
def pullback_index_map(f: ThetaMorphism) -> tuple[int, ...]:
    """For f: a -> b, the map sending the index of a mono m into a to the
    index of the mono part of f o m into b; pulling a sieve back along f
    is preimage under this map."""
    gens_a, _, _ = cover_closure_data(f.src)
    idx_b = mono_index(f.dst)
    return tuple(idx_b[mono_part(compose_theta(f, m))] for m in gens_a)


def pullback_mono_set(
    t: ThetaObject, members: frozenset[int], f: ThetaMorphism
) -> frozenset[int]:
    """The mono set on the source of f of the pullback of the sieve with
    the given mono set on t along f."""
    tau = pullback_index_map(f)
    return frozenset(k for k, j in enumerate(tau) if j in members)


def product_pullback_mono_set(
    s: ThetaObject,
    s_members: frozenset[int],
    t: ThetaObject,
    t_members: frozenset[int],
    u: ThetaMorphism,
    v: ThetaMorphism,
) -> frozenset[int]:
    """Mono set of the pullback of a product of two sieves along the pair
    (u, v) out of one shape."""
    if u.src != v.src:
        raise ValueError("the two maps must share a source")
    tau_u = pullback_index_map(u)
    tau_v = pullback_index_map(v)
    return frozenset(
        k
        for k in range(len(tau_u))
        if tau_u[k] in s_members and tau_v[k] in t_members
    )


def cover_mono_sets(
    t: ThetaObject,
) -> tuple[tuple[ThetaMorphism, ...], list[frozenset[int]]]:
    """All covers of t, presented by their mono sets: the down-closed sets
    of the forcing preorder, enumerated over strongly-connected blocks.

    Returns (all monos into t, one index set per cover).
    """
    gens, reach, base = cover_closure_data(t)
    n = len(gens)
    free = sorted(k for k in range(n) if k not in base)
    block_of: dict[int, frozenset[int]] = {}
    for k in free:
        block_of[k] = frozenset(
            j for j in free if j in reach[k] and k in reach[j]
        )
    blocks = sorted(
        {b for b in block_of.values()},
        key=lambda b: (len([j for j in reach[min(b)] if j in free]), min(b)),
    )
    forced_blocks: dict[frozenset[int], set[frozenset[int]]] = {
        b: {block_of[j] for j in reach[min(b)] if j in free} - {b}
        for b in blocks
    }
    out: list[frozenset[int]] = []

    def grow(chosen: frozenset[frozenset[int]], members: frozenset[int], start: int):
        out.append(members)
        for pos in range(start, len(blocks)):
            b = blocks[pos]
            if forced_blocks[b] <= chosen:
                grow(chosen | {b}, members | b, pos + 1)

    grow(frozenset(), base, 0)
    return gens, out


def sieve_from_mono_set(
    t: ThetaObject, gens: tuple[ThetaMorphism, ...], members: frozenset[int]
) -> Sieve:
    # Generate by the full mono set: lifting-derived members need not
    # factor through the spine legs or any smaller generating family.
    return Sieve(
        t,
        generators=tuple(gens[k] for k in sorted(members)),
        name=f"cover[{len(members)}monos]",
    )


def all_covers(t: ThetaObject) -> list[Sieve]:
    """All covers of t, as materialized sieves."""
    gens, sets = cover_mono_sets(t)
    return [sieve_from_mono_set(t, gens, members) for members in sets]


def all_sieves_containing_spine(t: ThetaObject) -> list[Sieve]:
    """Every subobject of the representable of t that contains the spine.

    A sieve is determined by which monomorphisms it contains (epimorphisms
    split, so the nondegenerate part of a member is again a member); those
    mono sets are exactly the subsets of non-spine monos closed under
    factoring-through.  Enumerate them along a linear extension of the
    factorization order."""
    sp = spine(t)
    gens = sorted(
        (m for m in monos_into(t) if not sp.contains(m)),
        key=lambda m: (size(m.src), m._key()),
    )
    n = len(gens)
    # under[k] = generators that factor through gens[k]; all have strictly
    # smaller sources, so they sit earlier in the sorted list.
    under: list[frozenset[int]] = []
    for k, mk in enumerate(gens):
        forced = set()
        for i, mi in enumerate(gens):
            if i == k:
                continue
            if any(compose_theta(mk, h) == mi for h in hom_set(mi.src, mk.src)):
                forced.add(i)
        under.append(frozenset(forced))
    out: list[Sieve] = []

    def emit(current: frozenset[int]):
        extra = tuple(gens[k] for k in sorted(current))
        out.append(
            Sieve(
                t,
                generators=tuple(spine_legs(t)) + extra,
                name=f"spine+{len(extra)}gens",
            )
        )

    def grow(current: frozenset[int], start: int):
        emit(current)
        for k in range(start, n):
            if under[k] <= current:
                grow(current | {k}, k + 1)

    grow(frozenset(), 0)
    return out


# ---------------------------------------------------------------------------
# Joint epi-mono spans (the objects underlying shuffles)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EpiMonoSpan:
    """A shape p with epimorphisms onto s and t that are jointly monic."""

    apex: ThetaObject
    left: ThetaMorphism  # epi onto s
    right: ThetaMorphism  # epi onto t

    def sort_key(self):
        return (self.apex.sort_key(), self.left._key(), self.right._key())


def is_jointly_monic_epi_pair(u: ThetaMorphism, v: ThetaMorphism) -> bool:
    """Exact test that the pair (u, v) out of a common shape is jointly
    monic (the general column-wise recursion on the label families)."""
    if u.src != v.src:
        raise ValueError("the two maps must share a source")
    return is_jointly_monic((u, v))


def jointly_monic_on_window(
    u: ThetaMorphism, v: ThetaMorphism, window: list[ThetaObject]
) -> bool:
    """Cell-level injectivity of (u o -, v o -); the slow cross-check."""
    for shape in window:
        seen = {}
        for h in hom_set(shape, u.src):
            key = (compose_theta(u, h), compose_theta(v, h))
            if key in seen and seen[key] != h:
                return False
            seen[key] = h
    return True


def _span_candidate_pool(s: ThetaObject, t: ThetaObject) -> list[ThetaObject]:
    # A joint embedding into the product is bounded like a subobject of a
    # shape with the combined leaf count.
    hmax = max(height(s), height(t))
    lmax = leaf_count(s) + leaf_count(t)
    return [
        p
        for p in iter_objects(hmax, max(lmax, 1))
        if leaf_count(p) <= lmax
    ]


@lru_cache(maxsize=None)
def epi_mono_spans(s: ThetaObject, t: ThetaObject) -> tuple[EpiMonoSpan, ...]:
    """All spans of epimorphisms out of one shape onto s and t that embed
    jointly into the product, by brute-force search over candidate apexes."""
    out = []
    for p in _span_candidate_pool(s, t):
        lefts = epis_between(p, s)
        if not lefts:
            continue
        rights = epis_between(p, t)
        if not rights:
            continue
        for u in lefts:
            for v in rights:
                if is_jointly_monic_epi_pair(u, v):
                    out.append(EpiMonoSpan(p, u, v))
    out.sort(key=EpiMonoSpan.sort_key)
    return tuple(out)


def span_morphisms(a: EpiMonoSpan, b: EpiMonoSpan) -> tuple[ThetaMorphism, ...]:
    """Maps between apexes commuting with both projections (at most one).

    Joint monicity of the target span pins the root vertexwise; the labels
    are then filtered slotwise against the two triangle constraints, which
    together force the full composites to agree.
    """
    p1, p2 = a.apex, b.apex
    vert_b = {
        (b.left.root(x), b.right.root(x)): x for x in range(p2.arity + 1)
    }
    vmap = []
    for x in range(p1.arity + 1):
        key = (a.left.root(x), a.right.root(x))
        if key not in vert_b:
            return ()
        vmap.append(vert_b[key])
    if any(vmap[i] < vmap[i - 1] for i in range(1, len(vmap))):
        return ()
    root = DeltaMap(p1.arity, p2.arity, tuple(vmap))

    def slot_candidates(i: int, j: int) -> list[ThetaMorphism]:
        cands = list(hom_set(p1.children[i - 1], p2.children[j - 1]))
        for side_a, side_b in ((a.left, b.left), (a.right, b.right)):
            for k in range(side_b.root(j - 1) + 1, side_b.root(j) + 1):
                if not side_a.root(i - 1) < k <= side_a.root(i):
                    return []
                want = side_a.labels[(i, k)]
                lab = side_b.labels[(j, k)]
                cands = [h for h in cands if compose_theta(lab, h) == want]
        return cands

    slots = [
        (i, j)
        for i in range(1, p1.arity + 1)
        for j in range(root(i - 1) + 1, root(i) + 1)
    ]
    pools = [slot_candidates(i, j) for (i, j) in slots]
    out = []
    for combo in iproduct(*pools):
        out.append(ThetaMorphism(p1, p2, root, dict(zip(slots, combo))))
    return tuple(out)


def shuffles(
    s: ThetaObject, t: ThetaObject
) -> list[tuple[ThetaObject, CellularMap]]:
    """The maximal joint embeddings into Theta[s] x Theta[t] with epimorphic
    projections; maximality means no factorization through a strictly
    larger such embedding."""
    spans = epi_mono_spans(s, t)
    maximal = []
    for a in spans:
        dominated = False
        for b in spans:
            if a == b:
                continue
            if span_morphisms(a, b):
                dominated = True
                break
        if not dominated:
            maximal.append(a)
    prod = product(representable(s), representable(t))
    out = []
    for span in maximal:
        rep = representable(span.apex)
        mono = CellularMap(
            name=f"shuffle[{span.apex}]",
            src=rep,
            dst=prod,
            fn=lambda h, shape, sp=span: (
                compose_theta(sp.left, h),
                compose_theta(sp.right, h),
            ),
        )
        out.append((span.apex, mono))
    return out
