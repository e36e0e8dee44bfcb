"""Morphisms of the simplex, segment, and cell-shape categories.

A morphism of cell shapes is a pair (root, labels): a monotone map between
the root arities plus, for every pair (i, j) with root(i-1) < j <= root(i),
a morphism between the corresponding children.  Composition chases the
evident reindexing; hom-sets are enumerated recursively from this
description.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .trees import (
    LEAF,
    ThetaObject,
    enumerate_objects,
    globe,
    height,
    max_arity,
)

# ---------------------------------------------------------------------------
# The simplex category
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaMap:
    """A monotone map [source] -> [target], stored by its value list."""

    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.source + 1:
            raise ValueError("value list must have length source+1")
        prev = 0
        for v in self.values:
            if not 0 <= v <= self.target:
                raise ValueError(f"value {v} out of range [0, {self.target}]")
            if v < prev:
                raise ValueError("values must be weakly monotone")
            prev = v

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.source + 1

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1))

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.values))}]"


def delta_identity(n: int) -> DeltaMap:
    return DeltaMap(n, n, tuple(range(n + 1)))


def compose_delta(f: DeltaMap, g: DeltaMap) -> DeltaMap:
    """f after g."""
    if g.target != f.source:
        raise ValueError("arity mismatch in simplex composition")
    return DeltaMap(g.source, f.target, tuple(f(v) for v in g.values))


def delta_maps(n: int, m: int) -> tuple[DeltaMap, ...]:
    """All monotone maps [n] -> [m], lexicographically by value list."""
    return _delta_maps(n, m)


@lru_cache(maxsize=None)
def _delta_maps(n: int, m: int) -> tuple[DeltaMap, ...]:
    out = []

    def go(prefix):
        if len(prefix) == n + 1:
            out.append(DeltaMap(n, m, tuple(prefix)))
            return
        lo = prefix[-1] if prefix else 0
        for v in range(lo, m + 1):
            go(prefix + [v])

    go([])
    return tuple(out)


def is_sequential(f: DeltaMap) -> bool:
    """No jumps of more than one step: f(i-1)+1 >= f(i)."""
    return all(f(i - 1) + 1 >= f(i) for i in range(1, f.source + 1))


# ---------------------------------------------------------------------------
# The category of finite index sets with disjoint fibres
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaMap:
    """An arrow from the index set {1..source} to {1..target}.

    Carries one subset of {1..target} per source index; the subsets are
    pairwise disjoint.
    """

    source: int
    target: int
    assignment: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.assignment) != self.source:
            raise ValueError("assignment must have one entry per source index")
        seen: set[int] = set()
        for s in self.assignment:
            for x in s:
                if not 1 <= x <= self.target:
                    raise ValueError(f"index {x} out of range")
                if x in seen:
                    raise ValueError("fibres must be pairwise disjoint")
                seen.add(x)

    def __call__(self, i: int) -> frozenset[int]:
        return self.assignment[i - 1]


def gamma_identity(n: int) -> GammaMap:
    return GammaMap(n, n, tuple(frozenset({i}) for i in range(1, n + 1)))


def compose_gamma(f: GammaMap, g: GammaMap) -> GammaMap:
    """f after g: the fibre of s is the union of f-fibres over g's fibre."""
    if g.target != f.source:
        raise ValueError("arity mismatch in index-map composition")
    assignment = tuple(
        frozenset().union(*(f(t) for t in g(s))) if g(s) else frozenset()
        for s in range(1, g.source + 1)
    )
    return GammaMap(g.source, f.target, assignment)


def fdelta(f: DeltaMap) -> GammaMap:
    """The interval-fibre functor: i maps to {j : f(i-1) < j <= f(i)}."""
    assignment = tuple(
        frozenset(range(f(i - 1) + 1, f(i) + 1)) for i in range(1, f.source + 1)
    )
    return GammaMap(f.source, f.target, assignment)


def gamma_maps(m: int, n: int) -> list[GammaMap]:
    """All arrows {1..m} -> {1..n}: functions to disjoint subsets."""
    out = []

    def go(i, remaining, acc):
        if i > m:
            out.append(GammaMap(m, n, tuple(acc)))
            return
        for sub in _subsets(sorted(remaining)):
            go(i + 1, remaining - sub, acc + [frozenset(sub)])

    go(1, frozenset(range(1, n + 1)), [])
    return out


def _subsets(items):
    n = len(items)
    for mask in range(1 << n):
        yield frozenset(items[k] for k in range(n) if mask >> k & 1)


# ---------------------------------------------------------------------------
# Morphisms of cell shapes
# ---------------------------------------------------------------------------


class ThetaMorphism:
    """A morphism of cell shapes in wreath form (root, labels)."""

    __slots__ = ("src", "dst", "root", "labels", "_hash")

    def __init__(
        self,
        src: ThetaObject,
        dst: ThetaObject,
        root: DeltaMap,
        labels: dict[tuple[int, int], "ThetaMorphism"],
    ):
        if root.source != src.arity or root.target != dst.arity:
            raise ValueError("root map does not match source/target arities")
        expected = {
            (i, j)
            for i in range(1, src.arity + 1)
            for j in range(root(i - 1) + 1, root(i) + 1)
        }
        if set(labels) != expected:
            raise ValueError(f"label slots {set(labels)} != expected {expected}")
        for (i, j), lab in labels.items():
            if lab.src != src.children[i - 1] or lab.dst != dst.children[j - 1]:
                raise ValueError(f"label at {(i, j)} has wrong endpoints")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "labels", dict(labels))
        key = (src, dst, root.values, tuple(sorted(labels.items())))
        object.__setattr__(self, "_hash", hash(key))

    def _key(self):
        return (self.src, self.dst, self.root.values, tuple(sorted(self.labels.items())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ThetaMorphism):
            return NotImplemented
        return self._hash == other._hash and self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return f"ThetaMorphism({render_morphism(self)!r}: {self.src} -> {self.dst})"

    def __str__(self):
        return render_morphism(self)


def render_morphism(f: ThetaMorphism) -> str:
    root = f"f=[{','.join(str(v) for v in f.root.values)}]"
    if not f.labels:
        return f"({root})"
    parts = [
        f"η({i},{j})={render_morphism(lab)}"
        for (i, j), lab in sorted(f.labels.items())
    ]
    return f"({root}; {', '.join(parts)})"


def identity_theta(t: ThetaObject) -> ThetaMorphism:
    labels = {
        (i, i): identity_theta(c) for i, c in enumerate(t.children, 1)
    }
    return ThetaMorphism(t, t, delta_identity(t.arity), labels)


def compose_theta(f: ThetaMorphism, g: ThetaMorphism) -> ThetaMorphism:
    """f after g; labels compose through the slot reindexing."""
    if g.dst != f.src:
        raise ValueError("object mismatch in composition")
    root = compose_delta(f.root, g.root)
    labels = {}
    for i in range(1, g.src.arity + 1):
        for k in range(root(i - 1) + 1, root(i) + 1):
            j = _middle_slot(f.root, g.root, i, k)
            labels[(i, k)] = compose_theta(f.labels[(j, k)], g.labels[(i, j)])
    return ThetaMorphism(g.src, f.dst, root, labels)


def _middle_slot(rf: DeltaMap, rg: DeltaMap, i: int, k: int) -> int:
    for j in range(rg(i - 1) + 1, rg(i) + 1):
        if rf(j - 1) < k <= rf(j):
            return j
    raise AssertionError("slot reindexing failed; composite is inconsistent")


@lru_cache(maxsize=None)
def hom_set(s: ThetaObject, t: ThetaObject) -> tuple[ThetaMorphism, ...]:
    """Complete, duplicate-free, canonically ordered enumeration."""
    out = []
    for root in delta_maps(s.arity, t.arity):
        slots = [
            (i, j)
            for i in range(1, s.arity + 1)
            for j in range(root(i - 1) + 1, root(i) + 1)
        ]
        pools = [hom_set(s.children[i - 1], t.children[j - 1]) for (i, j) in slots]
        for combo in iproduct(*pools):
            labels = dict(zip(slots, combo))
            out.append(ThetaMorphism(s, t, root, labels))
    return tuple(out)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def is_jointly_monic(maps: tuple[ThetaMorphism, ...]) -> bool:
    """Is a family of maps out of one shape jointly cancellable?

    Recursively: every adjacent vertex pair of the source must be separated
    by some root, and for every source column the combined family of labels
    over all maps must itself be jointly monic.  The empty family is only
    monic out of the point.
    """
    if not maps:
        raise ValueError("empty family: pass the source via is_jointly_monic_from")
    s = maps[0].src
    if any(m.src != s for m in maps):
        raise ValueError("family must share its source")
    for i in range(1, s.arity + 1):
        if not any(m.root(i - 1) < m.root(i) for m in maps):
            return False
        column = tuple(
            m.labels[(i, j)]
            for m in maps
            for j in range(m.root(i - 1) + 1, m.root(i) + 1)
        )
        if not is_jointly_monic(column):
            return False
    return True


def is_jointly_monic_from(s: ThetaObject, maps: tuple[ThetaMorphism, ...]) -> bool:
    if not maps:
        return s == LEAF
    return is_jointly_monic(maps)


def is_mono(f: ThetaMorphism) -> bool:
    """A map is monic iff its singleton family is jointly monic: injective
    root, and each source column's label family jointly monic."""
    return is_jointly_monic((f,))


@lru_cache(maxsize=None)
def family_image_factorization(
    maps: tuple[ThetaMorphism, ...],
) -> tuple[ThetaMorphism, tuple[ThetaMorphism, ...]]:
    """Factor a family out of one shape as a single epimorphism followed by
    a jointly monic family.

    The joint image collapses the vertices that no root separates and
    recursively factors the combined label family of each surviving column.
    """
    if not maps:
        raise ValueError("need a nonempty family")
    s = maps[0].src
    if any(m.src != s for m in maps):
        raise ValueError("family must share its source")
    verts = [tuple(m.root(v) for m in maps) for v in range(s.arity + 1)]
    e_values = [0]
    jumps = []  # source columns where some root steps
    for i in range(1, s.arity + 1):
        if verts[i] != verts[i - 1]:
            jumps.append(i)
            e_values.append(e_values[-1] + 1)
        else:
            e_values.append(e_values[-1])
    k = e_values[-1]
    column_epis = []
    column_factored: list[dict] = []  # per jump: {(map index, j): mono label}
    children = []
    for i in jumps:
        combined = []
        owners = []
        for mi, m in enumerate(maps):
            for j in range(m.root(i - 1) + 1, m.root(i) + 1):
                combined.append(m.labels[(i, j)])
                owners.append((mi, j))
        e_c, monos_c = family_image_factorization(tuple(combined))
        column_epis.append(e_c)
        column_factored.append(dict(zip(owners, monos_c)))
        children.append(e_c.dst)
    mid = ThetaObject(tuple(children))
    e_root = DeltaMap(s.arity, k, tuple(e_values))
    e_labels = {
        (i, c): column_epis[c - 1] for c, i in enumerate(jumps, 1)
    }
    epi = ThetaMorphism(s, mid, e_root, e_labels)
    out = []
    for mi, m in enumerate(maps):
        root_vals = []
        seen = -1
        vals = []
        for v in range(s.arity + 1):
            if e_values[v] > seen:
                seen = e_values[v]
                vals.append(m.root(v))
        root = DeltaMap(k, m.root.target, tuple(vals))
        labels = {}
        for c, i in enumerate(jumps, 1):
            for j in range(m.root(i - 1) + 1, m.root(i) + 1):
                labels[(c, j)] = column_factored[c - 1][(mi, j)]
        out.append(ThetaMorphism(mid, m.dst, root, labels))
    return epi, tuple(out)


def epi_mono_factorize(f: ThetaMorphism) -> tuple[ThetaMorphism, ThetaMorphism]:
    """The epi-mono (degeneracy/face) factorization of a single map."""
    epi, monos = family_image_factorization((f,))
    return epi, monos[0]


@lru_cache(maxsize=None)
def is_epi(f: ThetaMorphism) -> bool:
    """Structural: root surjective and every label an epimorphism."""
    return f.root.is_surjective() and all(is_epi(lab) for lab in f.labels.values())


def is_mono_by_cancellation(f: ThetaMorphism, window: list[ThetaObject]) -> bool:
    """f is monic iff postcomposition with f is injective on each hom-set."""
    for theta in window:
        seen = {}
        for g in hom_set(theta, f.src):
            fg = compose_theta(f, g)
            if fg in seen and seen[fg] != g:
                return False
            seen[fg] = g
    return True


def is_epi_by_cancellation(f: ThetaMorphism, window: list[ThetaObject]) -> bool:
    """f is epic iff precomposition with f is injective on each hom-set."""
    for theta in window:
        seen = {}
        for g in hom_set(f.dst, theta):
            gf = compose_theta(g, f)
            if gf in seen and seen[gf] != g:
                return False
            seen[gf] = g
    return True


def profile_window(t: ThetaObject) -> list[ThetaObject]:
    """All shapes bounded by t's height and node arity: every quotient of t
    and every middle object of a spinal factorization lives here."""
    return enumerate_objects(height(t), max_arity(t))


def subobject_pool(t: ThetaObject) -> list[ThetaObject]:
    """Every shape that can embed into t.

    An embedded shape has height and leaf count at most those of t (each of
    its columns injects jointly into a disjoint batch of t's columns), and
    node arities are bounded by its own leaf count.
    """
    from .trees import iter_objects, leaf_count

    lmax = leaf_count(t)
    out = [
        p
        for p in iter_objects(height(t), max(lmax, 1))
        if leaf_count(p) <= lmax
    ]
    out.sort(key=ThetaObject.sort_key)
    return out


@lru_cache(maxsize=None)
def monos_into(t: ThetaObject) -> tuple[ThetaMorphism, ...]:
    out = []
    for p in subobject_pool(t):
        out.extend(m for m in hom_set(p, t) if is_mono(m))
    return tuple(out)


@lru_cache(maxsize=None)
def epis_between(p: ThetaObject, s: ThetaObject) -> tuple[ThetaMorphism, ...]:
    return tuple(e for e in hom_set(p, s) if is_epi(e))


# ---------------------------------------------------------------------------
# Globe faces, spines, cospines
# ---------------------------------------------------------------------------


def globe_source_face(n: int, m: int) -> ThetaMorphism:
    """The repeated-source inclusion of the n-globe into the m-globe."""
    return _globe_face(n, m, 0)


def globe_target_face(n: int, m: int) -> ThetaMorphism:
    """The repeated-target inclusion of the n-globe into the m-globe."""
    return _globe_face(n, m, 1)


def _globe_face(n: int, m: int, vertex: int) -> ThetaMorphism:
    if n > m:
        raise ValueError("no face of a lower globe")
    if n == m:
        return identity_theta(globe(n))
    if n == 0:
        root = DeltaMap(0, 1, (vertex,))
        return ThetaMorphism(globe(0), globe(m), root, {})
    lab = _globe_face(n - 1, m - 1, vertex)
    return ThetaMorphism(globe(n), globe(m), delta_identity(1), {(1, 1): lab})


@lru_cache(maxsize=None)
def spine_legs(t: ThetaObject) -> tuple[ThetaMorphism, ...]:
    """The summand inclusions of the globular pattern of t."""
    if t.arity == 0:
        return (identity_theta(t),)
    legs = []
    for i, child in enumerate(t.children, 1):
        for leg in spine_legs(child):
            root = DeltaMap(1, t.arity, (i - 1, i))
            legs.append(ThetaMorphism(ThetaObject((leg.src,)), t, root, {(1, i): leg}))
    return tuple(legs)


@lru_cache(maxsize=None)
def in_spine(f: ThetaMorphism) -> bool:
    """Membership of f in the spine subobject of its target."""
    for leg in spine_legs(f.dst):
        for h in hom_set(f.src, leg.src):
            if compose_theta(leg, h) == f:
                return True
    return False


@lru_cache(maxsize=None)
def is_spinal(f: ThetaMorphism) -> bool:
    """True iff f carries the spine of its source into the spine of its target."""
    return all(in_spine(compose_theta(f, leg)) for leg in spine_legs(f.src))


@lru_cache(maxsize=None)
def cospine(t: ThetaObject, n: int) -> ThetaMorphism:
    """The map from the n-globe that classifies the total composite of t."""
    if n < height(t):
        raise ValueError(f"no {n}-cospine: height({t}) = {height(t)} > {n}")
    if t.arity == 0:
        if n == 0:
            return identity_theta(t)
        root = DeltaMap(1, 0, (0, 0))
        return ThetaMorphism(globe(n), t, root, {})
    root = DeltaMap(1, t.arity, (0, t.arity))
    labels = {
        (1, j): cospine(c, n - 1) for j, c in enumerate(t.children, 1)
    }
    return ThetaMorphism(globe(n), t, root, labels)


@lru_cache(maxsize=None)
def is_cospinal(f: ThetaMorphism) -> bool:
    """True iff f composed with the principal cospine of its source is a cospine."""
    n = height(f.src)
    if n < height(f.dst):
        return False
    return compose_theta(f, cospine(f.src, n)) == cospine(f.dst, n)


def factorize(
    f: ThetaMorphism, middles: list[ThetaObject] | None = None
) -> tuple[ThetaMorphism, ThetaMorphism]:
    """The unique factorization of f into a cospinal map then a spinal mono.

    The pair is found by exhaustive search over middle shapes; a failure of
    existence or uniqueness raises, since either would falsify the
    factorization property on this window.
    """
    found = []
    if middles is None:
        middles = profile_window(f.dst)
    for m in middles:
        spinal_monos = [
            g for g in hom_set(m, f.dst) if is_mono(g) and is_spinal(g)
        ]
        if not spinal_monos:
            continue
        for c in hom_set(f.src, m):
            if not is_cospinal(c):
                continue
            for g in spinal_monos:
                if compose_theta(g, c) == f:
                    found.append((c, g))
    if len(found) != 1:
        raise ValueError(
            f"expected exactly one cospinal/spinal-mono factorization of "
            f"{render_morphism(f)}, found {len(found)}"
        )
    return found[0]


# ---------------------------------------------------------------------------
# The wreath presentation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WreathMorphism:
    """A morphism of the one-level wreath category: a simplex map over a
    family of shape morphisms, indexed like the labels of a shape morphism."""

    src: tuple[int, tuple[ThetaObject, ...]]
    dst: tuple[int, tuple[ThetaObject, ...]]
    root: DeltaMap
    labels: tuple[tuple[tuple[int, int], ThetaMorphism], ...]

    def label_dict(self):
        return dict(self.labels)


def wreath_encode(t: ThetaObject) -> tuple[int, tuple[ThetaObject, ...]]:
    return (t.arity, t.children)


def wreath_decode(pair: tuple[int, tuple[ThetaObject, ...]]) -> ThetaObject:
    n, children = pair
    if n != len(children):
        raise ValueError("arity does not match the number of children")
    return ThetaObject(tuple(children))


def wreath_encode_morphism(f: ThetaMorphism) -> WreathMorphism:
    return WreathMorphism(
        wreath_encode(f.src),
        wreath_encode(f.dst),
        f.root,
        tuple(sorted(f.labels.items())),
    )


def wreath_decode_morphism(w: WreathMorphism) -> ThetaMorphism:
    return ThetaMorphism(
        wreath_decode(w.src), wreath_decode(w.dst), w.root, w.label_dict()
    )


def compose_wreath(f: WreathMorphism, g: WreathMorphism) -> WreathMorphism:
    """Composition computed at the wreath level, independently of the shape
    category: simplex roots compose and labels chase the slot reindexing."""
    if g.dst != f.src:
        raise ValueError("object mismatch in wreath composition")
    root = compose_delta(f.root, g.root)
    flab, glab = f.label_dict(), g.label_dict()
    labels = {}
    for i in range(1, g.root.source + 1):
        for k in range(root(i - 1) + 1, root(i) + 1):
            j = _middle_slot(f.root, g.root, i, k)
            labels[(i, k)] = compose_theta(flab[(j, k)], glab[(i, j)])
    return WreathMorphism(g.src, f.dst, root, tuple(sorted(labels.items())))
