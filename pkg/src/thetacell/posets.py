"""Path posets, subdivision categories, opfibrations, and contractibility.

Southeasterly paths are words over {S, E, SE}; the poset with a fixed
terminus indexes the joint degeneracies of a product of representables.
The collapse to root arities is checked to be an opfibration with fibers
decomposing into products of smaller span categories.  Contractibility of
finite posets is certified by cones, elementary collapses, or vanishing
reduced integral homology via Smith normal form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .trees import LEAF, ThetaObject
from .morphisms import (
    DeltaMap,
    ThetaMorphism,
    compose_delta,
    compose_theta,
    delta_identity,
    delta_maps,
    factorize,
    hom_set,
    identity_theta,
    is_mono,
    is_spinal,
    render_morphism,
)
from .cellular import EpiMonoSpan, Sieve, epi_mono_spans, span_morphisms
from .fincat import (
    Arrow,
    FinCategory,
    FinFunctor,
    category_from_homs,
    coslice_category,
    fiber_category,
    is_opfibration,
    product_category,
)

S, E, SE = "S", "E", "SE"
LETTERS = (S, E, SE)


@dataclass(frozen=True)
class SEPath:
    letters: tuple[str, ...]

    def __post_init__(self):
        for x in self.letters:
            if x not in LETTERS:
                raise ValueError(f"bad letter {x!r}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "[" + ",".join(self.letters) + "]"


def terminus(p: SEPath) -> tuple[int, int]:
    """(count of S, count of E), occurrences inside SE included."""
    ds = sum(1 for x in p.letters if x in (S, SE))
    de = sum(1 for x in p.letters if x in (E, SE))
    return (ds, de)


def path_covers(a: SEPath, b: SEPath) -> bool:
    """b refines a by replacing a single SE letter with S,E or E,S."""
    if len(b) != len(a) + 1:
        return False
    for i, x in enumerate(a.letters):
        if x != SE:
            continue
        pair = b.letters[i : i + 2]
        if (
            set(pair) == {S, E}
            and b.letters[:i] == a.letters[:i]
            and b.letters[i + 2 :] == a.letters[i + 1 :]
        ):
            return True
    return False


def se_paths(ns: int, nt: int) -> list[SEPath]:
    """All words with terminus (ns, nt); the empty word for (0, 0)."""
    out = []

    def go(prefix, s_left, e_left):
        if s_left == 0 and e_left == 0:
            out.append(SEPath(tuple(prefix)))
            return
        if s_left > 0:
            go(prefix + [S], s_left - 1, e_left)
        if e_left > 0:
            go(prefix + [E], s_left, e_left - 1)
        if s_left > 0 and e_left > 0:
            go(prefix + [SE], s_left - 1, e_left - 1)

    go([], ns, nt)
    return out


@lru_cache(maxsize=None)
def delannoy(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 1
    return delannoy(a - 1, b) + delannoy(a, b - 1) + delannoy(a - 1, b - 1)


# ---------------------------------------------------------------------------
# Finite posets and their order complexes
# ---------------------------------------------------------------------------


class FinPoset:
    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        self.leq = frozenset(leq)
        els = set(self.elements)
        for a, b in self.leq:
            if a not in els or b not in els:
                raise ValueError("relation mentions a non-element")
        for a in self.elements:
            if (a, a) not in self.leq:
                raise ValueError(f"not reflexive at {a!r}")
        for a, b in self.leq:
            if (b, a) in self.leq and a != b:
                raise ValueError(f"not antisymmetric at {a!r}, {b!r}")
            for c in self.elements:
                if (b, c) in self.leq and (a, c) not in self.leq:
                    raise ValueError("not transitive")

    def is_below(self, a, b) -> bool:
        return (a, b) in self.leq

    def covers(self) -> list[tuple]:
        out = []
        for a, b in self.leq:
            if a == b:
                continue
            if any(
                (a, c) in self.leq and (c, b) in self.leq and c not in (a, b)
                for c in self.elements
            ):
                continue
            out.append((a, b))
        return out

    def minimum(self):
        for a in self.elements:
            if all((a, b) in self.leq for b in self.elements):
                return a
        return None

    def maximum(self):
        for a in self.elements:
            if all((b, a) in self.leq for b in self.elements):
                return a
        return None

    def maximal_elements(self) -> list:
        return [
            a
            for a in self.elements
            if all(b == a or (b, a) not in self.leq for b in self.elements)
        ]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinPoset({len(self.elements)} elements)"


def poset_from_covers(elements, cover_pairs) -> FinPoset:
    elements = list(elements)
    leq = {(a, a) for a in elements}
    leq.update(cover_pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for b2, c in list(leq):
                if b2 == b and (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    return FinPoset(elements, leq)


def q_poset(ns: int, nt: int) -> FinPoset:
    """Paths with terminus (ns, nt) under refinement of diagonal letters."""
    paths = se_paths(ns, nt)
    cover_pairs = [
        (a, b) for a in paths for b in paths if path_covers(a, b)
    ]
    return poset_from_covers(paths, cover_pairs)


class SimplicialComplexOrd:
    """An abstract simplicial complex presented by its full simplex set."""

    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        self.simplices = frozenset(frozenset(s) for s in simplices)
        vs = set(self.vertices)
        for s in self.simplices:
            if not s:
                raise ValueError("no empty simplices")
            if not s <= vs:
                raise ValueError("simplex with unknown vertex")
            for k in range(1, len(s)):
                for face in combinations(sorted(s, key=repr), k):
                    if frozenset(face) not in self.simplices:
                        raise ValueError("not downward closed")

    def facets(self) -> list[frozenset]:
        return [
            s
            for s in self.simplices
            if not any(s < t for t in self.simplices)
        ]

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)


def order_complex(p: FinPoset) -> SimplicialComplexOrd:
    """Simplices are the nonempty chains of the poset."""
    chains: set[frozenset] = set()
    els = list(p.elements)

    def grow(chain: list):
        chains.add(frozenset(chain))
        top = chain[-1]
        for b in els:
            if b != top and p.is_below(top, b):
                grow(chain + [b])

    for a in els:
        grow([a])
    return SimplicialComplexOrd(p.elements, chains)


class Contractibility(enum.Enum):
    CONTRACTIBLE = "contractible"
    NONTRIVIAL_HOMOLOGY = "nontrivial_homology"
    INCONCLUSIVE = "inconclusive"


def _is_cone(c: SimplicialComplexOrd) -> bool:
    return any(
        all(s | {v} in c.simplices for s in c.simplices) for v in c.vertices
    )


def _collapses_to_point(c: SimplicialComplexOrd) -> bool:
    simplices = set(c.simplices)
    while len(simplices) > 1:
        free_pair = None
        for s in simplices:
            cofaces = [t for t in simplices if s < t]
            if len(cofaces) == 1 and len(cofaces[0]) == len(s) + 1:
                free_pair = (s, cofaces[0])
                break
        if free_pair is None:
            return False
        simplices.discard(free_pair[0])
        simplices.discard(free_pair[1])
    return len(simplices) == 1 and len(next(iter(simplices))) == 1


def reduced_homology(c: SimplicialComplexOrd) -> dict[int, tuple[int, list[int]]]:
    """dim -> (betti number, torsion coefficients), reduced."""
    by_dim: dict[int, list[tuple]] = {}
    for s in c.simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s, key=repr)))
    for d in by_dim:
        by_dim[d].sort()
    top = c.dimension()
    if top < 0:
        return {-1: (1, [])}

    def boundary_matrix(d: int) -> Matrix:
        if d == 0:
            return Matrix([[1] * len(by_dim[0])])  # augmentation
        rows = {s: i for i, s in enumerate(by_dim[d - 1])}
        mat = [[0] * len(by_dim[d]) for _ in range(len(by_dim[d - 1]))]
        for j, s in enumerate(by_dim[d]):
            for k in range(len(s)):
                face = s[:k] + s[k + 1 :]
                mat[rows[face]][j] = (-1) ** k
        return Matrix(mat)

    out = {}
    snf_cache: dict[int, list[int]] = {}

    def snf_diag(d: int) -> list[int]:
        if d not in snf_cache:
            m = boundary_matrix(d)
            snf = smith_normal_form(m, domain=ZZ)
            diag = [
                int(snf[i, i])
                for i in range(min(snf.rows, snf.cols))
                if snf[i, i] != 0
            ]
            snf_cache[d] = diag
        return snf_cache[d]

    for d in range(0, top + 1):
        n_d = len(by_dim[d])
        rank_d = len(snf_diag(d))
        if d < top:
            diag_next = snf_diag(d + 1)
        else:
            diag_next = []
        rank_next = len(diag_next)
        betti = n_d - rank_d - rank_next
        torsion = [abs(x) for x in diag_next if abs(x) > 1]
        out[d] = (betti, torsion)
    return out


def is_contractible(c: SimplicialComplexOrd) -> Contractibility:
    """Cone detection, then greedy collapses, then reduced homology."""
    if not c.simplices:
        return Contractibility.NONTRIVIAL_HOMOLOGY
    if _is_cone(c):
        return Contractibility.CONTRACTIBLE
    if _collapses_to_point(c):
        return Contractibility.CONTRACTIBLE
    hom = reduced_homology(c)
    if any(betti != 0 or torsion for betti, torsion in hom.values()):
        return Contractibility.NONTRIVIAL_HOMOLOGY
    return Contractibility.INCONCLUSIVE


# ---------------------------------------------------------------------------
# The subdivision categories over a product of representables
# ---------------------------------------------------------------------------

# A Q-object: (length, left surjection values, right surjection values).
QObj = tuple[int, tuple[int, ...], tuple[int, ...]]


def q_objects(ns: int, nt: int) -> list[QObj]:
    out = []
    for e in range(0, ns + nt + 1):
        for a in delta_maps(e, ns):
            if not a.is_surjective():
                continue
            for b in delta_maps(e, nt):
                if not b.is_surjective():
                    continue
                if all(
                    (a(i), b(i)) != (a(i - 1), b(i - 1)) for i in range(1, e + 1)
                ):
                    out.append((e, a.values, b.values))
    return out


@lru_cache(maxsize=None)
def q_category(ns: int, nt: int) -> FinCategory:
    """Joint surjections out of simplices, as a full subcategory of maps
    over the product; isomorphic to the path poset with that terminus."""
    objects = q_objects(ns, nt)

    def hom_fn(o1: QObj, o2: QObj):
        e1, a1, b1 = o1
        e2, a2, b2 = o2
        out = []
        for g in delta_maps(e1, e2):
            if (
                tuple(a2[v] for v in g.values) == a1
                and tuple(b2[v] for v in g.values) == b1
            ):
                out.append(g)
        return out

    return category_from_homs(
        objects,
        hom_fn,
        lambda f, g: compose_delta(g, f),
        lambda o: delta_identity(o[0]),
        name=f"Q({ns},{nt})",
    )


def word_to_qobj(p: SEPath) -> QObj:
    avals, bvals = [0], [0]
    for x in p.letters:
        avals.append(avals[-1] + (1 if x in (S, SE) else 0))
        bvals.append(bvals[-1] + (1 if x in (E, SE) else 0))
    return (len(p), tuple(avals), tuple(bvals))


def r_objects(s: ThetaObject, t: ThetaObject) -> tuple[EpiMonoSpan, ...]:
    return epi_mono_spans(s, t)


@lru_cache(maxsize=None)
def r_category(s: ThetaObject, t: ThetaObject) -> FinCategory:
    """Joint embeddings into the product with epimorphic projections."""
    objects = epi_mono_spans(s, t)

    def hom_fn(o1: EpiMonoSpan, o2: EpiMonoSpan):
        return span_morphisms(o1, o2)

    return category_from_homs(
        objects,
        hom_fn,
        lambda f, g: compose_theta(g, f),
        lambda o: identity_theta(o.apex),
        name=f"R({s},{t})",
    )


@lru_cache(maxsize=None)
def collapse_functor(s: ThetaObject, t: ThetaObject) -> FinFunctor:
    """Root-arity collapse from the span category to the joint-surjection
    category."""
    rc = r_category(s, t)
    qc = q_category(s.arity, t.arity)
    omap = {}
    for o in rc.objects:
        omap[o] = (o.apex.arity, o.left.root.values, o.right.root.values)
    amap = {}
    for arr in rc.arrows:
        amap[arr] = Arrow(omap[arr.src], omap[arr.tgt], arr.tag.root)
    return FinFunctor.build(rc, qc, omap, amap)


def collapse_is_opfibration(s: ThetaObject, t: ThetaObject) -> bool:
    return is_opfibration(collapse_functor(s, t))


def fiber_decomposition_check(s: ThetaObject, t: ThetaObject, q: QObj) -> bool:
    """The fiber of the collapse over q is isomorphic to the product of the
    column span categories prescribed by the steps of q."""
    functor = collapse_functor(s, t)
    if q not in set(functor.dst.objects):
        raise ValueError("q is not an object of the collapse target")
    fib = fiber_category(functor, q, name=f"fiber@{q}")
    e, avals, bvals = q
    factors = []
    kinds = []
    for i in range(1, e + 1):
        stepa = avals[i] > avals[i - 1]
        stepb = bvals[i] > bvals[i - 1]
        sj = s.children[avals[i] - 1] if stepa else LEAF
        tl = t.children[bvals[i] - 1] if stepb else LEAF
        factors.append(r_category(sj, tl))
        kinds.append((stepa, stepb))
    prod = product_category(factors, name="column-product")

    def column_span(obj: EpiMonoSpan, i: int) -> EpiMonoSpan:
        child = obj.apex.children[i - 1]
        stepa, stepb = kinds[i - 1]
        left = (
            obj.left.labels[(i, avals[i])]
            if stepa
            else hom_set(child, LEAF)[0]
        )
        right = (
            obj.right.labels[(i, bvals[i])]
            if stepb
            else hom_set(child, LEAF)[0]
        )
        return EpiMonoSpan(child, left, right)

    try:
        omap = {
            o: tuple(column_span(o, i) for i in range(1, e + 1))
            for o in fib.objects
        }
        amap = {}
        for arr in fib.arrows:
            tags = tuple(
                Arrow(
                    column_span(arr.src, i),
                    column_span(arr.tgt, i),
                    arr.tag.labels[(i, i)],
                )
                for i in range(1, e + 1)
            )
            amap[arr] = Arrow(omap[arr.src], omap[arr.tgt], tags)
        functor2 = FinFunctor.build(fib, prod, omap, amap)
    except (ValueError, KeyError):
        return False
    return functor2.is_isomorphism()


def r_coslice(
    s: ThetaObject,
    t: ThetaObject,
    alpha: tuple[ThetaObject, ThetaMorphism, ThetaMorphism],
) -> FinCategory:
    """Spans under a fixed joint embedding out of a shape q: objects are
    span objects together with a factorization of alpha through them."""
    q, au, av = alpha
    if au.src != q or av.src != q:
        raise ValueError("alpha legs must share the source q")
    base = epi_mono_spans(s, t)
    objects = [
        (o, g)
        for o in base
        for g in hom_set(q, o.apex)
        if compose_theta(o.left, g) == au and compose_theta(o.right, g) == av
    ]

    def hom_fn(o1, o2):
        (sp1, g1), (sp2, g2) = o1, o2
        return tuple(
            u for u in span_morphisms(sp1, sp2) if compose_theta(u, g1) == g2
        )

    return category_from_homs(
        objects,
        hom_fn,
        lambda f, g: compose_theta(g, f),
        lambda o: identity_theta(o[0].apex),
        name=f"R({s},{t})@{q}",
    )


# ---------------------------------------------------------------------------
# Subdivision categories of a sieve; the cofinality criterion
# ---------------------------------------------------------------------------


def sd_objects(s: Sieve) -> list[tuple[ThetaObject, ThetaMorphism]]:
    """Monomorphisms into the target that belong to the sieve."""
    from .morphisms import monos_into

    return [(m.src, m) for m in monos_into(s.target) if s.contains(m)]


def _mono_category(objects, name: str) -> FinCategory:
    def hom_fn(o1, o2):
        (p1, m1), (p2, m2) = o1, o2
        return tuple(
            g for g in hom_set(p1, p2) if compose_theta(m2, g) == m1
        )

    return category_from_homs(
        objects,
        hom_fn,
        lambda f, g: compose_theta(g, f),
        lambda o: identity_theta(o[0]),
        name=name,
    )


def sd_category(s: Sieve) -> FinCategory:
    return _mono_category(sd_objects(s), name=f"Sd({s.name})")


def p_category(s: Sieve) -> FinCategory:
    """The spinal monomorphisms through the sieve."""
    objects = [(p, m) for (p, m) in sd_objects(s) if is_spinal(m)]
    return _mono_category(objects, name=f"P({s.name})")


def coslice_initial_check(
    ambient: FinCategory, sub_objects, x
) -> bool:
    """Does the coslice of x under the (full) subcategory have an initial
    object?  The certified sufficient condition for homotopy cofinality."""
    cos = coslice_category(ambient, sub_objects, x)
    return len(cos.initial_objects()) >= 1


def p_cofinality_check(s: Sieve) -> bool:
    """Every coslice of the spinal monos inside all monos through the sieve
    has an initial object."""
    amb = sd_category(s)
    spinal = [o for o in amb.objects if is_spinal(o[1])]
    return all(
        coslice_initial_check(amb, spinal, x) for x in amb.objects
    )


def all_covers_cofinality_report(t: ThetaObject) -> dict:
    """Run the coslice-has-initial-object check for every proper cover of t.

    Between subobjects there is at most one commuting map, so a coslice of
    the spinal monos under a mono x has an initial object iff the spinal
    monos of the cover through which x factors have a least element in the
    subobject order.  The least element is expected to be the middle of
    the cospinal/spinal-mono factorization of x; if that candidate ever
    fails, an exhaustive minimum search decides the instance.
    """
    from .cellular import cover_mono_sets

    gens, cover_sets = cover_mono_sets(t)
    n = len(gens)
    ident = identity_theta(t)
    id_bit = next(k for k, m in enumerate(gens) if m == ident)
    spinal_mask = 0
    for k, m in enumerate(gens):
        if is_spinal(m):
            spinal_mask |= 1 << k
    # thru[a] has bit f set iff gens[a] factors through gens[f].
    thru = [0] * n
    for a in range(n):
        bits = 0
        for f in range(n):
            if a == f or any(
                compose_theta(gens[f], h) == gens[a]
                for h in hom_set(gens[a].src, gens[f].src)
            ):
                bits |= 1 << f
        thru[a] = bits
    mid_of = []
    for a in range(n):
        _, m = factorize(gens[a])
        mid_of.append(gens.index(m))
    coslices = 0
    fallbacks = 0
    failures = []
    proper = 0
    for members in cover_sets:
        smask = 0
        for k in members:
            smask |= 1 << k
        if (smask >> id_bit) & 1:
            continue  # not a proper cover
        proper += 1
        spinal_in_s = smask & spinal_mask
        for a in members:
            coslices += 1
            f0 = mid_of[a]
            above_a = thru[a] & spinal_in_s
            if (smask >> f0) & 1 and above_a & ~thru[f0] == 0:
                continue
            fallbacks += 1
            found = False
            probe = above_a
            while probe:
                low = probe & -probe
                f = low.bit_length() - 1
                probe &= probe - 1
                if above_a & ~thru[f] == 0:
                    found = True
                    break
            if not found:
                failures.append(
                    {
                        "shape": str(t),
                        "cover_monos": sorted(members),
                        "at": render_morphism(gens[a]),
                    }
                )
    return {
        "shape": str(t),
        "covers": len(cover_sets),
        "proper_covers": proper,
        "coslices_checked": coslices,
        "fallback_searches": fallbacks,
        "failures": failures,
        "ok": not failures,
    }
