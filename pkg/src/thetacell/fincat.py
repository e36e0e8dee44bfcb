"""Small finite categories and functors, with brute-force structure checks.

Everything is materialized: objects, arrows, a full composition table.
Construction validates the unit and associativity laws, so categories built
from combinatorial data fail fast when the data is inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional


@dataclass(frozen=True)
class Arrow:
    src: object
    tgt: object
    tag: object

    def __repr__(self):
        return f"{self.tag}: {self.src} -> {self.tgt}"


class FinCategory:
    def __init__(
        self,
        objects: Iterable,
        arrows: Iterable[Arrow],
        then_fn: Callable[[Arrow, Arrow], Arrow],
        identity_fn: Callable[[object], Arrow],
        name: str = "",
    ):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        objset = set(self.objects)
        arrset = set(self.arrows)
        for a in self.arrows:
            if a.src not in objset or a.tgt not in objset:
                raise ValueError(f"dangling arrow {a!r}")
        self._id = {}
        for x in self.objects:
            ida = identity_fn(x)
            if ida not in arrset or ida.src != x or ida.tgt != x:
                raise ValueError(f"bad identity at {x!r}")
            self._id[x] = ida
        self._by_src: dict[object, list[Arrow]] = {x: [] for x in self.objects}
        for a in self.arrows:
            self._by_src[a.src].append(a)
        self._then = {}
        for f in self.arrows:
            for g in self._by_src[f.tgt]:
                h = then_fn(f, g)
                if h not in arrset or h.src != f.src or h.tgt != g.tgt:
                    raise ValueError(f"composite of {f!r} and {g!r} escapes")
                self._then[(f, g)] = h
        self._validate()
        self._homs: dict[tuple, tuple[Arrow, ...]] = {}
        for f in self.arrows:
            key = (f.src, f.tgt)
            self._homs[key] = self._homs.get(key, ()) + (f,)

    def _validate(self):
        for f in self.arrows:
            if self.then(self._id[f.src], f) != f or self.then(f, self._id[f.tgt]) != f:
                raise ValueError(f"unit law fails at {f!r}")
        for f in self.arrows:
            for g in self._by_src[f.tgt]:
                fg = self.then(f, g)
                for h in self._by_src[g.tgt]:
                    if self.then(fg, h) != self.then(f, self.then(g, h)):
                        raise ValueError(f"associativity fails at {f!r};{g!r};{h!r}")

    def then(self, f: Arrow, g: Arrow) -> Arrow:
        """g after f."""
        return self._then[(f, g)]

    def identity(self, x) -> Arrow:
        return self._id[x]

    def homs(self, x, y) -> tuple[Arrow, ...]:
        return self._homs.get((x, y), ())

    def arrows_from(self, x) -> tuple[Arrow, ...]:
        return tuple(self._by_src[x])

    def is_invertible(self, f: Arrow) -> bool:
        return any(
            self.then(f, g) == self._id[f.src] and self.then(g, f) == self._id[f.tgt]
            for g in self.homs(f.tgt, f.src)
        )

    def invertible_arrows(self) -> tuple[Arrow, ...]:
        return tuple(f for f in self.arrows if self.is_invertible(f))

    def is_initial(self, x) -> bool:
        return all(len(self.homs(x, y)) == 1 for y in self.objects)

    def initial_objects(self) -> tuple:
        return tuple(x for x in self.objects if self.is_initial(x))

    def __repr__(self):
        return (
            f"FinCategory({self.name}: {len(self.objects)} objects, "
            f"{len(self.arrows)} arrows)"
        )


def category_from_homs(
    objects: Iterable,
    hom_fn: Callable[[object, object], Iterable],
    then_tag: Callable[[object, object], object],
    identity_tag: Callable[[object], object],
    name: str = "",
) -> FinCategory:
    """Build a category whose arrows are Arrow(src, tgt, tag) for each tag
    produced by hom_fn; tags compose by then_tag."""
    objects = tuple(objects)
    arrows = [
        Arrow(x, y, tag) for x in objects for y in objects for tag in hom_fn(x, y)
    ]

    def then_fn(f: Arrow, g: Arrow) -> Arrow:
        return Arrow(f.src, g.tgt, then_tag(f.tag, g.tag))

    def identity_fn(x) -> Arrow:
        return Arrow(x, x, identity_tag(x))

    return FinCategory(objects, arrows, then_fn, identity_fn, name=name)


def product_category(factors: list[FinCategory], name: str = "") -> FinCategory:
    objects = [()]
    for cat in factors:
        objects = [o + (x,) for o in objects for x in cat.objects]
    arrow_tuples = [()]
    for cat in factors:
        arrow_tuples = [a + (f,) for a in arrow_tuples for f in cat.arrows]
    arrows = [
        Arrow(tuple(f.src for f in fs), tuple(f.tgt for f in fs), fs)
        for fs in arrow_tuples
    ]

    def then_fn(f: Arrow, g: Arrow) -> Arrow:
        tags = tuple(
            factors[i].then(f.tag[i], g.tag[i]) for i in range(len(factors))
        )
        return Arrow(f.src, g.tgt, tags)

    def identity_fn(x) -> Arrow:
        tags = tuple(factors[i].identity(x[i]) for i in range(len(factors)))
        return Arrow(x, x, tags)

    return FinCategory(objects, arrows, then_fn, identity_fn, name=name)


def coslice_category(
    ambient: FinCategory, sub_objects: Iterable, x, name: str = ""
) -> FinCategory:
    """Objects: arrows x -> k of the ambient category with k in the (full)
    subcategory; morphisms: commuting triangles."""
    sub = set(sub_objects)
    objects = [
        (k, a) for k in ambient.objects if k in sub for a in ambient.homs(x, k)
    ]

    def hom_fn(o1, o2):
        (k1, a1), (k2, a2) = o1, o2
        return tuple(
            u for u in ambient.homs(k1, k2) if ambient.then(a1, u) == a2
        )

    def then_tag(u, v):
        return ambient.then(u, v)

    def identity_tag(o):
        return ambient.identity(o[0])

    return category_from_homs(objects, hom_fn, then_tag, identity_tag, name=name)


@dataclass(frozen=True)
class FinFunctor:
    src: FinCategory
    dst: FinCategory
    omap: tuple  # pairs (object, image)
    amap: tuple  # pairs (arrow, image)

    @staticmethod
    def build(src, dst, omap: dict, amap: dict) -> "FinFunctor":
        f = FinFunctor(src, dst, tuple(omap.items()), tuple(amap.items()))
        f.validate()
        return f

    def on_object(self, x):
        return dict(self.omap)[x]

    def on_arrow(self, a: Arrow) -> Arrow:
        return dict(self.amap)[a]

    def validate(self):
        om, am = dict(self.omap), dict(self.amap)
        if set(om) != set(self.src.objects):
            raise ValueError("object map does not cover the source")
        if set(am) != set(self.src.arrows):
            raise ValueError("arrow map does not cover the source")
        for x in self.src.objects:
            if am[self.src.identity(x)] != self.dst.identity(om[x]):
                raise ValueError(f"identities not preserved at {x!r}")
        for f in self.src.arrows:
            img = am[f]
            if img.src != om[f.src] or img.tgt != om[f.tgt]:
                raise ValueError(f"arrow image endpoints wrong at {f!r}")
            for g in self.src.arrows:
                if f.tgt != g.src:
                    continue
                if am[self.src.then(f, g)] != self.dst.then(am[f], am[g]):
                    raise ValueError(f"composition not preserved at {f!r};{g!r}")

    def is_isomorphism(self) -> bool:
        om, am = dict(self.omap), dict(self.amap)
        return (
            len(set(om.values())) == len(self.src.objects) == len(self.dst.objects)
            and len(set(am.values())) == len(self.src.arrows) == len(self.dst.arrows)
        )


def fiber_category(f: FinFunctor, q, name: str = "") -> FinCategory:
    """Objects over q and arrows over the identity of q."""
    om, am = dict(f.omap), dict(f.amap)
    idq = f.dst.identity(q)
    objects = [x for x in f.src.objects if om[x] == q]
    objset = set(objects)
    arrows = [
        a
        for a in f.src.arrows
        if a.src in objset and a.tgt in objset and am[a] == idq
    ]

    def then_fn(a, b):
        return f.src.then(a, b)

    def identity_fn(x):
        return f.src.identity(x)

    return FinCategory(objects, arrows, then_fn, identity_fn, name=name)


def find_opcartesian_lift(
    f: FinFunctor, e, u: Arrow
) -> Optional[Arrow]:
    """An arrow out of e over u satisfying the universal factorization
    property, found by exhaustive search; None if there is none."""
    om, am = dict(f.omap), dict(f.amap)
    if u.src != om[e]:
        raise ValueError("arrow does not start at the image of e")
    for phi in f.src.arrows_from(e):
        if am[phi] != u:
            continue
        if _is_opcartesian(f, phi, om, am):
            return phi
    return None


def _is_opcartesian(f: FinFunctor, phi: Arrow, om, am) -> bool:
    u = am[phi]
    for psi in f.src.arrows_from(phi.src):
        for w in f.dst.homs(u.tgt, am[psi].tgt):
            if f.dst.then(u, w) != am[psi]:
                continue
            fillers = [
                chi
                for chi in f.src.homs(phi.tgt, psi.tgt)
                if am[chi] == w and f.src.then(phi, chi) == psi
            ]
            if len(fillers) != 1:
                return False
    return True


def is_opfibration(f: FinFunctor) -> bool:
    """Every arrow out of an image admits an opcartesian lift."""
    om = dict(f.omap)
    for e in f.src.objects:
        for u in f.dst.arrows_from(om[e]):
            if find_opcartesian_lift(f, e, u) is None:
                return False
    return True
