"""Nerves of finite categories and their one-step suspensions; the
refutation search for interval-homotopy retractions.

The nerve of a category evaluates a shape through its root arity: cells
are object/arrow chains, and deeper structure carries no data because
every shape's hom-layer is connected.  The suspension nerve adds two
endpoint cells and, for each root edge, a chain on the corresponding
child arity.  An independent oracle recounts both nerves by assigning
the globular elements of the shape to the cells of the target, which is
what maps out of a freely generated diagram are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .trees import ThetaObject, elements, enumerate_objects, to_globular_pattern
from .morphisms import (
    DeltaMap,
    ThetaMorphism,
    globe_source_face,
    globe_target_face,
)
from .cellular import CellularSet, product
from .fincat import Arrow, FinCategory, category_from_homs
from .lifting import WindowPresheaf, enumerate_presheaf_maps


def chaotic_groupoid(k: int) -> FinCategory:
    """k objects with exactly one morphism between any ordered pair."""
    if k < 1:
        raise ValueError("need at least one object")
    objects = tuple(range(k))
    return category_from_homs(
        objects,
        lambda x, y: ("!",),
        lambda f, g: "!",
        lambda x: "!",
        name=f"chaotic({k})",
    )


def terminal_category() -> FinCategory:
    return chaotic_groupoid(1)


def arrow_category() -> FinCategory:
    """The poset 0 < 1 as a category."""
    return category_from_homs(
        (0, 1),
        lambda x, y: ("<=",) if x <= y else (),
        lambda f, g: "<=",
        lambda x: "<=",
        name="arrow",
    )


def invertible_morphisms(c: FinCategory) -> tuple[Arrow, ...]:
    return c.invertible_arrows()


# A chain of length n in C: ("chain", objects, arrows); arrows[i] goes from
# objects[i] to objects[i+1].
Chain = tuple


def chains(c: FinCategory, n: int) -> tuple[Chain, ...]:
    out = []

    def go(objs, arrs):
        if len(arrs) == n:
            out.append(("chain", tuple(objs), tuple(arrs)))
            return
        x = objs[-1]
        for y in c.objects:
            for f in c.homs(x, y):
                go(objs + [y], arrs + [f])

    for x in c.objects:
        go([x], [])
    return tuple(out)


def restrict_chain(c: FinCategory, chain: Chain, r: DeltaMap) -> Chain:
    _, objs, arrs = chain
    new_objs = tuple(objs[r(i)] for i in range(r.source + 1))
    new_arrs = []
    for i in range(1, r.source + 1):
        acc = c.identity(objs[r(i - 1)])
        for k in range(r(i - 1), r(i)):
            acc = c.then(acc, arrs[k])
        new_arrs.append(acc)
    return ("chain", new_objs, tuple(new_arrs))


def constant_chain(c: FinCategory, obj, n: int) -> Chain:
    return (
        "chain",
        (obj,) * (n + 1),
        (c.identity(obj),) * n,
    )


def nerve_category(c: FinCategory) -> CellularSet:
    """Cells over a shape are the chains on its root arity; restriction
    acts through the root of a shape morphism."""
    return CellularSet(
        name=f"N({c.name})",
        cells_fn=lambda shape: chains(c, shape.arity),
        restrict_fn=lambda cell, f: restrict_chain(c, cell, f.root),
    )


# Suspension nerve cells: ("const", 0 | 1) or ("cross", i, chain on the
# arity of child i).
def suspension_nerve_cells(c: FinCategory, shape: ThetaObject) -> tuple:
    out = [("const", 0), ("const", 1)]
    for i, child in enumerate(shape.children, 1):
        for ch in chains(c, child.arity):
            out.append(("cross", i, ch))
    return tuple(out)


def restrict_suspension_cell(c: FinCategory, cell, f: ThetaMorphism):
    src, dst = f.src, f.dst
    if cell[0] == "const":
        return cell
    _, p, ch = cell
    # The crossing edge (p-1, p) of dst pulls back along the root of f.
    root = f.root
    for ip in range(1, src.arity + 1):
        if root(ip - 1) < p <= root(ip):
            lab = f.labels[(ip, p)]
            return ("cross", ip, restrict_chain(c, ch, lab.root))
    # No source edge crosses: the restriction is one of the endpoints.
    side = 0 if root(src.arity) < p else 1
    return ("const", side)


def nerve_suspension(c: FinCategory) -> CellularSet:
    """The nerve of the two-object suspension of c: endpoint cells plus,
    per root edge, a chain on the child arity."""
    return CellularSet(
        name=f"N[1]({c.name})",
        cells_fn=lambda shape: suspension_nerve_cells(c, shape),
        restrict_fn=lambda cell, f: restrict_suspension_cell(c, cell, f),
    )


def suspension_section_image(c: FinCategory, shape: ThetaObject, basepoint) -> tuple:
    """The cells of the suspension nerve of the terminal category, embedded
    by the section that picks `basepoint` in c."""
    out = [("const", 0), ("const", 1)]
    for i, child in enumerate(shape.children, 1):
        out.append(("cross", i, constant_chain(c, basepoint, child.arity)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Independent oracles: count cells as assignments of globular elements
# ---------------------------------------------------------------------------


def category_nerve_oracle(c: FinCategory, shape: ThetaObject) -> int:
    """Cells of the nerve recounted as source/target-compatible assignments
    of the globular elements of the shape to objects and arrows."""
    g = elements(shape)
    dims = sorted(g.cells)
    assign: dict = {}
    count = 0

    def values(e, d):
        if d == 0:
            return list(c.objects)
        if d == 1:
            return list(c.homs(assign[g.src[e]], assign[g.tgt[e]]))
        lo, hi = assign[g.src[e]], assign[g.tgt[e]]
        return [lo] if lo == hi else []

    flat = [(d, e) for d in dims for e in g.cells[d]]

    def go(k):
        nonlocal count
        if k == len(flat):
            count += 1
            return
        d, e = flat[k]
        for v in values(e, d):
            assign[e] = v
            go(k + 1)
            del assign[e]

    go(0)
    return count


def suspension_nerve_oracle(c: FinCategory, shape: ThetaObject) -> int:
    """Cells of the suspension nerve recounted the same way; the target has
    two object cells, identity-or-cross arrow cells, and c-morphisms
    between parallel cross cells."""
    g = elements(shape)
    dims = sorted(g.cells)
    assign: dict = {}
    count = 0

    def values(e, d):
        if d == 0:
            return [("v", 0), ("v", 1)]
        if d == 1:
            a, b = assign[g.src[e]], assign[g.tgt[e]]
            if a == b:
                return [("id", a[1])]
            if a == ("v", 0) and b == ("v", 1):
                return [("x", obj) for obj in c.objects]
            return []
        if d == 2:
            a, b = assign[g.src[e]], assign[g.tgt[e]]
            if a[0] == "id" and b[0] == "id":
                return [("2id", a[1])] if a == b else []
            if a[0] == "x" and b[0] == "x":
                return [("2m", f) for f in c.homs(a[1], b[1])]
            return []
        a, b = assign[g.src[e]], assign[g.tgt[e]]
        return [("nid", a)] if a == b else []

    flat = [(d, e) for d in dims for e in g.cells[d]]

    def go(k):
        nonlocal count
        if k == len(flat):
            count += 1
            return
        d, e = flat[k]
        for v in values(e, d):
            assign[e] = v
            go(k + 1)
            del assign[e]

    go(0)
    return count


def suspension_count_formula(c: FinCategory, shape: ThetaObject) -> int:
    """2 + the sum over root edges of the chain count on the child arity."""
    n_chains = {}
    total = 2
    for child in shape.children:
        m = child.arity
        if m not in n_chains:
            n_chains[m] = len(chains(c, m))
        total += n_chains[m]
    return total


# ---------------------------------------------------------------------------
# One-cells of the suspension and their invertibility
# ---------------------------------------------------------------------------


def suspension_one_category(c: FinCategory) -> FinCategory:
    """The category of 0- and 1-cells of the two-object suspension of c:
    two endpoints, and the objects of c as the cells across."""

    def hom_fn(x, y):
        if x == y:
            return ("id",)
        if (x, y) == (0, 1):
            return tuple(("x", obj) for obj in c.objects)
        return ()

    def then_tag(f, g):
        if f == "id":
            return g
        if g == "id":
            return f
        raise AssertionError("no composable cross pairs exist")

    return category_from_homs(
        (0, 1), hom_fn, then_tag, lambda x: "id", name=f"[1]({c.name})_1"
    )


def invertible_one_cells(c: FinCategory) -> tuple[Arrow, ...]:
    """The 1-cells of the suspension of c admitting two-sided inverses."""
    return suspension_one_category(c).invertible_arrows()


# ---------------------------------------------------------------------------
# Spine families and the globular-product property
# ---------------------------------------------------------------------------


def spine_families(x: CellularSet, t: ThetaObject) -> list[tuple]:
    """Families of summand cells matching along the valleys: the maps out
    of the spine of t, equivalently the globular product of cell sets."""
    from .trees import globe

    pattern = to_globular_pattern(t)
    peaks, valleys = pattern.peaks, pattern.valleys
    pools = [x.cells(globe(p)) for p in peaks]
    out = []

    def go(k, acc):
        if k == len(peaks):
            out.append(tuple(acc))
            return
        for cell in pools[k]:
            if k > 0:
                v = valleys[k - 1]
                tau = globe_target_face(v, peaks[k - 1])
                sig = globe_source_face(v, peaks[k])
                if x.restrict(acc[-1], tau) != x.restrict(cell, sig):
                    continue
            go(k + 1, acc + [cell])

    go(0, [])
    return out


def spine_iso_check(x: CellularSet, t: ThetaObject) -> bool:
    """Is restriction along the spine legs a bijection from the cells at t
    to the valley-compatible families?  True exactly when x sends this
    globular sum to a product."""
    from .morphisms import spine_legs

    legs = spine_legs(t)
    families = spine_families(x, t)
    image = {}
    for cell in x.cells(t):
        key = tuple(x.restrict(cell, leg) for leg in legs)
        if key in image:
            return False
        image[key] = cell
    return set(image) == set(families)


# ---------------------------------------------------------------------------
# The interval-homotopy search
# ---------------------------------------------------------------------------


@dataclass
class HomotopySearchReport:
    window: list[str]
    generator_counts: dict
    projection_only_found: bool
    main_solutions: int
    retraction_compatible_solutions: int
    positive_control_solutions: int
    status: str
    witnesses: list = field(default_factory=list)
    note: str = (
        "Bounded search: a qualifying homotopy into a nerve restricts to a "
        "natural isomorphism already determined on shapes of height at most "
        "two, and the window search enumerates every candidate there."
    )

    def to_json(self) -> str:
        return json.dumps(
            {
                "window": self.window,
                "generator_counts": self.generator_counts,
                "projection_only_found": self.projection_only_found,
                "main_solutions": self.main_solutions,
                "retraction_compatible_solutions": self.retraction_compatible_solutions,
                "positive_control_solutions": self.positive_control_solutions,
                "status": self.status,
                "witnesses": self.witnesses,
                "note": self.note,
            },
            indent=2,
        )


def counterexample_search(window: list[ThetaObject] | None = None) -> HomotopySearchReport:
    """Search for interval homotopies contracting the suspension of the
    two-object chaotic groupoid onto its basepoint segment.

    Conditions: (a) at interval time 0 the homotopy is the identity;
    (b) at time 1 it factors through the basepoint segment; the
    retraction-compatible variant additionally fixes the segment
    pointwise at time 1.  The expected outcome is zero solutions even for
    (a)+(b), a projection solution when (b) is dropped, and at least one
    homotopy for the positive control with the interval itself as target.
    """
    if window is None:
        window = enumerate_objects(2, 2)
    needed = set(enumerate_objects(2, 2))
    if not needed <= set(window):
        return HomotopySearchReport(
            window=[str(s) for s in window],
            generator_counts={},
            projection_only_found=False,
            main_solutions=-1,
            retraction_compatible_solutions=-1,
            positive_control_solutions=-1,
            status="inconclusive",
            note="window does not include every shape of height and width two",
        )
    g2 = chaotic_groupoid(2)
    x = nerve_suspension(g2)
    j = nerve_category(g2)
    xj = product(x, j)
    wa = WindowPresheaf(xj, window)
    wx = WindowPresheaf(x, window)

    pinned_a = {}
    allowed_b = {}
    pinned_c = {}
    for shape in window:
        c0 = constant_chain(g2, 0, shape.arity)
        c1 = constant_chain(g2, 1, shape.arity)
        section = set(suspension_section_image(g2, shape, 0))
        for cell in x.cells(shape):
            pinned_a[(shape, (cell, c0))] = cell
            allowed_b[(shape, (cell, c1))] = section
            if cell in section:
                pinned_c[(shape, (cell, c1))] = cell

    main = enumerate_presheaf_maps(wa, wx, pinned=pinned_a, allowed=allowed_b)
    retraction = enumerate_presheaf_maps(
        wa, wx, pinned={**pinned_a, **pinned_c}, allowed=allowed_b
    )
    drop_b = enumerate_presheaf_maps(wa, wx, pinned=pinned_a, max_solutions=4)
    projection_found = any(
        all(phi[(shape, cell)] == cell[0] for shape in window for cell in wa.cells[shape])
        for phi in drop_b
    )
    if not projection_found:
        # The projection is natural and satisfies (a); find it directly.
        proj = {}
        for shape in window:
            for cell in wa.cells[shape]:
                proj[(shape, cell)] = cell[0]
        sols = enumerate_presheaf_maps(wa, wx, pinned=proj, max_solutions=1)
        projection_found = bool(sols)

    wj = WindowPresheaf(j, window)
    pinned_control = {}
    for shape in window:
        c0 = constant_chain(g2, 0, shape.arity)
        c1 = constant_chain(g2, 1, shape.arity)
        for cell in x.cells(shape):
            pinned_control[(shape, (cell, c0))] = c0
            pinned_control[(shape, (cell, c1))] = c1
    control = enumerate_presheaf_maps(
        wa, wj, pinned=pinned_control, max_solutions=2
    )

    ok = (
        len(retraction) == 0
        and len(main) == 0
        and projection_found
        and len(control) >= 1
    )
    witnesses = []
    for phi in main[:3]:
        witnesses.append(
            sorted(
                f"{shape}:{cell} -> {phi[(shape, cell)]}"
                for shape in window
                for cell in wa.cells[shape]
            )[:20]
        )
    return HomotopySearchReport(
        window=[str(s) for s in window],
        generator_counts={
            str(shape): len(wa.cells[shape]) for shape in window
        },
        projection_only_found=projection_found,
        main_solutions=len(main),
        retraction_compatible_solutions=len(retraction),
        positive_control_solutions=len(control),
        status="pass" if ok else "fail",
        witnesses=witnesses,
    )