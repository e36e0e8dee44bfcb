"""The intertwining functor on finite inputs, suspension, mapping objects.

A labeled simplex V[m](A_1,...,A_m) evaluates on a shape [q](c_1,...,c_q)
as a sum over monotone maps d: [q] -> [m] of products of label values: one
factor A_j(c_i) for every slot d(i-1) < j <= d(i).  With representable
labels this is literally the wreath description of a hom-set, which is the
tested degenerate case.  The one-label instance is the suspension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .trees import LEAF, ThetaObject
from .cellular import CellularSet
from .morphisms import (
    DeltaMap,
    ThetaMorphism,
    delta_maps,
    identity_theta,
)


@dataclass(frozen=True)
class LabeledSimplex:
    """A simplex arity together with one lower-level presheaf per slot."""

    arity: int
    labels: tuple[CellularSet, ...]

    def __post_init__(self):
        if len(self.labels) != self.arity:
            raise ValueError("need exactly one label per slot")


# A cell is (delta_values, ((i, j), lower_cell) sorted by slot).
VCell = tuple[tuple[int, ...], tuple]


def v_eval(ls: LabeledSimplex, shape: ThetaObject) -> tuple[VCell, ...]:
    out: list[VCell] = []
    q = shape.arity
    for delta in delta_maps(q, ls.arity):
        slots = [
            (i, j)
            for i in range(1, q + 1)
            for j in range(delta(i - 1) + 1, delta(i) + 1)
        ]
        pools = [
            ls.labels[j - 1].cells(shape.children[i - 1]) for (i, j) in slots
        ]
        out.extend(
            (delta.values, tuple(zip(slots, combo)))
            for combo in _product(pools)
        )
    return tuple(out)


def _product(pools):
    if not pools:
        yield ()
        return
    head, *rest = pools
    for h in head:
        for r in _product(rest):
            yield (h,) + r


def v_restrict(ls: LabeledSimplex, cell: VCell, f: ThetaMorphism) -> VCell:
    """Contravariant action along f: a -> b for a cell at b."""
    delta_values, labels = cell
    labdict = dict(labels)
    delta = DeltaMap(f.dst.arity, ls.arity, delta_values)
    root = f.root
    new_values = tuple(delta(v) for v in root.values)
    new_labels = []
    for ip in range(1, f.src.arity + 1):
        for j in range(delta(root(ip - 1)) + 1, delta(root(ip)) + 1):
            i = _slot_through(delta, root, ip, j)
            lowered = ls.labels[j - 1].restrict(
                labdict[(i, j)], f.labels[(ip, i)]
            )
            new_labels.append(((ip, j), lowered))
    return (new_values, tuple(new_labels))


def _slot_through(delta: DeltaMap, root: DeltaMap, ip: int, j: int) -> int:
    for i in range(root(ip - 1) + 1, root(ip) + 1):
        if delta(i - 1) < j <= delta(i):
            return i
    raise AssertionError("slot reindexing failed in labeled-simplex restriction")


def v_cellular(ls: LabeledSimplex) -> CellularSet:
    return CellularSet(
        name=f"V[{ls.arity}]({','.join(x.name for x in ls.labels)})",
        cells_fn=lambda shape: v_eval(ls, shape),
        restrict_fn=lambda cell, f: v_restrict(ls, cell, f),
    )


def suspension(x: CellularSet) -> CellularSet:
    """The one-slot labeled simplex on x: two endpoints plus a copy of x
    across each root edge."""
    return v_cellular(LabeledSimplex(1, (x,)))


def suspension_vertices(shape: ThetaObject = LEAF) -> tuple[VCell, VCell]:
    """The two endpoint cells of any suspension, evaluated at [0]."""
    return (((0,), ()), ((1,), ()))


def suspension_of_map(
    a: CellularSet, b: CellularSet, component
) -> "tuple[CellularSet, CellularSet, object]":
    """Carry a cellwise map a -> b to a map of suspensions; returns the two
    suspensions and the induced component function."""
    sa, sb = suspension(a), suspension(b)

    def induced(cell: VCell, shape: ThetaObject) -> VCell:
        delta_values, labels = cell
        return (
            delta_values,
            tuple(
                ((i, j), component(low, shape.children[i - 1]))
                for (i, j), low in labels
            ),
        )

    return sa, sb, induced


def vertex_map(t: ThetaObject, vertex: int) -> ThetaMorphism:
    """The map [0] -> t picking a root vertex."""
    return ThetaMorphism(LEAF, t, DeltaMap(0, t.arity, (vertex,)), {})


def mapping_object(x: CellularSet, x0, x1) -> CellularSet:
    """The lower-level presheaf of cells of x over one-slot shapes whose two
    endpoints restrict to x0 and x1."""
    if x0 not in x.cells(LEAF) or x1 not in x.cells(LEAF):
        raise ValueError("endpoints must be vertex cells of x")

    def cells(c: ThetaObject):
        seg = ThetaObject((c,))
        v0, v1 = vertex_map(seg, 0), vertex_map(seg, 1)
        return tuple(
            z
            for z in x.cells(seg)
            if x.restrict(z, v0) == x0 and x.restrict(z, v1) == x1
        )

    def restrict(cell, g: ThetaMorphism):
        seg_map = ThetaMorphism(
            ThetaObject((g.src,)),
            ThetaObject((g.dst,)),
            DeltaMap(1, 1, (0, 1)),
            {(1, 1): g},
        )
        return x.restrict(cell, seg_map)

    return CellularSet(
        name=f"{x.name}({x0},{x1})", cells_fn=cells, restrict_fn=restrict
    )


def partition_factors(
    before: tuple[CellularSet, ...],
    middle: CellularSet,
    after: tuple[CellularSet, ...],
    shape: ThetaObject,
) -> dict[int, tuple[VCell, ...]]:
    """Group the cells of V[m+1+n](before..., middle, after...) on a shape
    by the crossing index of the middle slot: p = 0 when the root map stays
    beyond the middle, p = q+1 when it stays before, and p in 1..q when
    slot p carries the middle factor."""
    m, n = len(before), len(after)
    ls = LabeledSimplex(m + 1 + n, before + (middle,) + after)
    q = shape.arity
    groups: dict[int, list[VCell]] = {p: [] for p in range(q + 2)}
    for cell in v_eval(ls, shape):
        delta = cell[0]
        if delta[0] >= m + 1:
            groups[0].append(cell)
        elif delta[q] <= m:
            groups[q + 1].append(cell)
        else:
            p = next(i for i in range(1, q + 1) if delta[i - 1] <= m < delta[i])
            groups[p].append(cell)
    return {p: tuple(cs) for p, cs in groups.items()}
