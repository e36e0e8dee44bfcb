"""Window-bounded enumeration of presheaf maps and lifting checks.

A map out of a finite presheaf is determined by its values on
nondegenerate cells (epimorphisms split, so every cell is the restriction
of a nondegenerate one along an epi).  Maps are found by backtracking over
those values with every naturality square between window shapes enforced.
A lifting check certifies only what the window can see and reports
`inconclusive` when asked about data outside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .trees import ThetaObject
from .cellular import CellularSet
from .morphisms import ThetaMorphism, compose_theta, hom_set, is_epi


class WindowPresheaf:
    """A snapshot of a cellular set over a fixed window of shapes."""

    def __init__(self, x: CellularSet, window: list[ThetaObject]):
        self.source = x
        self.window = list(window)
        self.cells = {shape: x.cells(shape) for shape in self.window}
        self.tables: dict[ThetaMorphism, dict] = {}
        for b in self.window:
            for a in self.window:
                for f in hom_set(a, b):
                    self.tables[f] = {c: x.restrict(c, f) for c in self.cells[b]}
        self._proper_epis = {
            b: tuple(
                e
                for a in self.window
                for e in hom_set(b, a)
                if a != b and is_epi(e)
            )
            for b in self.window
        }
        # nd[(shape, cell)] = (base_shape, base_cell, epi or None): a fixed
        # decomposition of the cell as a degeneracy of a nondegenerate one.
        self.nd: dict[tuple, tuple] = {}
        for shape in sorted(self.window, key=ThetaObject.sort_key):
            for c in self.cells[shape]:
                self.nd[(shape, c)] = self._decompose(shape, c)
        self.nondegenerate = [
            (shape, c)
            for shape in self.window
            for c in self.cells[shape]
            if self.nd[(shape, c)][2] is None
        ]

    def _decompose(self, shape, c):
        for e in self._proper_epis[shape]:
            for base in self.cells[e.dst]:
                if self.tables[e][base] == c:
                    bs, bc, be = self.nd[(e.dst, base)]
                    total = e if be is None else compose_theta(be, e)
                    return (bs, bc, total)
        return (shape, c, None)

    def restrict(self, cell, f: ThetaMorphism):
        return self.tables[f][cell]


@dataclass
class LiftResult:
    status: str  # "yes" | "no" | "inconclusive"
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def __bool__(self):
        if self.status == "inconclusive":
            raise ValueError("inconclusive lifting result has no truth value")
        return self.status == "yes"


def enumerate_presheaf_maps(
    a: WindowPresheaf,
    x: WindowPresheaf,
    pinned: dict | None = None,
    allowed: dict | None = None,
    max_solutions: int | None = None,
) -> list[dict]:
    """All natural assignments of cells of `a` to cells of `x`.

    pinned maps (shape, cell) to a required value; allowed maps
    (shape, cell) to a set of permitted values.  Both may reference
    degenerate cells.  Returns full cell-by-cell dictionaries.
    """
    nd_cells = list(a.nondegenerate)
    index = {key: i for i, key in enumerate(nd_cells)}

    # Candidate pools, narrowed by pinned/allowed via the decomposition.
    pools: list[list] = []
    for shape, c in nd_cells:
        pools.append(list(x.cells[shape]))
    for key, value in (pinned or {}).items():
        bs, bc, be = a.nd[key]
        i = index[(bs, bc)]
        pools[i] = [
            v
            for v in pools[i]
            if (v if be is None else x.tables[be][v]) == value
        ]
    for key, vals in (allowed or {}).items():
        bs, bc, be = a.nd[key]
        i = index[(bs, bc)]
        vals = set(vals)
        pools[i] = [
            v
            for v in pools[i]
            if (v if be is None else x.tables[be][v]) in vals
        ]

    # Naturality checks: for nondeg cell b and f into its shape, the value
    # of b restricted along f equals the value of nd(b.f) restricted along
    # its degeneracy.  Each check fires once both participants are set.
    checks_at: list[list] = [[] for _ in nd_cells]
    for (shape_b, b) in nd_cells:
        ib = index[(shape_b, b)]
        for src_shape in a.window:
            for f in hom_set(src_shape, shape_b):
                r = a.tables[f][b]
                bs, bc, be = a.nd[(src_shape, r)]
                it = index[(bs, bc)]
                checks_at[max(ib, it)].append((ib, f, it, be))

    solutions: list[dict] = []
    assign: list = [None] * len(nd_cells)

    def ok(j, value) -> bool:
        for ib, f, it, be in checks_at[j]:
            vb = value if ib == j else assign[ib]
            vt = value if it == j else assign[it]
            lhs = x.tables[f][vb]
            rhs = vt if be is None else x.tables[be][vt]
            if lhs != rhs:
                return False
        return True

    def backtrack(j: int):
        if max_solutions is not None and len(solutions) >= max_solutions:
            return
        if j == len(nd_cells):
            full = {}
            for shape in a.window:
                for c in a.cells[shape]:
                    bs, bc, be = a.nd[(shape, c)]
                    v = assign[index[(bs, bc)]]
                    full[(shape, c)] = v if be is None else x.tables[be][v]
            solutions.append(full)
            return
        for value in pools[j]:
            if ok(j, value):
                assign[j] = value
                backtrack(j + 1)
                assign[j] = None
                if max_solutions is not None and len(solutions) >= max_solutions:
                    return

    backtrack(0)
    return solutions


def count_presheaf_maps(a, x, **kw) -> int:
    return len(enumerate_presheaf_maps(a, x, **kw))


def has_rlp(
    sub: CellularSet,
    ambient: CellularSet,
    x: CellularSet,
    window: list[ThetaObject],
    needed: list[ThetaObject] | None = None,
) -> LiftResult:
    """Does every map sub -> x extend along the inclusion sub -> ambient?

    `sub` must be an honest subpresheaf of `ambient` (its cells are cells of
    the ambient set).  `needed` lists the shapes required to present the
    ambient object; when the window misses any, the answer is inconclusive
    rather than silently positive.
    """
    if needed is not None:
        missing = [s for s in needed if s not in set(window)]
        if missing:
            return LiftResult(
                "inconclusive",
                reason=f"window lacks presentation shapes: "
                f"{', '.join(str(m) for m in missing)}",
            )
    wa = WindowPresheaf(sub, window)
    wb = WindowPresheaf(ambient, window)
    wx = WindowPresheaf(x, window)
    for shape in window:
        if not set(wa.cells[shape]) <= set(wb.cells[shape]):
            raise ValueError("sub is not a subpresheaf of ambient on the window")
    for phi in enumerate_presheaf_maps(wa, wx):
        pinned = {key: phi[key] for key in phi}
        extensions = enumerate_presheaf_maps(
            wb, wx, pinned=pinned, max_solutions=1
        )
        if not extensions:
            return LiftResult("no", witness=phi)
    return LiftResult("yes")
