"""Cell shapes: finite planar trees, globes, globular patterns, element orders.

A shape ``[n](t_1,...,t_n)`` is a rooted planar tree whose root has n
children.  ``[0]`` is the leaf.  The globe ``D_n`` is the n-fold one-child
tree.  Every shape is equivalently a zigzag of globes (a globular pattern),
and its globular elements carry the canonical linear order generated by
``source(x) < x < target(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


class ParseError(ValueError):
    """Malformed shape notation; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ThetaObject:
    """A cell shape, written ``[n](t_1,...,t_n)`` with ``[0]`` atomic."""

    __slots__ = ("children", "_hash")

    def __init__(self, children: tuple["ThetaObject", ...] = ()):
        children = tuple(children)
        for c in children:
            if not isinstance(c, ThetaObject):
                raise TypeError(f"child is not a ThetaObject: {c!r}")
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_hash", hash(children))

    @property
    def arity(self) -> int:
        return len(self.children)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, ThetaObject):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        if not isinstance(other, ThetaObject):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"ThetaObject({render_theta(self)!r})"

    def __str__(self) -> str:
        return render_theta(self)

    # Canonical sort key: by size, then height, then text.
    def sort_key(self) -> tuple:
        return (size(self), height(self), render_theta(self))


LEAF = ThetaObject()


def render_theta(t: ThetaObject) -> str:
    if t.arity == 0:
        return "[0]"
    inner = ",".join(render_theta(c) for c in t.children)
    return f"[{t.arity}]({inner})"


def parse_theta(text: str) -> ThetaObject:
    """Parse canonical notation; inverse of :func:`render_theta`."""
    obj, pos = _parse_obj(text, 0)
    if pos != len(text):
        raise ParseError("trailing characters after object", pos)
    return obj


def _parse_obj(text: str, pos: int) -> tuple[ThetaObject, int]:
    if pos >= len(text) or text[pos] != "[":
        raise ParseError("expected '['", pos)
    end = text.find("]", pos)
    if end < 0:
        raise ParseError("unterminated '['", pos)
    digits = text[pos + 1 : end]
    if not digits.isdigit():
        raise ParseError(f"expected a natural number, got {digits!r}", pos + 1)
    n = int(digits)
    pos = end + 1
    if n == 0:
        return LEAF, pos
    if pos >= len(text) or text[pos] != "(":
        raise ParseError("expected '(' after nonzero arity", pos)
    pos += 1
    children = []
    for i in range(n):
        child, pos = _parse_obj(text, pos)
        children.append(child)
        if i < n - 1:
            if pos >= len(text) or text[pos] != ",":
                raise ParseError(f"expected ',' (child {i + 2} of {n})", pos)
            pos += 1
    if pos >= len(text) or text[pos] != ")":
        raise ParseError(f"expected ')' closing {n} children", pos)
    return ThetaObject(tuple(children)), pos + 1


@lru_cache(maxsize=None)
def height(t: ThetaObject) -> int:
    if t.arity == 0:
        return 0
    return 1 + max(height(c) for c in t.children)


@lru_cache(maxsize=None)
def size(t: ThetaObject) -> int:
    """Number of nodes of the tree."""
    return 1 + sum(size(c) for c in t.children)


@lru_cache(maxsize=None)
def leaf_count(t: ThetaObject) -> int:
    if t.arity == 0:
        return 1
    return sum(leaf_count(c) for c in t.children)


@lru_cache(maxsize=None)
def max_arity(t: ThetaObject) -> int:
    if t.arity == 0:
        return 0
    return max(t.arity, max(max_arity(c) for c in t.children))


def globe(n: int) -> ThetaObject:
    """D_0 = [0]; D_{n+1} = [1](D_n)."""
    t = LEAF
    for _ in range(n):
        t = ThetaObject((t,))
    return t


def delta_collapse(t: ThetaObject) -> int:
    """Root arity; left adjoint to :func:`theta_lift`."""
    return t.arity


def theta_lift(n: int) -> ThetaObject:
    """The width-n, height-1 shape [n]([0],...,[0]) ([0] when n = 0)."""
    return ThetaObject((LEAF,) * n)


def enumerate_objects(max_height: int, max_width: int) -> list[ThetaObject]:
    """All shapes with height <= max_height and every node arity <= max_width.

    Canonically ordered by (size, height, text).
    """
    out = list(iter_objects(max_height, max_width))
    out.sort(key=ThetaObject.sort_key)
    return out


def iter_objects(max_height: int, max_width: int) -> Iterator[ThetaObject]:
    yield LEAF
    if max_height <= 0:
        return
    children_pool = list(iter_objects(max_height - 1, max_width))
    for n in range(1, max_width + 1):
        for combo in _tuples(children_pool, n):
            yield ThetaObject(combo)


def _tuples(pool, n):
    if n == 0:
        yield ()
        return
    for head in pool:
        for rest in _tuples(pool, n - 1):
            yield (head,) + rest


def count_objects(max_height: int, max_width: int) -> int:
    n = 1
    for _ in range(max_height):
        n = 1 + sum(n**k for k in range(1, max_width + 1))
    return n


# ---------------------------------------------------------------------------
# Globular patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GlobularPattern:
    """A zigzag of globes D_{i_1} <- D_{i'_1} -> ... -> D_{i_k}.

    ``peaks`` are the summand heights, ``valleys`` the gluing heights; each
    valley must be strictly below both of its neighbouring peaks.
    """

    peaks: tuple[int, ...]
    valleys: tuple[int, ...]

    def __post_init__(self):
        if len(self.peaks) < 1:
            raise ValueError("a pattern has at least one summand")
        if len(self.valleys) != len(self.peaks) - 1:
            raise ValueError("need exactly one valley between consecutive peaks")
        for j, v in enumerate(self.valleys):
            if v >= min(self.peaks[j], self.peaks[j + 1]):
                raise ValueError(
                    f"valley {v} at index {j} not below peaks "
                    f"{self.peaks[j]}, {self.peaks[j + 1]}"
                )


def to_globular_pattern(t: ThetaObject) -> GlobularPattern:
    """Unfold the wreath tree into its zigzag of globes."""
    if t.arity == 0:
        return GlobularPattern((0,), ())
    peaks: list[int] = []
    valleys: list[int] = []
    for i, child in enumerate(t.children):
        sub = to_globular_pattern(child)
        if i > 0:
            valleys.append(0)
        peaks.extend(p + 1 for p in sub.peaks)
        valleys.extend(v + 1 for v in sub.valleys)
    return GlobularPattern(tuple(peaks), tuple(valleys))


def from_globular_pattern(p: GlobularPattern) -> ThetaObject:
    """Refold a zigzag into its tree; inverse of :func:`to_globular_pattern`."""
    if p.peaks == (0,):
        return LEAF
    if any(peak == 0 for peak in p.peaks):
        # Valley constraint forbids a 0 peak next to anything.
        raise ValueError("peak of height 0 in a multi-summand pattern")
    # Split at height-0 valleys; each group is a suspended child pattern.
    children = []
    start = 0
    boundaries = [j for j, v in enumerate(p.valleys) if v == 0]
    for b in boundaries + [len(p.peaks) - 1]:
        if b == len(p.peaks) - 1:
            group_peaks = p.peaks[start:]
            group_valleys = p.valleys[start : len(p.peaks) - 1]
        else:
            group_peaks = p.peaks[start : b + 1]
            group_valleys = p.valleys[start:b]
        sub = GlobularPattern(
            tuple(q - 1 for q in group_peaks), tuple(v - 1 for v in group_valleys)
        )
        children.append(from_globular_pattern(sub))
        start = b + 1
    return ThetaObject(tuple(children))


# ---------------------------------------------------------------------------
# Globular elements and the element order
# ---------------------------------------------------------------------------

# An element of dimension d is (path, vertex): `path` descends d levels into
# the tree (1-based child indices) and `vertex` indexes a root vertex of the
# subtree there.  Dimension-(d+1) elements of [n](t_1..t_n) are pairs (i, e)
# with e a dimension-d element of t_i.
Element = tuple[tuple[int, ...], int]


class FinGlobularSet:
    """A finite diagram of cells with source/target maps between dimensions."""

    def __init__(
        self,
        cells: dict[int, tuple],
        src: dict,
        tgt: dict,
    ):
        self.cells = {d: tuple(cs) for d, cs in cells.items() if cs}
        self.src = dict(src)
        self.tgt = dict(tgt)
        self._validate()

    def _validate(self):
        dims = sorted(self.cells)
        if dims and (dims[0] != 0 or dims != list(range(len(dims)))):
            raise ValueError("cell dimensions must form a range starting at 0")
        for d in dims:
            if d == 0:
                continue
            for x in self.cells[d]:
                for m, name in ((self.src, "source"), (self.tgt, "target")):
                    if x not in m:
                        raise ValueError(f"missing {name} for {x!r}")
                    if m[x] not in set(self.cells[d - 1]):
                        raise ValueError(f"{name} of {x!r} is not a cell below")
            if d >= 2:
                for x in self.cells[d]:
                    s, t = self.src[x], self.tgt[x]
                    if self.src[s] != self.src[t] or self.tgt[s] != self.tgt[t]:
                        raise ValueError(f"globular identities fail at {x!r}")

    def all_elements(self) -> list:
        return [x for d in sorted(self.cells) for x in self.cells[d]]

    def dimension_of(self, x) -> int:
        for d, cs in self.cells.items():
            if x in cs:
                return d
        raise KeyError(x)

    def is_empty(self) -> bool:
        return not self.cells


@lru_cache(maxsize=None)
def elements(t: ThetaObject) -> FinGlobularSet:
    """The globular elements of a shape with stable path-based ids."""
    cells: dict[int, list[Element]] = {0: [((), v) for v in range(t.arity + 1)]}
    src: dict[Element, Element] = {}
    tgt: dict[Element, Element] = {}

    # A dimension-(d+1) element (p + (i,), v) sits between the vertices i-1
    # and i of the node at path p, one dimension down.
    def add(prefix: tuple[int, ...], sub: ThetaObject):
        d = len(prefix)
        for i, child in enumerate(sub.children, 1):
            path = prefix + (i,)
            for v in range(child.arity + 1):
                e = (path, v)
                cells.setdefault(d + 1, []).append(e)
                src[e] = (prefix, i - 1)
                tgt[e] = (prefix, i)
            add(path, child)

    add((), t)
    return FinGlobularSet({d: tuple(cs) for d, cs in cells.items()}, src, tgt)


@dataclass(frozen=True)
class StreetOrder:
    """Reflexive-transitive closure of source(x) < x < target(x)."""

    elements: tuple
    leq: frozenset  # pairs (a, b) meaning a is below-or-equal b

    def is_below(self, a, b) -> bool:
        return (a, b) in self.leq

    def is_linear(self) -> bool:
        els = self.elements
        for a in els:
            for b in els:
                below = (a, b) in self.leq
                above = (b, a) in self.leq
                if not (below or above):
                    return False
                if below and above and a != b:
                    return False
        return True

    def sorted_elements(self) -> list:
        if not self.is_linear():
            raise ValueError("order is not linear")
        return sorted(
            self.elements, key=lambda a: sum((b, a) in self.leq for b in self.elements)
        )


def street_order_of(g: FinGlobularSet) -> StreetOrder:
    els = g.all_elements()
    index = {x: k for k, x in enumerate(els)}
    n = len(els)
    reach = [set([k]) for k in range(n)]
    for d in sorted(g.cells):
        if d == 0:
            continue
        for x in g.cells[d]:
            reach[index[g.src[x]]].add(index[x])
            reach[index[x]].add(index[g.tgt[x]])
    # Transitive closure (tiny element counts; cubic walk is fine).
    changed = True
    while changed:
        changed = False
        for k in range(n):
            extra = set()
            for j in reach[k]:
                extra |= reach[j]
            if not extra <= reach[k]:
                reach[k] |= extra
                changed = True
    leq = frozenset((els[a], els[b]) for a in range(n) for b in reach[a])
    return StreetOrder(tuple(els), leq)


def street_order(t: ThetaObject) -> StreetOrder:
    return street_order_of(elements(t))


def is_theta0_object(g: FinGlobularSet) -> bool:
    """True iff the element order of g is a (nonempty) finite linear order."""
    if g.is_empty():
        return False
    return street_order_of(g).is_linear()
