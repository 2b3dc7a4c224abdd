"""The edge-labeled DAG ``H_l(xi)`` whose weighted path sums give the graded
multiplicities of level-``l`` Demazure modules in ``V(xi)``.

Vertices are triples ``(i, j, k)``.  Each one stands for a partition (see
:func:`vertex_partition`).  The two out-edges of a vertex lead to the
vertices of ``xi^+`` (label 0) and ``xi^-`` (label = the grading shift of
the exact sequence).  Sinks correspond to Demazure modules ``D(l, r w)``.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import DomainError, LevelTooSmall, NotAVertex, SinkVertex
from .flags import PartitionLike, as_partition
from .partition import Partition, exponents, from_parts
from .qpoly import ONE, ZERO, QPolynomial

__all__ = [
    "Vertex",
    "Edge",
    "LabeledGraph",
    "res",
    "vertex_set",
    "is_vertex",
    "is_sink",
    "successors",
    "build",
    "vertex_partition",
    "entry_vertex",
    "target_vertex",
    "path_polynomial",
    "path_polynomials_from",
    "multiplicity_via_graph",
    "to_dot",
]


class Vertex(NamedTuple):
    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"({self.i},{self.j},{self.k})"


class Edge(NamedTuple):
    source: Vertex
    target: Vertex
    kind: str  # "plus" or "minus"
    label: int
    jump: bool  # True when the edge changes k


def res(r: int, s: int) -> int:
    """Remainder of ``s`` modulo ``r``, except that multiples of ``r`` give ``r``."""
    if r < 1 or s < 1:
        raise DomainError(f"res needs positive arguments, got r={r}, s={s}")
    return s % r or r


class _Shape:
    """Exponents of ``xi`` padded to the level, with the prefix and suffix
    sums every membership test and label needs."""

    def __init__(self, xi: Partition, l: int):
        if l < 2:
            raise LevelTooSmall(f"the graph needs level >= 2, got {l}")
        self.xi = xi
        self.l = l
        b = (0,) + exponents(xi, l)  # b[m] for m = 1..l
        self.b = b
        # below[k] = sum_{m<k} m b_m ; above[k] = b_k + ... + b_l
        self.below = [0] * (l + 2)
        for k in range(1, l + 2):
            self.below[k] = self.below[k - 1] + (k - 1) * b[k - 1] if k >= 2 else 0
        self.above = [0] * (l + 2)
        for k in range(l, 0, -1):
            self.above[k] = self.above[k + 1] + b[k]

    def contains(self, i: int, j: int, k: int) -> bool:
        l = self.l
        if not (2 <= k <= l) or i < 0 or j < 0:
            return False
        floor = 0 if k == l else k
        return i <= self.below[k] and i - j * k >= floor

    def is_sink(self, v: Vertex) -> bool:
        return v.k == self.l and v.i - v.j * self.l < self.l

    def r_s(self, v: Vertex) -> tuple[int, int]:
        x = v.i - v.j * v.k
        r = res(v.k - 1, x)
        return r, (x - r) // (v.k - 1)

    def jump_target(self, i: int, k: int) -> Vertex:
        # smallest m in [k, l) with (i + sum_{k<=m'<=m} m' b_m', 0, m+1) a vertex;
        # every part size passed over is folded into i, not only m itself
        t = i
        for m in range(k, self.l):
            t += m * self.b[m]
            if self.contains(t, 0, m + 1):
                return Vertex(t, 0, m + 1)
        raise AssertionError(f"no k-jump target from i={i}, k={k} in H_{self.l}({self.xi})")

    def successors(self, v: Vertex) -> tuple[Edge, Edge]:
        if not self.contains(*v):
            raise NotAVertex(f"{v} is not a vertex of H_{self.l}({self.xi})")
        if self.is_sink(v):
            raise SinkVertex(f"{v} is a sink of H_{self.l}({self.xi})")
        i, j, k = v
        l = self.l
        double = k if k == l else 2 * k
        if i - j * k >= double:
            plus = Edge(v, Vertex(i, j + 1, k), "plus", 0, False)
        else:
            plus = Edge(v, self.jump_target(i, k), "plus", 0, True)
        r, s = self.r_s(v)
        label = r * (j + self.above[k] + s)
        if self.contains(i - 2 * r, j, k):
            minus = Edge(v, Vertex(i - 2 * r, j, k), "minus", label, False)
        else:
            minus = Edge(v, self.jump_target(i - 2 * r, k), "minus", label, True)
        return plus, minus

    def partition(self, v: Vertex) -> Partition:
        if not self.contains(*v):
            raise NotAVertex(f"{v} is not a vertex of H_{self.l}({self.xi})")
        i, j, k = v
        l, b = self.l, self.b
        if k == l and i == j * l:
            return Partition((l,) * (b[l] + j))
        r, s = self.r_s(v)
        parts = [r] + [k - 1] * s + [k] * (j + b[k])
        for m in range(k + 1, l + 1):
            parts += [m] * b[m]
        return from_parts(parts)

    def vertices(self) -> list[Vertex]:
        out = []
        for k in range(2, self.l + 1):
            floor = 0 if k == self.l else k
            for i in range(self.below[k] + 1):
                for j in range((i - floor) // k + 1 if i >= floor else 0):
                    out.append(Vertex(i, j, k))
        return sorted(out)


@lru_cache(maxsize=128)
def _shape(xi: Partition, l: int) -> _Shape:
    return _Shape(xi, l)


def vertex_set(xi: PartitionLike, l: int) -> frozenset[Vertex]:
    return frozenset(_shape(as_partition(xi), l).vertices())


def is_vertex(v, xi: PartitionLike, l: int) -> bool:
    return _shape(as_partition(xi), l).contains(*v)


def is_sink(v, xi: PartitionLike, l: int) -> bool:
    sh = _shape(as_partition(xi), l)
    if not sh.contains(*v):
        raise NotAVertex(f"{tuple(v)} is not a vertex")
    return sh.is_sink(Vertex(*v))


def successors(v, xi: PartitionLike, l: int) -> tuple[Edge, Edge]:
    """The plus-edge and minus-edge leaving ``v``."""
    return _shape(as_partition(xi), l).successors(Vertex(*v))


def vertex_partition(v, xi: PartitionLike, l: int) -> Partition:
    """The partition attached to vertex ``v``."""
    return _shape(as_partition(xi), l).partition(Vertex(*v))


def entry_vertex(xi: PartitionLike, l: int) -> Vertex:
    """The vertex standing for ``xi`` itself.

    Normally ``(b_1, 0, 2)``.  When that triple is not a vertex (at most one
    part equal to 1 and ``l > 2``) the first vertex ``(sum_{m<k} m b_m, 0, k)``
    for increasing ``k`` is used instead; both choices satisfy
    ``vertex_partition(entry) == xi``.
    """
    xi = as_partition(xi)
    sh = _shape(xi, l)
    candidates = [Vertex(sh.b[1], 0, 2)]
    candidates += [Vertex(sh.below[k], 0, k) for k in range(3, l + 1)]
    for v in candidates:
        if sh.contains(*v):
            if sh.partition(v) != xi:
                raise AssertionError(f"entry {v} of H_{l}({xi}) maps to {sh.partition(v)}")
            return v
    raise AssertionError(f"no entry vertex for H_{l}({xi})")


def target_vertex(xi: PartitionLike, l: int, r: int) -> Optional[Vertex]:
    """The sink standing for ``D(l, r w)``, or None if ``r`` is out of range."""
    sh = _shape(as_partition(xi), l)
    bl = sh.b[l]
    v = Vertex(r - bl * l, r // l - bl, l)
    return v if sh.contains(*v) else None


@dataclass(frozen=True)
class LabeledGraph:
    xi: Partition
    level: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _out: dict = field(init=False, repr=False, compare=False)
    _order: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        ts = graphlib.TopologicalSorter({v: [e.target for e in out[v]] for v in self.vertices})
        # static_order lists targets before sources; raises CycleError on a cycle
        order = tuple(ts.static_order())
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_order", order)

    def out_edges(self, v: Vertex) -> list[Edge]:
        return self._out[v]

    def __contains__(self, v) -> bool:
        return tuple(v) in self._out

    @property
    def sinks(self) -> list[Vertex]:
        return [v for v in self.vertices if not self._out[v]]

    @property
    def reverse_topological(self) -> tuple[Vertex, ...]:
        """Every vertex after all of its successors."""
        return self._order

    def reachable_from(self, src: Vertex) -> set[Vertex]:
        seen = {src}
        todo = [src]
        while todo:
            for e in self._out[todo.pop()]:
                if e.target not in seen:
                    seen.add(e.target)
                    todo.append(e.target)
        return seen

    def restrict(self, keep) -> "LabeledGraph":
        keep = set(keep)
        return LabeledGraph(
            self.xi,
            self.level,
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e.source in keep and e.target in keep),
        )

    def to_json(self) -> dict:
        return {
            "xi": list(self.xi.parts),
            "level": self.level,
            "vertices": [list(v) for v in self.vertices],
            "edges": [
                {"from": list(e.source), "to": list(e.target), "kind": e.kind, "label": e.label}
                for e in self.edges
            ],
        }


@lru_cache(maxsize=64)
def _build(xi: Partition, l: int) -> LabeledGraph:
    sh = _shape(xi, l)
    verts = sh.vertices()
    edges = []
    for v in verts:
        if not sh.is_sink(v):
            edges.extend(sh.successors(v))
    edges.sort(key=lambda e: (e.source, e.kind != "plus", e.target))
    return LabeledGraph(xi, l, tuple(verts), tuple(edges))


def build(xi: PartitionLike, l: int) -> LabeledGraph:
    """Construct ``H_l(xi)`` with every vertex of the vertex set, reachable
    or not.  Raises ``graphlib.CycleError`` if the result is not acyclic."""
    return _build(as_partition(xi), l)


def path_polynomial(g: LabeledGraph, src, dst) -> QPolynomial:
    """Sum of ``q^(label sum)`` over directed paths from ``src`` to ``dst``.

    Dynamic programming towards ``dst``: each vertex takes the value of its
    plus-successor plus ``q^label`` times that of its minus-successor.
    """
    src, dst = Vertex(*src), Vertex(*dst)
    for v in (src, dst):
        if v not in g:
            raise NotAVertex(f"{v} is not a vertex of the graph")
    live = g.reachable_from(src)
    if dst not in live:
        return ZERO
    val: dict[Vertex, QPolynomial] = {}
    for v in g.reverse_topological:
        if v not in live:
            continue
        if v == dst:
            val[v] = ONE
            continue
        acc = ZERO
        for e in g.out_edges(v):
            p = val[e.target]
            if p:
                acc = acc + p.shift(e.label)
        val[v] = acc
    return val[src]


def path_polynomials_from(g: LabeledGraph, src) -> dict[Vertex, QPolynomial]:
    """``p_{src, v}`` for every vertex ``v`` at once, by pushing weights
    forward from ``src`` in topological order.  Zero entries are omitted."""
    src = Vertex(*src)
    if src not in g:
        raise NotAVertex(f"{src} is not a vertex of the graph")
    val: dict[Vertex, QPolynomial] = {src: ONE}
    for v in reversed(g.reverse_topological):
        p = val.get(v)
        if not p:
            continue
        for e in g.out_edges(v):
            val[e.target] = val.get(e.target, ZERO) + p.shift(e.label)
    return {v: p for v, p in val.items() if p}


def multiplicity_via_graph(xi: PartitionLike, l: int, r: int) -> QPolynomial:
    """``[V(xi) : D(l, r w)]_q`` as a path polynomial from the entry vertex
    to the sink of ``D(l, r w)``."""
    xi = as_partition(xi)
    sh = _shape(xi, l)
    n = xi.weight
    if r < 0 or r > n or (n - r) % 2 or r < sh.b[l] * l:
        return ZERO
    dst = target_vertex(xi, l, r)
    if dst is None:
        return ZERO
    return path_polynomial(build(xi, l), entry_vertex(xi, l), dst)


def to_dot(g: LabeledGraph) -> str:
    """Graphviz source.  Plus-edges are green (same k) or blue (k changes),
    minus-edges black (same k) or red (k changes) and carry their label."""
    name = f"H_{g.level}({g.xi.exponent_string()})"
    lines = [f'digraph "{name}" {{']
    for v in g.vertices:
        shape = ' [shape=box]' if not g.out_edges(v) else ""
        lines.append(f'  "{v}"{shape};')
    colors = {("plus", False): "green", ("plus", True): "blue",
              ("minus", False): "black", ("minus", True): "red"}
    for e in g.edges:
        attrs = [f"color={colors[e.kind, e.jump]}"]
        if e.kind == "minus":
            attrs.append(f'label="{e.label}"')
        lines.append(f'  "{e.source}" -> "{e.target}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
