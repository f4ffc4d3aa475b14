"""Undirected graphs, RHG lattice construction, distances and graph I/O.

RHG lattices use the half-integer cube convention: a cell of side 2 has
qubits on the midpoints of its 12 edges (one odd coordinate) and on the
centres of its 6 faces (two odd coordinates). Two qubits are joined when
their coordinates differ by one unit along a single axis, which links every
face qubit to the four edge qubits bounding its face.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from graphcheck.errors import ParseError, SpecInvalid, VertexOutOfRange
from graphcheck.pauli import SinglePauli, SparsePauli

UNREACHABLE = math.inf
"""Distance reported between vertices in different components."""

Coord = tuple[int, int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``.

    Build instances with :meth:`from_edges` (or :func:`build_rhg`) rather
    than the raw constructor; it validates and canonicalises the adjacency.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    coords: tuple[Coord, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        coords: Sequence[Sequence[int]] | None = None,
        *,
        allow_duplicates: bool = False,
    ) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        neighbours: list[set[int]] = [set() for _ in range(n)]
        for edge in edges:
            u, v = (int(x) for x in edge)
            for w in (u, v):
                if not 0 <= w < n:
                    raise VertexOutOfRange(f"edge ({u}, {v}) references vertex {w} outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in neighbours[u] and not allow_duplicates:
                raise ValueError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            neighbours[u].add(v)
            neighbours[v].add(u)
        if coords is not None:
            if len(coords) != n:
                raise ValueError(f"expected {n} coordinates, got {len(coords)}")
            coords = tuple(tuple(int(c) for c in xyz) for xyz in coords)
            if any(len(xyz) != 3 for xyz in coords):
                raise ValueError("coordinates must be 3-vectors")
        return cls(n, tuple(tuple(sorted(nb)) for nb in neighbours), coords)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise VertexOutOfRange(f"vertex {v} outside 0..{self.vertex_count - 1}")

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled in ascending id order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        keep = sorted(set(vertices))
        for v in keep:
            self._check(v)
        index = {old: new for new, old in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        coords = [self.coords[v] for v in keep] if self.coords is not None else None
        return Graph.from_edges(len(keep), edges, coords), keep


@dataclass(frozen=True)
class RhgSpec:
    cells: tuple[int, int, int]
    boundary: Literal["open", "periodic"] = "periodic"

    def validate(self) -> None:
        if len(self.cells) != 3:
            raise SpecInvalid(f"need three cell counts, got {self.cells!r}")
        if any(not isinstance(c, int) or c < 1 for c in self.cells):
            raise SpecInvalid(f"cell counts must be positive integers, got {self.cells!r}")
        if self.boundary not in ("open", "periodic"):
            raise SpecInvalid(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        if self.boundary == "periodic" and min(self.cells) < 2:
            raise SpecInvalid("periodic boundaries need at least 2 cells along every axis")


def _is_rhg_point(xyz: Coord) -> bool:
    return sum(c & 1 for c in xyz) in (1, 2)


def build_rhg(spec: RhgSpec) -> Graph:
    """Build the RHG lattice graph described by ``spec``.

    Vertex ids follow lexicographic ``(x, y, z)`` order. Periodic lattices
    use coordinates ``0 <= x < 2*Lx`` with wraparound; open lattices use
    ``0 <= x <= 2*Lx`` so the outermost faces are complete.
    """
    spec.validate()
    periodic = spec.boundary == "periodic"
    extent = tuple(2 * c if periodic else 2 * c + 1 for c in spec.cells)
    points = [
        xyz for xyz in itertools.product(*(range(e) for e in extent)) if _is_rhg_point(xyz)
    ]
    index = {xyz: i for i, xyz in enumerate(points)}
    edges = []
    for i, xyz in enumerate(points):
        for axis in range(3):
            other = list(xyz)
            other[axis] += 1
            if periodic:
                other[axis] %= extent[axis]
            j = index.get(tuple(other))
            if j is not None:
                edges.append((i, j))
    return Graph.from_edges(len(points), edges, points)


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    g._check(v)
    return frozenset(g.adjacency[v])


def ball(g: Graph, v: int, radius: int) -> set[int]:
    """All vertices within ``radius`` hops of ``v``, including ``v``."""
    g._check(v)
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def graph_distance(g: Graph, u: int, v: int) -> int | float:
    """Shortest-path length between ``u`` and ``v``, or :data:`UNREACHABLE`."""
    g._check(u)
    g._check(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in g.adjacency[a]:
            if b not in dist:
                if b == v:
                    return dist[a] + 1
                dist[b] = dist[a] + 1
                queue.append(b)
    return UNREACHABLE


def stabilizer_generator(g: Graph, v: int) -> SparsePauli:
    """X on ``v`` and Z on each neighbour of ``v``."""
    g._check(v)
    terms = {u: SinglePauli.Z for u in g.adjacency[v]}
    terms[v] = SinglePauli.X
    return SparsePauli(terms)


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def _fail(message: str, field: str | None = None, line: int | None = None) -> ParseError:
    where = []
    if line is not None:
        where.append(f"line {line}")
    if field is not None:
        where.append(f"field {field!r}")
    prefix = f"{', '.join(where)}: " if where else ""
    return ParseError(prefix + message)


def load_graph(data: bytes | str) -> Graph:
    """Parse a graph from its JSON edge-list form.

    Schema: ``{"n": int, "edges": [[u, v], ...], "coords": [[x, y, z], ...]}``
    with ``coords`` optional.

    Raises:
        ParseError: on malformed JSON, schema violations, out-of-range ids,
            self-loops or duplicate edges.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise _fail(f"not UTF-8 text ({exc})") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise _fail(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise _fail("top-level value must be an object")
    unknown = set(doc) - {"n", "edges", "coords"}
    if unknown:
        raise _fail(f"unknown keys {sorted(unknown)}")

    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise _fail("must be a nonnegative integer", field="n")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise _fail("must be a list of [u, v] pairs", field="edges")
    seen: set[tuple[int, int]] = set()
    for k, edge in enumerate(edges):
        field = f"edges[{k}]"
        if (
            not isinstance(edge, list)
            or len(edge) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in edge)
        ):
            raise _fail("must be a pair of integers", field=field)
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise _fail(f"vertex id out of range 0..{n - 1}", field=field)
        if u == v:
            raise _fail("self-loop", field=field)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise _fail(f"duplicate edge {list(key)}", field=field)
        seen.add(key)

    coords = doc.get("coords")
    if coords is not None:
        if not isinstance(coords, list) or len(coords) != n:
            raise _fail(f"must be a list of {n} [x, y, z] triples", field="coords")
        for k, xyz in enumerate(coords):
            if (
                not isinstance(xyz, list)
                or len(xyz) != 3
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in xyz)
            ):
                raise _fail("must be an integer triple", field=f"coords[{k}]")
    return Graph.from_edges(n, edges, coords)


def export_graph(g: Graph, format: Literal["json", "dot"] = "json") -> bytes:
    """Serialise ``g`` as JSON (loadable by :func:`load_graph`) or Graphviz DOT."""
    if format == "json":
        doc: dict = {"n": g.vertex_count, "edges": [list(e) for e in g.edges()]}
        if g.coords is not None:
            doc["coords"] = [list(c) for c in g.coords]
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    if format == "dot":
        lines = ["graph G {"]
        for v in range(g.vertex_count):
            attrs = f'label="{v}"'
            if g.coords is not None:
                x, y, z = g.coords[v]
                attrs += f', pos="{x},{y},{z}"'
            lines.append(f"  {v} [{attrs}];")
        lines.extend(f"  {u} -- {v};" for u, v in g.edges())
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {format!r}")
