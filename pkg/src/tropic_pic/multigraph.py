"""Loopless connected multigraphs and their divisor theory.

A divisor on a graph is an integer vector indexed by the vertex order.
The Laplacian here follows the convention with *negative* diagonal
(-deg on the diagonal, adjacency counts off it), so that column j is
exactly the divisor of the piecewise-linear function that is 1 on
vertex j and 0 elsewhere.

Graph text format (one item per line, ``#`` starts a comment)::

    v <vertex-id>
    e <edge-id> <endpoint> <endpoint>

Parallel edges are allowed (distinct edge ids, same endpoints); loops
and disconnected graphs are rejected at construction.
"""

from __future__ import annotations

import heapq
import random
from typing import Sequence

from .exact_lattice import (
    AbGroup,
    IntMatrix,
    Lattice,
    cokernel,
    det,
    lattice_member,
)


class GraphError(ValueError):
    """Invalid graph construction or query."""


class GraphParseError(GraphError):
    """Text-format parse failure; message carries the line number."""


class Multigraph:
    """Immutable loopless connected multigraph with ordered IDs.

    ``vertices`` is the fixed vertex order, ``edges`` the fixed edge
    order as (edge_id, u, w) triples.  By default both lists are sorted
    by ID at construction; pass ``sort_ids=False`` to keep the given
    order.
    """

    __slots__ = ("vertices", "edges", "_vindex", "_eindex", "_adj")

    def __init__(self, vertices: Sequence, edges: Sequence, *, sort_ids: bool = True):
        vs = list(vertices)
        es = [(e[0], e[1], e[2]) for e in edges]
        if sort_ids:
            vs.sort()
            es.sort(key=lambda t: t[0])
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex ids")
        if len({e[0] for e in es}) != len(es):
            raise GraphError("duplicate edge ids")
        vset = set(vs)
        for eid, u, w in es:
            if u == w:
                raise GraphError(f"loop edge {eid!r} at vertex {u!r}")
            if u not in vset or w not in vset:
                raise GraphError(f"edge {eid!r} has unknown endpoint")
        self.vertices = tuple(vs)
        self.edges = tuple(es)
        self._vindex = {v: i for i, v in enumerate(vs)}
        self._eindex = {e[0]: i for i, e in enumerate(es)}
        adj = {v: [] for v in vs}
        for eid, u, w in es:
            adj[u].append((eid, w))
            adj[w].append((eid, u))
        self._adj = {v: tuple(n) for v, n in adj.items()}
        self._check_connected()

    def _check_connected(self):
        if not self.vertices:
            raise GraphError("empty vertex set")
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for _, w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise GraphError("graph is not connected")

    # -- queries -----------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def edge_index(self, eid) -> int:
        try:
            return self._eindex[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def endpoints(self, eid) -> tuple:
        _, u, w = self.edges[self.edge_index(eid)]
        return u, w

    def degree(self, v) -> int:
        return len(self._adj[v])

    def incident_edges(self, v) -> tuple:
        """Edge ids at v, in the global edge order."""
        at_v = {eid for eid, _ in self._adj[v]}
        return tuple(e[0] for e in self.edges if e[0] in at_v)

    def adjacency_count(self, u, w) -> int:
        return sum(1 for _, x in self._adj[u] if x == w)

    def neighbors(self, v) -> tuple:
        """Distinct neighbor vertices of v, in vertex order."""
        near = {w for _, w in self._adj[v]}
        return tuple(x for x in self.vertices if x in near)

    def is_simple(self) -> bool:
        seen = set()
        for _, u, w in self.edges:
            key = (u, w) if self._vindex[u] < self._vindex[w] else (w, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_tree(self) -> bool:
        return self.n_edges == self.n_vertices - 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multigraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Multigraph({self.n_vertices} vertices, {self.n_edges} edges)"


# ---------------------------------------------------------------------------
# Divisor-theoretic operations
# ---------------------------------------------------------------------------

def laplacian(g: Multigraph) -> IntMatrix:
    """Laplacian with -deg(v) on the diagonal, adjacency counts off it.

    Column j equals the divisor of the PL function that is 1 on vertex j
    and 0 elsewhere; every column sums to 0.
    """
    n = g.n_vertices
    flat = [0] * (n * n)
    for i, v in enumerate(g.vertices):
        flat[i * n + i] = -g.degree(v)
    for _, u, w in g.edges:
        i, j = g._vindex[u], g._vindex[w]
        flat[i * n + j] += 1
        flat[j * n + i] += 1
    return IntMatrix(n, n, flat)


def graph_div(g: Multigraph, phi: Sequence[int]) -> tuple:
    """Divisor of the PL function with vertex values phi: L(g) @ phi."""
    if len(phi) != g.n_vertices:
        raise GraphError("phi must have one value per vertex")
    return laplacian(g).mul_vec(phi)


def prin_lattice(g: Multigraph) -> Lattice:
    """Lattice of principal divisors (integer column span of the Laplacian)."""
    return Lattice.from_matrix(laplacian(g))


def is_graph_principal(g: Multigraph, d: Sequence[int]) -> bool:
    """True iff d is an integer combination of Laplacian columns."""
    if len(d) != g.n_vertices:
        raise GraphError("divisor must have one coefficient per vertex")
    ok, _ = lattice_member(prin_lattice(g), d)
    return ok


def pic_group(g: Multigraph) -> AbGroup:
    """Pic(g) = Z^V / column span of the Laplacian.

    For connected g the free rank is 1 and the torsion part is the
    critical group, whose order is the spanning-tree count.
    """
    return cokernel(laplacian(g))


def critical_group(g: Multigraph) -> AbGroup:
    pic = pic_group(g)
    return AbGroup(0, pic.torsion)


def genus(g: Multigraph) -> int:
    """|E| - |V| + 1: edges outside a spanning tree."""
    return g.n_edges - g.n_vertices + 1


def spanning_tree_count(g: Multigraph) -> int:
    """Kirchhoff count: any cofactor determinant of the Laplacian."""
    n = g.n_vertices
    if n == 1:
        return 1
    lap = laplacian(g)
    idx = list(range(1, n))
    return abs(det(lap.submatrix(idx, idx)))


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def path_graph(n_edges: int) -> Multigraph:
    """Path with n_edges edges (n_edges + 1 vertices)."""
    if n_edges < 1:
        raise GraphError("path needs at least one edge")
    verts = list(range(n_edges + 1))
    edges = [(f"e{i}", i, i + 1) for i in range(n_edges)]
    return Multigraph(verts, edges)


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    verts = list(range(n))
    edges = [(f"e{i}", i, (i + 1) % n) for i in range(n)]
    return Multigraph(verts, edges)


def complete_graph(n: int) -> Multigraph:
    if n < 2:
        raise GraphError("complete graph needs at least 2 vertices")
    verts = list(range(n))
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((f"e{k}", i, j))
            k += 1
    return Multigraph(verts, edges)


def theta_graph(n_edges: int) -> Multigraph:
    """Two vertices joined by n_edges parallel edges."""
    if n_edges < 1:
        raise GraphError("theta graph needs at least one edge")
    return Multigraph([0, 1], [(f"e{i}", 0, 1) for i in range(n_edges)])


def random_tree(n_vertices: int, seed: int) -> Multigraph:
    """Uniform random labeled tree on n_vertices vertices (Pruefer code)."""
    if n_vertices < 1:
        raise GraphError("tree needs at least one vertex")
    if n_vertices == 1:
        return Multigraph([0], [])
    if n_vertices == 2:
        return Multigraph([0, 1], [("e0", 0, 1)])
    rng = random.Random(seed)
    n = n_vertices
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    edges = []
    k = 0
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((f"e{k}", leaf, x))
        k += 1
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((f"e{k}", u, w))
    return Multigraph(list(range(n)), edges)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_graph_text(text: str, *, sort_ids: bool = True) -> Multigraph:
    """Parse the ``v``/``e`` line format; errors carry line numbers."""
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise GraphParseError(f"line {lineno}: expected 'v <id>'")
            vertices.append(parts[1])
        elif parts[0] == "e":
            if len(parts) != 4:
                raise GraphParseError(f"line {lineno}: expected 'e <id> <u> <w>'")
            edges.append((parts[1], parts[2], parts[3]))
        else:
            raise GraphParseError(f"line {lineno}: unknown record {parts[0]!r}")
    try:
        return Multigraph(vertices, edges, sort_ids=sort_ids)
    except GraphError as exc:
        raise GraphParseError(str(exc)) from exc


def graph_to_text(g: Multigraph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines.extend(f"e {eid} {u} {w}" for eid, u, w in g.edges)
    return "\n".join(lines) + "\n"
