"""Divisors on a triangulated product: principal, Cartier, Q-Cartier,
and the groups Pic and Cl.

A divisor is an integer vector indexed by the global edge order of the
complex (edges are the ridges in dimension 2).  A PL function is an
integer vector indexed by vertices; its divisor on edge r is

    div(phi)(r) = sum over triangles f on r of phi(opposite vertex)
                  - sum over endpoints v of r of alpha(r, v) * phi(v).

The principal matrix P has div(phi_v) as column v, so div(phi) = P phi
and the principal divisors are the integer column span of P.

A divisor is Cartier when, at every vertex v, its restriction to the
edges at v lies in the integer span of the same restriction of P's
columns (the local matrix M_v).  It is Q-Cartier exactly when it
satisfies the balancing conditions: at each vertex (a, b), the sum of
coefficients over the edges projecting to a fixed G-edge at a is
independent of that edge, and likewise on the H side.  The balancing
matrix stacks the pairwise differences of those sums, anchored at the
first incident edge in the fixed order, giving

    deg_G(a) + deg_H(b) - 2

rows per vertex; its kernel is the Q-Cartier lattice.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Optional, Sequence

from .exact_lattice import (
    AbGroup,
    IntMatrix,
    Lattice,
    kernel,
    lattice_intersect,
    lattice_member,
    quotient,
    rank,
)
from .product_complex import (
    ComplexError,
    TriangulatedProduct,
    edge_id_str,
    graph_star,
)


def _check_divisor(tp: TriangulatedProduct, d: Sequence[int]) -> None:
    if len(d) != tp.n_edges:
        raise ComplexError("divisor must have one coefficient per edge")


def _check_pl(tp: TriangulatedProduct, phi: Sequence[int]) -> None:
    if len(phi) != tp.n_vertices:
        raise ComplexError("PL function must have one value per vertex")


# ---------------------------------------------------------------------------
# Principal divisors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def principal_matrix(tp: TriangulatedProduct) -> IntMatrix:
    """|E| x |V| matrix whose column v is div of the indicator of v.

    Entry (r, v) is -alpha(r, v) when v is an endpoint of r, and the
    number of triangles on r with opposite vertex v otherwise.  Every
    column sums to zero and the all-ones PL function lies in the kernel.
    """
    ne, nv = tp.n_edges, tp.n_vertices
    flat = [0] * (ne * nv)
    for i, e in enumerate(tp.edges):
        base = i * nv
        flat[base + tp.vertex_index(e.u)] = -tp._alpha[(e.eid, e.u)]
        flat[base + tp.vertex_index(e.w)] = -tp._alpha[(e.eid, e.w)]
    for (eid, v), mult in tp._link_count.items():
        flat[tp.edge_index(eid) * nv + tp.vertex_index(v)] = mult
    return IntMatrix(ne, nv, flat)


def div(tp: TriangulatedProduct, phi: Sequence[int]) -> tuple:
    """Divisor of the PL function with vertex values phi."""
    _check_pl(tp, phi)
    return principal_matrix(tp).mul_vec(phi)


@lru_cache(maxsize=None)
def prin_lattice(tp: TriangulatedProduct) -> Lattice:
    return Lattice.from_matrix(principal_matrix(tp))


def is_principal(tp: TriangulatedProduct, d: Sequence[int]) -> bool:
    _check_divisor(tp, d)
    return lattice_member(prin_lattice(tp), d)[0]


# ---------------------------------------------------------------------------
# Local (Cartier) conditions
# ---------------------------------------------------------------------------

def local_matrix(tp: TriangulatedProduct, v) -> IntMatrix:
    """Rows of the principal matrix restricted to the edges at v."""
    tp.vertex_index(v)
    p = principal_matrix(tp)
    rows = [tp.edge_index(eid) for eid in graph_star(tp, v)]
    return p.submatrix(rows, range(tp.n_vertices))


@lru_cache(maxsize=None)
def _local_lattices(tp: TriangulatedProduct) -> dict:
    """Per-vertex lattice of restrictions of principal divisors."""
    return {v: Lattice.from_matrix(local_matrix(tp, v)) for v in tp.vertices}


def is_cartier(tp: TriangulatedProduct, d: Sequence[int]) -> bool:
    """Locally principal: at every vertex the restriction of d to the
    star lies in the integer span of the local matrix columns."""
    _check_divisor(tp, d)
    locals_ = _local_lattices(tp)
    for v in tp.vertices:
        restricted = [d[tp.edge_index(eid)] for eid in graph_star(tp, v)]
        if not lattice_member(locals_[v], restricted)[0]:
            return False
    return True


@lru_cache(maxsize=None)
def cart_lattice(tp: TriangulatedProduct) -> Lattice:
    """Lattice of Cartier divisors.

    Intersection over vertices of the preimage of the local lattice
    under restriction; the preimage at v is generated by lifts of the
    local basis plus the unit divisors on edges away from v's star.
    """
    ne = tp.n_edges
    locals_ = _local_lattices(tp)
    result: Optional[Lattice] = None
    for v in tp.vertices:
        star = graph_star(tp, v)
        star_idx = [tp.edge_index(eid) for eid in star]
        in_star = set(star_idx)
        gens = []
        local = locals_[v]
        for j in range(local.rank):
            col = local.basis.col(j)
            lifted = [0] * ne
            for pos, val in zip(star_idx, col):
                lifted[pos] = val
            gens.append(lifted)
        for i in range(ne):
            if i not in in_star:
                unit = [0] * ne
                unit[i] = 1
                gens.append(unit)
        pre = Lattice.from_generators(ne, gens)
        result = pre if result is None else lattice_intersect(result, pre)
    assert result is not None
    return result


# ---------------------------------------------------------------------------
# Balancing conditions (Q-Cartier)
# ---------------------------------------------------------------------------

def _projection_indicators(tp: TriangulatedProduct, v) -> tuple:
    """Per-factor-edge indicator rows of edges at v projecting to it.

    For vertex v = (a, b): for each G-edge at a, the edges of the
    complex at v projecting to it are one horizontal edge plus the
    diagonals at v over that G-edge; symmetrically on the H side.
    Returns (g_rows, h_rows) as lists of coefficient vectors.
    """
    a, b = v
    ne = tp.n_edges
    diag_by_g = {}
    diag_by_h = {}
    for did in tp.diagonals_at(v):
        _, ge, he = did
        diag_by_g.setdefault(ge, []).append(did)
        diag_by_h.setdefault(he, []).append(did)
    g_rows = []
    for ge in tp.g.incident_edges(a):
        row = [0] * ne
        row[tp.edge_index(("h", ge, b))] = 1
        for did in diag_by_g.get(ge, ()):
            row[tp.edge_index(did)] = 1
        g_rows.append(row)
    h_rows = []
    for he in tp.h.incident_edges(b):
        row = [0] * ne
        row[tp.edge_index(("v", a, he))] = 1
        for did in diag_by_h.get(he, ()):
            row[tp.edge_index(did)] = 1
        h_rows.append(row)
    return g_rows, h_rows


@lru_cache(maxsize=None)
def balancing_matrix(tp: TriangulatedProduct) -> IntMatrix:
    """One row per balancing condition; D is Q-Cartier iff it kills D.

    Rows per vertex (a, b): the G-side sums anchored at the first
    incident G-edge minus each later one, then the H side, so the row
    count is the sum over vertices of deg_G(a) + deg_H(b) - 2.
    """
    ne = tp.n_edges
    rows = []
    for v in tp.vertices:
        g_rows, h_rows = _projection_indicators(tp, v)
        for block in (g_rows, h_rows):
            anchor = block[0]
            for other in block[1:]:
                rows.append([x - y for x, y in zip(anchor, other)])
    if not rows:
        return IntMatrix.zeros(0, ne)
    return IntMatrix.from_rows(rows)


def is_q_cartier(tp: TriangulatedProduct, d: Sequence[int]) -> bool:
    """Balanced: the balancing matrix annihilates d."""
    _check_divisor(tp, d)
    return all(x == 0 for x in balancing_matrix(tp).mul_vec(d))


@lru_cache(maxsize=None)
def qcart_lattice(tp: TriangulatedProduct) -> Lattice:
    return kernel(balancing_matrix(tp))


# ---------------------------------------------------------------------------
# Picard and class groups
# ---------------------------------------------------------------------------

def pic(tp: TriangulatedProduct) -> AbGroup:
    """Cartier divisors modulo principal divisors."""
    return quotient(cart_lattice(tp), prin_lattice(tp))


def cl(tp: TriangulatedProduct) -> AbGroup:
    """Q-Cartier (= Weil, in dimension 2) divisors modulo principal ones."""
    return quotient(qcart_lattice(tp), prin_lattice(tp))


def local_rank_expected(tp: TriangulatedProduct, v) -> int:
    """Rank of the local matrix: number of diagonals at v, plus 2.

    Equivalently |star(v)| - (deg_G(a) + deg_H(b) - 2): the balancing
    conditions at v span the left kernel of the local matrix.
    """
    return len(tp.diagonals_at(v)) + 2


def local_rank(tp: TriangulatedProduct, v) -> int:
    return rank(local_matrix(tp, v))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def divisor_to_json(tp: TriangulatedProduct, d: Sequence[int]) -> str:
    """JSON object mapping edge-id strings to coefficients, zeros omitted."""
    _check_divisor(tp, d)
    obj = {edge_id_str(e.eid): int(c) for e, c in zip(tp.edges, d) if c}
    return json.dumps(obj, sort_keys=True)


def divisor_from_json(tp: TriangulatedProduct, text: str) -> tuple:
    obj = json.loads(text)
    by_str = {edge_id_str(e.eid): i for i, e in enumerate(tp.edges)}
    d = [0] * tp.n_edges
    for key, val in obj.items():
        if key not in by_str:
            raise ComplexError(f"unknown edge id {key!r}")
        d[by_str[key]] = int(val)
    return tuple(d)
