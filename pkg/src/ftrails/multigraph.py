"""
Core multigraph, degree-bound and matching types.

Vertices are dense integer ids 0..n-1.  Edges are indexed 0..m-1; parallel
copies are distinct edge ids and a loop is an edge whose two endpoints are
equal.  A loop contributes 2 to the degree of its vertex.
"""

from __future__ import annotations

from array import array


class Multigraph:
    """An undirected multigraph with loops and parallel edges.

    Immutable after construction; safe to share read-only across threads.
    """

    __slots__ = ("n", "edges", "incidence", "inc_flat", "inc_off")

    def __init__(self, n: int, edges: list[tuple[int, int]]) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        for e, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} endpoint out of range: ({u}, {v})")

        self.n = n
        self.edges: list[tuple[int, int]] = list(edges)

        # incidence[v] lists the edge ids incident to v, in edge-id order.
        # A loop appears once in its vertex's list.  The same lists are kept
        # flattened (inc_flat with per-vertex offsets inc_off) for scans.
        self.incidence: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.edges):
            self.incidence[u].append(e)
            if v != u:
                self.incidence[v].append(e)
        self.inc_off = array("i", bytes(4 * (n + 1)))
        total = 0
        for v in range(n):
            self.inc_off[v] = total
            total += len(self.incidence[v])
        self.inc_off[n] = total
        self.inc_flat = array("i", (e for lst in self.incidence for e in lst))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        """The endpoint of edge e opposite v (v itself for a loop)."""
        a, b = self.edges[e]
        return b if a == v else a

    def degree(self, v: int, members: set[int] | frozenset[int]) -> int:
        """Degree of v in the subgraph given by a set of edge ids.

        Loops count twice.
        """
        d = 0
        for e in self.incidence[v]:
            if e in members:
                d += 2 if self.is_loop(e) else 1
        return d

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


def check_degree_bounds(g: Multigraph, f: list[int]) -> None:
    """Validate a per-vertex degree bound vector against g."""
    if len(f) != g.n:
        raise ValueError(f"degree bound vector has length {len(f)}, expected {g.n}")
    for v, b in enumerate(f):
        if b < 0:
            raise ValueError(f"degree bound f({v}) = {b} is negative")


def deficiency(g: Multigraph, f: list[int], matching: set[int], v: int) -> int:
    """f(v) minus the degree of v in the matching, loops counted twice."""
    return f[v] - g.degree(v, matching)


def validate_matching(g: Multigraph, f: list[int], matching: set[int]) -> list[int]:
    """Return the vertices whose degree bound the matching exceeds.

    Empty result means the matching is a valid f-matching.  Edge ids out of
    range raise ValueError.
    """
    check_degree_bounds(g, f)
    deg = [0] * g.n
    for e in matching:
        if not (0 <= e < g.m):
            raise ValueError(f"matching contains unknown edge id {e}")
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return [v for v in range(g.n) if deg[v] > f[v]]


def matching_size(matching: set[int]) -> int:
    return len(matching)
