"""
Expansion of contracted trails into graph trails, and rematching.

A trail coming out of the engine is a path of forest arcs; wherever it
crosses a contracted blossom, an alternating connection through the
blossom's own edges has to be spliced in.  Those connections are the
classic P-trails: for an occurrence v inside a blossom and a required
M-type at v, an alternating trail from v to the base whose final edge
stays compatible with the base edge.  They are read off the recorded
closed-trail segments; no search over the subgraph is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .engine import (
    BlockingResult,
    BlossomRecord,
    StructuralError,
    Trail,
)
from .multigraph import Multigraph, validate_matching

# One traversed edge: (edge id, from-vertex, to-vertex).
Step = tuple[int, int, int]


@dataclass(frozen=True)
class GTrail:
    """An alternating trail in the graph, as traversed oriented edges."""

    root_vertex: int
    terminal_vertex: int
    steps: tuple[Step, ...]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for (e, _u, _v) in self.steps)


class _Locator:
    """Positions of nodes within one blossom record's segment structure."""

    __slots__ = ("atom_pos", "child_pos", "tail_roles", "occurrences")

    def __init__(self, rec: BlossomRecord, vertex_of: list[int]) -> None:
        self.atom_pos: dict[int, tuple[int, int]] = {}
        self.child_pos: dict[int, tuple[int, int]] = {}
        self.tail_roles: dict[int, list[int]] = {}
        self.occurrences: dict[int, list[int]] = {}

        def occ(node: int) -> None:
            self.occurrences.setdefault(vertex_of[node], []).append(node)

        occ(rec.base_node)
        for j, seg in enumerate(rec.segments):
            self.tail_roles.setdefault(seg.start_node, []).append(j)
            for i, (arc, child) in enumerate(zip(seg.arcs, seg.children)):
                if child is None:
                    self.atom_pos[arc] = (j, i)
                    occ(arc)
                else:
                    for nd in child.iter_nodes():
                        self.child_pos[nd] = (j, i)
                        occ(nd)

    def seg_of(self, node: int, base_node: int) -> int:
        if node == base_node:
            return -1
        if node in self.atom_pos:
            return self.atom_pos[node][0]
        return self.child_pos[node][0]


class _Router:
    """Computes alternating trails to blossom bases from the stored segments."""

    def __init__(self, result: BlockingResult) -> None:
        self.forest = result.forest
        self._locators: dict[BlossomRecord, _Locator] = {}

    def locator(self, rec: BlossomRecord) -> _Locator:
        loc = self._locators.get(rec)
        if loc is None:
            loc = self._locators[rec] = _Locator(rec, self.forest.vertex)
        return loc

    def _down(self, a: int) -> Step:
        f = self.forest
        return (f.edge[a], f.tail_vertex(a), f.vertex[a])

    def _up(self, a: int) -> Step:
        f = self.forest
        return (f.edge[a], f.vertex[a], f.tail_vertex(a))

    def route(
        self,
        rec: BlossomRecord,
        node: int,
        start_matched: bool,
        seg_bound: Optional[int] = None,
        _visited: Optional[set] = None,
    ) -> Optional[list[Step]]:
        """Alternating trail from node's vertex to the base vertex of rec.

        The first edge has the requested M-type; the last edge always has
        the M-type opposite the base edge, so the base edge extends the
        trail alternatingly.  Empty exactly when node is the base and the
        request equals the base edge's M-type.  None when the structure
        does not support the request.
        """
        if _visited is None:
            _visited = set()
        key = (id(rec), node, start_matched, seg_bound)
        if key in _visited:
            return None
        _visited.add(key)

        matched = self.forest.matched
        loc = self.locator(rec)

        if node == rec.base_node:
            if start_matched == matched[rec.base_node]:
                return []
            out = self._down_walk(rec, 0, 0, _visited)
            if out is not None:
                return out

        pos = loc.atom_pos.get(node)
        if pos is not None and (seg_bound is None or pos[0] < seg_bound):
            j, i = pos
            seg = rec.segments[j]
            if start_matched == matched[seg.arcs[i]]:
                out = self._up_walk(rec, j, i, _visited)
                if out is not None:
                    return out
            if i + 1 < len(seg.arcs) and start_matched == matched[seg.arcs[i + 1]]:
                out = self._down_walk(rec, j, i + 1, _visited)
                if out is not None:
                    return out

        for j in loc.tail_roles.get(node, ()):
            if seg_bound is not None and j >= seg_bound:
                continue
            if start_matched == matched[rec.segments[j].arcs[0]]:
                out = self._down_walk(rec, j, 0, _visited)
                if out is not None:
                    return out

        pos = loc.child_pos.get(node)
        if pos is not None and (seg_bound is None or pos[0] < seg_bound):
            j, i = pos
            child = rec.segments[j].children[i]
            sub = self.route(child, node, start_matched, None, _visited)
            if sub is not None:
                out = self._up_walk(rec, j, i, _visited)
                if out is not None:
                    return sub + out

        # Any other occurrence of the same vertex gives an equally valid
        # trail from that vertex.
        for other in loc.occurrences.get(self.forest.vertex[node], ()):
            if other == node:
                continue
            if seg_bound is not None and loc.seg_of(other, rec.base_node) >= seg_bound:
                continue
            out = self.route(rec, other, start_matched, seg_bound, _visited)
            if out is not None:
                return out
        return None

    def _up_walk(self, rec: BlossomRecord, j: int, i: int, visited: set) -> Optional[list[Step]]:
        forest = self.forest
        seg = rec.segments[j]
        arcs, children = seg.arcs, seg.children
        steps: list[Step] = []
        k = i
        while True:
            steps.append(self._up(arcs[k]))
            if k == 0:
                break
            below = children[k - 1]
            if below is not None:
                sub = self.route(
                    below, forest.tail[arcs[k]], not forest.matched[arcs[k]], None, visited
                )
                if sub is None:
                    return None
                steps.extend(sub)
            k -= 1
        if j == 0:
            return steps
        cont = self.route(rec, seg.start_node, not forest.matched[arcs[0]], j, visited)
        if cont is None:
            return None
        return steps + cont

    def _down_walk(self, rec: BlossomRecord, j: int, i: int, visited: set) -> Optional[list[Step]]:
        forest = self.forest
        seg = rec.segments[j]
        arcs, children = seg.arcs, seg.children
        last = len(arcs) - 1
        steps: list[Step] = []
        for k in range(i, last + 1):
            steps.append(self._down(arcs[k]))
            if k < last and children[k] is not None:
                sub = self.route(
                    children[k],
                    forest.tail[arcs[k + 1]],
                    not forest.matched[arcs[k + 1]],
                    None,
                    visited,
                )
                if sub is None:
                    return None
                steps.extend(_reversed_steps(sub))
        final = children[last]
        if j == 0:
            if final is None:
                return steps
            # skew closure: dive into the final sub-blossom and stop at an
            # occurrence of the base vertex
            want = not forest.matched[rec.base_node]
            base_vertex = forest.vertex[rec.base_node]
            for occ in self.locator(final).occurrences.get(base_vertex, ()):
                sub = self.route(final, occ, want, None, visited)
                if sub is not None:
                    return steps + _reversed_steps(sub)
            return None
        cont = self.route(rec, seg.closure_node, not forest.matched[arcs[last]], j, visited)
        if cont is None:
            return None
        return steps + cont


def _reversed_steps(steps: list[Step]) -> list[Step]:
    return [(e, v, u) for (e, u, v) in reversed(steps)]


def pi_trail(
    result: BlockingResult,
    node: int,
    rec: BlossomRecord,
    start_matched: bool,
    router: Optional[_Router] = None,
) -> list[Step]:
    """Alternating trail inside a blossom from an occurrence to the base.

    The first edge has M-type start_matched; appending the base edge keeps
    the trail alternating.  Raises StructuralError when the blossom's
    recorded structure cannot supply the requested M-type at node.
    """
    if router is None:
        router = _Router(result)
    out = router.route(rec, node, start_matched)
    if out is None:
        raise StructuralError(
            f"no alternating trail of start M-type {'M' if start_matched else 'U'} "
            f"from node {node} to base {rec.base_node}"
        )
    return out


def expand_trail(result: BlockingResult, trail: Trail, router: Optional[_Router] = None) -> GTrail:
    """Expand a contracted trail into an alternating trail of graph edges."""
    forest = result.forest
    store = result.blossoms
    if router is None:
        router = _Router(result)

    steps: list[Step] = []
    for a in trail.arcs:
        t = forest.tail[a]
        rec = store.root_record.get(store.find(t))
        if rec is not None:
            sub = router.route(rec, t, not forest.matched[a])
            if sub is None:
                raise StructuralError(f"cannot cross blossom at base {rec.base_node}")
            steps.extend(_reversed_steps(sub))
        steps.append((forest.edge[a], forest.tail_vertex(a), forest.vertex[a]))

    if forest.matched[trail.final_arc]:
        raise StructuralError("trail terminates on a matched arc")
    rec = store.root_record.get(store.find(trail.final_node))
    if rec is not None:
        sub = router.route(rec, trail.final_node, False)
        if sub is None:
            raise StructuralError("cannot reach the trail terminal inside its blossom")
        steps.extend(_reversed_steps(sub))
    elif trail.final_node != (trail.arcs[-1] if trail.arcs else -1):
        raise StructuralError("atomic trail terminal is not the last trail arc")

    # the root crossing (first component) was handled by the first arc's
    # tail lookup above; fix up the start vertex from the root side
    if steps and steps[0][1] != trail.root_vertex:
        raise StructuralError("expanded trail does not start at the search root")
    return GTrail(
        root_vertex=trail.root_vertex,
        terminal_vertex=trail.terminal_vertex,
        steps=tuple(steps),
    )


def expand_all(result: BlockingResult) -> list[GTrail]:
    """Expand every trail of a run, caching on the result object."""
    cached = getattr(result, "_expanded", None)
    if cached is not None:
        return cached
    router = _Router(result)
    out = [expand_trail(result, t, router) for t in result.trails]
    result._expanded = out  # type: ignore[attr-defined]
    return out


def check_gtrail(g: Multigraph, matching: set[int], trail: GTrail) -> list[str]:
    """Violations of trail validity: alternation, connectivity, distinctness."""
    problems: list[str] = []
    steps = trail.steps
    if not steps:
        return ["empty trail"]
    seen: set[int] = set()
    prev_matched = None
    at = trail.root_vertex
    for e, u, v in steps:
        if u != at:
            problems.append(f"edge {e} does not continue the trail at {at}")
        uu, vv = g.edges[e]
        if {uu, vv} != {u, v}:
            problems.append(f"edge {e} is not between {u} and {v}")
        if e in seen:
            problems.append(f"edge {e} repeats")
        seen.add(e)
        em = e in matching
        if prev_matched is not None and em == prev_matched:
            problems.append(f"no alternation entering edge {e}")
        prev_matched = em
        at = v
    if at != trail.terminal_vertex:
        problems.append("trail does not end at its terminal vertex")
    if steps[0][0] in matching or steps[-1][0] in matching:
        problems.append("extreme edge is matched")
    return problems


def rematch(
    g: Multigraph,
    f: list[int],
    matching: set[int],
    trails: list[GTrail],
) -> set[int]:
    """Symmetric difference of the matching with a set of augmenting trails.

    The trails must be pairwise edge-disjoint alternating trails with
    deficient endpoints; any violation signals an engine bug and raises.
    The result is a valid matching exactly one edge larger per trail.
    """
    used: set[int] = set()
    for t in trails:
        problems = check_gtrail(g, matching, t)
        if problems:
            raise ValueError(f"invalid augmenting trail: {problems[0]}")
        for e in t.edges:
            if e in used:
                raise ValueError(f"trails are not edge-disjoint: edge {e}")
            used.add(e)

    out = set(matching)
    for t in trails:
        for e in t.edges:
            if e in out:
                out.discard(e)
            else:
                out.add(e)
    bad = validate_matching(g, f, out)
    if bad:
        raise ValueError(f"rematching violates degree bounds at {bad}")
    if len(out) != len(matching) + len(trails):
        raise ValueError("rematching did not grow the matching by one per trail")
    return out
