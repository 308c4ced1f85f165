"""
Depth-first search for a blocking set of augmenting trails.

One call to find_trails runs a sequence of searches, one per eligible
deficient vertex, against a fixed matching.  Each search builds part of a
forest whose nodes are *occurrences* of graph vertices; blossoms are formed
by contracting edge sets of the forest with a union-find structure.  The
trails found are returned contracted (as forest arcs); expansion to graph
trails and the actual rematching live in the expand module.

Node/arc representation: every node except an artificial search root has
exactly one parent arc, and every arc has exactly one head node, so nodes
and arcs share ids.  Arc a's head node is a; its tail node is another arc
id (or -1 for a root).

The search itself is one explicit-stack loop (_Run._search): recursion
depth can reach the edge count, and the hot path stays free of attribute
lookups and string formatting unless tracing is on.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from .multigraph import Multigraph, check_degree_bounds, validate_matching

ARTIFICIAL = -1


class CheckFailure(AssertionError):
    """An internal invariant was violated while running in check mode."""


class StructuralError(RuntimeError):
    """The search structure is corrupt (blossom store inconsistent)."""


@dataclass(eq=False)
class BlossomSegment:
    """One closed-trail addition made by a single non-noop blossom step.

    arcs are the forest arcs of the contracted path P, ordered from the
    base side downward.  children[i] is the frozen sub-blossom entered
    through arcs[i], or None when the head of arcs[i] is an atom.
    start_node is the tail node of arcs[0]; closure_node is the node whose
    invocation popped the triggering entry (it shares its vertex with the
    far end of the path).
    """

    arcs: list[int]
    children: list[Optional["BlossomRecord"]]
    start_node: int
    closure_node: int


@dataclass(eq=False)
class BlossomRecord:
    """A blossom: its base node plus the segments merged into it.

    The base node's parent arc is the base edge.  A record grows only
    while its base invocation is still executing; it is marked complete
    when that invocation returns, and afterwards can only be absorbed
    whole into a later record as a frozen child.
    """

    base_node: int
    search: int
    segments: list[BlossomSegment]
    complete: bool = False

    def iter_nodes(self):
        yield self.base_node
        for seg in self.segments:
            for arc, child in zip(seg.arcs, seg.children):
                if child is None:
                    yield arc
                else:
                    yield from child.iter_nodes()

    def iter_arcs(self):
        """All forest arcs inside the blossom (the base edge excluded)."""
        for seg in self.segments:
            for arc, child in zip(seg.arcs, seg.children):
                yield arc
                if child is not None:
                    yield from child.iter_arcs()


class Forest:
    """Arena of forest arcs/nodes; index a is both an arc and its head node.

    Arrays are preallocated to capacity while a run is live and trimmed to
    the arc count when it finishes.
    """

    __slots__ = ("edge", "matched", "tail", "vertex", "search")

    def __init__(self, cap: int = 0) -> None:
        zeros = bytes(4 * cap)
        self.edge = array("i", zeros)
        self.matched = bytearray(cap)
        self.tail = array("i", zeros)
        self.vertex = array("i", zeros)
        self.search = array("i", zeros)

    def __len__(self) -> int:
        return len(self.edge)

    def trim(self, count: int) -> None:
        del self.edge[count:]
        del self.matched[count:]
        del self.tail[count:]
        del self.vertex[count:]
        del self.search[count:]



    def tail_vertex(self, a: int) -> int:
        t = self.tail[a]
        return self.vertex[t] if t >= 0 else -1


class BlossomStore:
    """Union-find over forest nodes plus the per-blossom records."""

    def __init__(self, forest: Forest, cap: int = 0) -> None:
        self.forest = forest
        self.parent = array("i", range(cap))
        self.size = array("i", bytes(4 * cap))
        self.root_record: dict[int, BlossomRecord] = {}
        self.base_record: dict[int, BlossomRecord] = {}

    def trim(self, count: int) -> None:
        del self.parent[count:]
        del self.size[count:]

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def in_blossom(self, node: int) -> bool:
        return self.parent[node] != node or self.size[node] > 1

    def record_of_node(self, node: int) -> Optional[BlossomRecord]:
        return self.root_record.get(self.find(node))

    def base_of_component(self, root: int) -> int:
        rec = self.root_record.get(root)
        return rec.base_node if rec is not None else root

    def maximal_complete(self) -> list[BlossomRecord]:
        """The maximal complete blossoms at halt.

        A complete root record is maximal itself; an incomplete root
        record was cut by an augment, and its frozen children (always
        complete) are the maximal complete blossoms inside it.
        """
        out: list[BlossomRecord] = []
        for rec in self.root_record.values():
            if rec.complete:
                out.append(rec)
            else:
                for seg in rec.segments:
                    for child in seg.children:
                        if child is not None:
                            out.append(child)
        return out


class Trail(NamedTuple):
    """A contracted augmenting trail: root, terminal, and its forest arcs.

    arcs runs from just below the root down to the arc entering the
    terminal contracted component.  final_node/final_arc pin down where
    in the last component the trail ends.
    """

    root_vertex: int
    terminal_vertex: int
    arcs: tuple[int, ...]
    final_node: int
    final_arc: int


@dataclass
class BlockingResult:
    """Everything a find_trails run produced, kept contracted."""

    g: Multigraph
    f: list[int]
    matching: set[int]
    trails: list[Trail]
    forest: Forest
    blossoms: BlossomStore
    e1_arc: list[int]
    e1_node: list[int]
    def_final: list[int]
    searches: int


ENTER, GROW, BLOSSOM, PENDING = 0, 1, 2, 3


class _Run:
    def __init__(
        self,
        g: Multigraph,
        f: list[int],
        matching: set[int],
        check: bool,
        trace: Optional[Callable[[str], None]],
    ) -> None:
        self.g = g
        self.f = f
        self.matching = matching
        self.check = check
        self.trace = trace

        n = g.n
        self.edge_u = array("i", (u for u, _ in g.edges))
        self.edge_v = array("i", (v for _, v in g.edges))
        self.edge_matched = bytearray(g.m)
        for e in matching:
            self.edge_matched[e] = 1

        # Grow lists, flattened and split by M-type so a scan never touches
        # edges of the wrong type: per-vertex segments of gl_* delimited by
        # a cursor (cur_*) and an end offset (end_*).  Cursors only move
        # forward; edges are struck out of both lists by the shared used
        # flag.  With nothing matched the graph's flat incidence is reused.
        if matching:
            em = self.edge_matched
            deg_m = [0] * n
            deg_u = [0] * n
            for v in range(n):
                for e in g.incidence[v]:
                    if em[e]:
                        deg_m[v] += 1
                    else:
                        deg_u[v] += 1
            self.cur_matched = array("i", bytes(4 * n))
            self.cur_unmatched = array("i", bytes(4 * n))
            self.end_matched = array("i", bytes(4 * n))
            self.end_unmatched = array("i", bytes(4 * n))
            tm = tu = 0
            for v in range(n):
                self.cur_matched[v] = tm
                self.cur_unmatched[v] = tu
                tm += deg_m[v]
                tu += deg_u[v]
                self.end_matched[v] = tm
                self.end_unmatched[v] = tu
            self.gl_matched = array("i", bytes(4 * tm))
            self.gl_unmatched = array("i", bytes(4 * tu))
            fill_m = list(self.cur_matched)
            fill_u = list(self.cur_unmatched)
            for v in range(n):
                for e in g.incidence[v]:
                    if em[e]:
                        self.gl_matched[fill_m[v]] = e
                        fill_m[v] += 1
                    else:
                        self.gl_unmatched[fill_u[v]] = e
                        fill_u[v] += 1
            deg = [0] * n
            for e in matching:
                u, v = g.edges[e]
                deg[u] += 1
                deg[v] += 1
            self.deficiency = array("i", (f[v] - deg[v] for v in range(n)))
        else:
            self.gl_matched = array("i")
            self.gl_unmatched = g.inc_flat
            self.cur_matched = array("i", bytes(4 * n))
            self.end_matched = array("i", bytes(4 * n))
            self.cur_unmatched = array("i", g.inc_off[:n].tobytes())
            self.end_unmatched = array("i", g.inc_off[1:].tobytes())
            self.deficiency = array("i", f)
        self.edge_used = bytearray(g.m)

        # per-vertex FIFO lists of returned invocations awaiting blossom
        # steps (the first pop must return the first entry), flattened into
        # one entry arena with per-vertex first/last links
        minus1 = b"\xff" * (4 * n)
        zeros_n = bytes(4 * n)
        self.bl_entry_node = array("i")
        self.bl_entry_arc = array("i")
        self.bl_entry_next = array("i")
        self.bl_first = array("i", minus1)
        self.bl_last = array("i", minus1)
        self.bl_cnt_m = array("i", zeros_n)
        self.bl_cnt_u = array("i", zeros_n)
        self.e1_arc = array("i", minus1)
        self.e1_node = array("i", minus1)
        self.vertex_blossom = array("i", minus1)
        # one occurrence of each flagged vertex inside its unique blossom;
        # stays valid across enlargements since merged nodes keep their set
        self.vertex_occurrence = array("i", minus1)

        # arcs: each edge grows at most once, plus one artificial root per
        # search; searches are bounded by one unsuccessful per vertex plus
        # one successful per (edge-disjoint) trail
        cap = 2 * g.m + n + 1
        zeros_cap = bytes(4 * cap)
        self.bl_entry_node.frombytes(zeros_cap)
        self.bl_entry_arc.frombytes(zeros_cap)
        self.bl_entry_next.frombytes(zeros_cap)
        self.n_bl = 0
        self.forest = Forest(cap)
        self.store = BlossomStore(self.forest, cap)
        self.n_arcs = 0
        self.trails: list[Trail] = []
        self.search_id = -1
        self.alpha = -1

        # check-mode bookkeeping
        if check:
            self.child_count = [0] * cap
            self.after_e1_arcs: list[int] = []

    # -- helpers ---------------------------------------------------------

    def _on_new_arc(self, aid: int) -> None:
        self.n_arcs = aid + 1
        forest = self.forest
        tail = forest.tail[aid]
        if tail >= 0:
            self.child_count[tail] += 1
        vertex = forest.vertex[aid]
        if forest.edge[aid] != ARTIFICIAL and self.e1_arc[vertex] >= 0:
            e1 = self.e1_arc[vertex]
            if forest.matched[e1] != forest.matched[aid]:
                self._fail(
                    f"arc {aid} at vertex {vertex} arrived after e1 returned "
                    f"with the wrong M-type"
                )
            self.after_e1_arcs.append(aid)

    def _fail(self, msg: str) -> None:
        raise CheckFailure(msg + "\n" + self._dump())

    def _dump(self) -> str:
        fo = self.forest
        lines = ["forest dump:"]
        for a in range(self.n_arcs):
            lines.append(
                f"  arc {a}: edge={fo.edge[a]} matched={fo.matched[a]} "
                f"tail={fo.tail[a]} vertex={fo.vertex[a]} search={fo.search[a]} "
                f"root={self.store.find(a)}"
            )
        for root, rec in self.store.root_record.items():
            segs = [(seg.arcs, seg.start_node, seg.closure_node) for seg in rec.segments]
            lines.append(
                f"  blossom root={root} base={rec.base_node} complete={rec.complete} "
                f"segments={segs}"
            )
        return "\n".join(lines)

    # -- the search ------------------------------------------------------

    def run(self, order: Sequence[int]) -> None:
        for alpha in order:
            while self.deficiency[alpha] > 0 and self.e1_arc[alpha] < 0:
                self.search_id += 1
                self.alpha = alpha
                if not self._search(alpha):
                    break

    def _search(self, alpha: int) -> bool:
        """Run one search from alpha; True iff an augmenting trail was found."""
        forest = self.forest
        store = self.store
        fedge = forest.edge
        fmatched = forest.matched
        ftail = forest.tail
        fvertex = forest.vertex
        fsearch = forest.search
        par = store.parent
        sz = store.size
        base_record = store.base_record
        deficiency = self.deficiency
        edge_used = self.edge_used
        edge_u = self.edge_u
        edge_v = self.edge_v
        glm = self.gl_matched
        glu = self.gl_unmatched
        curm = self.cur_matched
        curu = self.cur_unmatched
        endm = self.end_matched
        endu = self.end_unmatched
        bl_entry_node = self.bl_entry_node
        bl_entry_arc = self.bl_entry_arc
        bl_entry_next = self.bl_entry_next
        bl_first = self.bl_first
        bl_last = self.bl_last
        bl_cnt_m = self.bl_cnt_m
        bl_cnt_u = self.bl_cnt_u
        n_bl = self.n_bl
        vertex_blossom = self.vertex_blossom
        e1_arc = self.e1_arc
        e1_node = self.e1_node
        sid = self.search_id
        trace = self.trace
        check = self.check

        root = self.n_arcs
        self.n_arcs = root + 1
        fedge[root] = ARTIFICIAL
        fmatched[root] = 1
        ftail[root] = -1
        fvertex[root] = alpha
        fsearch[root] = sid
        par[root] = root
        sz[root] = 1
        if check:
            self._on_new_arc(root)
        n_arcs = self.n_arcs
        if trace is not None:
            trace(f"search {sid} root {alpha} node {root}")

        # The augment test runs when an invocation starts; here it is fused
        # into the two spots that start invocations (grow and pending
        # pushes).  The root invocation's arc is matched, so it never
        # augments and goes straight to growing.
        frames: list = []
        node = root
        arc = root
        x = alpha
        amu = 1
        state = GROW
        pend = None
        pidx = 0

        while True:
            if state == GROW:
                if amu:
                    gl = glu
                    cur = curu
                    hi = endu[x]
                else:
                    gl = glm
                    cur = curm
                    hi = endm[x]
                i = cur[x]
                e = -1
                while i < hi:
                    c = gl[i]
                    i += 1
                    if not edge_used[c]:
                        e = c
                        break
                cur[x] = i
                if e >= 0:
                    edge_used[e] = 1
                    want = 1 - amu
                    a = edge_u[e]
                    y = edge_v[e] if a == x else a
                    child = n_arcs
                    n_arcs += 1
                    fedge[child] = e
                    fmatched[child] = want
                    ftail[child] = node
                    fvertex[child] = y
                    fsearch[child] = sid
                    par[child] = child
                    sz[child] = 1
                    if check:
                        self._on_new_arc(child)
                    if trace is not None:
                        trace(f"grow {x}->{y} edge {e} arc {child}")
                    if not want and deficiency[y] > 0 and (y != alpha or deficiency[alpha] >= 2):
                        deficiency[alpha] -= 1
                        deficiency[y] -= 1
                        self.n_arcs = n_arcs
                        self.n_bl = n_bl
                        self.trails.append(self._make_trail(alpha, y, child, child))
                        if trace is not None:
                            trace(f"augment at {y} node {child} arc {child}")
                        return True
                    frames.append((node, arc, x, amu, GROW, pend, pidx))
                    node = child
                    arc = child
                    x = y
                    amu = want
                    continue
                state = BLOSSOM

            elif state == PENDING:
                if pidx < len(pend):
                    pnode, parc = pend[pidx]
                    pidx += 1
                    y = fvertex[pnode]
                    pm = fmatched[parc]
                    if not pm and deficiency[y] > 0 and (y != alpha or deficiency[alpha] >= 2):
                        deficiency[alpha] -= 1
                        deficiency[y] -= 1
                        self.n_arcs = n_arcs
                        self.n_bl = n_bl
                        self.trails.append(self._make_trail(alpha, y, pnode, parc))
                        if trace is not None:
                            trace(f"augment at {y} node {pnode} arc {parc}")
                        return True
                    frames.append((node, arc, x, amu, PENDING, pend, pidx))
                    node = pnode
                    arc = parc
                    x = y
                    amu = pm
                    state = GROW
                    pend = None
                    pidx = 0
                    continue
                state = BLOSSOM
                pend = None

            # state == BLOSSOM
            flag = vertex_blossom[x]
            popped_node = -1
            if flag < 0:
                # blossom base test: x occurs in no blossom
                if (bl_cnt_u[x] if amu else bl_cnt_m[x]) > 0:
                    h = bl_first[x]
                    bl_first[x] = bl_entry_next[h]
                    if bl_entry_next[h] < 0:
                        bl_last[x] = -1
                    popped_node = bl_entry_node[h]
                    popped_arc = bl_entry_arc[h]
                    if fmatched[popped_arc]:
                        bl_cnt_m[x] -= 1
                    else:
                        bl_cnt_u[x] -= 1
                    if fmatched[popped_arc] == amu:
                        raise StructuralError(
                            "first BL entry has the wrong M-type in a base test"
                        )
            elif flag == sid and (
                par[node] != node
                or sz[node] > 1
                or node < store.base_of_component(store.find(self.vertex_occurrence[x]))
            ):
                # blossom enlarge test: the node itself, or a descendant
                # occurrence of x, is in a blossom of this search.  While a
                # scan is active every node with a larger id sits inside its
                # call subtree, so an occurrence outside the blossom is an
                # ancestor of the blossom's base exactly when its id is
                # smaller.
                h = bl_first[x]
                if h >= 0:
                    bl_first[x] = bl_entry_next[h]
                    if bl_entry_next[h] < 0:
                        bl_last[x] = -1
                    popped_node = bl_entry_node[h]
                    popped_arc = bl_entry_arc[h]
                    if fmatched[popped_arc]:
                        bl_cnt_m[x] -= 1
                    else:
                        bl_cnt_u[x] -= 1
                    if check:
                        self._check_enlarge_applies(node, x)
            # else: x has blossom occurrences that do not descend from here
            # (or only in an earlier search); this scan pops nothing.

            if popped_node >= 0:
                if trace is not None:
                    trace(f"pop at {x} entry node {popped_node} arc {popped_arc}")
                if check and fsearch[popped_arc] != sid:
                    self._fail(f"popped BL entry {popped_arc} from an earlier search")
                rn = store.find(node)
                rm = store.find(popped_node)
                if rn == rm:
                    if trace is not None:
                        trace("blossom noop")
                    continue
                pending = self._blossom_step(node, rn, rm)
                if pending:
                    state = PENDING
                    pend = pending
                    pidx = 0
                continue

            # nothing to pop: the invocation returns
            idx = n_bl
            n_bl += 1
            bl_entry_node[idx] = node
            bl_entry_arc[idx] = arc
            bl_entry_next[idx] = -1
            t = bl_last[x]
            if t >= 0:
                bl_entry_next[t] = idx
            else:
                bl_first[x] = idx
            bl_last[x] = idx
            if fmatched[arc]:
                bl_cnt_m[x] += 1
            else:
                bl_cnt_u[x] += 1
            if e1_arc[x] < 0:
                e1_arc[x] = arc
                e1_node[x] = node
            if arc == node:
                # head-flavor return: may complete a blossom based here
                rec = base_record.get(node)
                if rec is not None:
                    rec.complete = True
                    if trace is not None:
                        trace(f"complete blossom base {node}")
            if trace is not None:
                trace(f"return node {node} arc {arc}")
            if not frames:
                self.n_arcs = n_arcs
                self.n_bl = n_bl
                return False
            node, arc, x, amu, state, pend, pidx = frames.pop()

    # -- steps -------------------------------------------------------------

    def _blossom_step(self, node: int, rn: int, rm: int) -> list[tuple[int, int]]:
        forest = self.forest
        store = self.store

        # path P from the current component down to the popped one; walking
        # contracted parents upward from rm must reach rn (property (*))
        arcs_up: list[int] = []
        cur = rm
        while cur != rn:
            b = store.base_of_component(cur)
            arcs_up.append(b)
            t = forest.tail[b]
            if t < 0:
                raise StructuralError(
                    "popped entry does not descend from the popping node"
                    + (("\n" + self._dump()) if self.check else "")
                )
            cur = store.find(t)
        path = arcs_up[::-1]

        rec = store.root_record.pop(rn, None)
        children: list[Optional[BlossomRecord]] = []
        for a in path:
            child = store.root_record.pop(store.find(a), None)
            children.append(child)
        if rec is None:
            rec = BlossomRecord(base_node=node, search=self.search_id, segments=[])
            store.base_record[node] = rec
        seg = BlossomSegment(
            arcs=path,
            children=children,
            start_node=forest.tail[path[0]],
            closure_node=node,
        )
        rec.segments.append(seg)

        root = rn
        vertex_blossom = self.vertex_blossom
        vertex_occurrence = self.vertex_occurrence
        bv = forest.vertex[rec.base_node]
        vertex_blossom[bv] = self.search_id
        vertex_occurrence[bv] = rec.base_node
        for a, child in zip(path, children):
            if child is None:
                v = forest.vertex[a]
                vertex_blossom[v] = self.search_id
                vertex_occurrence[v] = a
            root = store.union(root, a)
        store.root_record[root] = rec

        if self.trace is not None:
            self.trace(f"blossom base {rec.base_node} path {path}")
        if self.check:
            self._check_blossom(rec, seg)

        return [(forest.tail[a], a) for a in path[1:]]

    def _make_trail(self, alpha: int, x: int, node: int, arc: int) -> Trail:
        forest = self.forest
        store = self.store
        arcs_up: list[int] = []
        cur = store.find(node)
        while True:
            b = store.base_of_component(cur)
            if forest.edge[b] == ARTIFICIAL:
                break
            arcs_up.append(b)
            cur = store.find(forest.tail[b])
        return Trail(
            root_vertex=alpha,
            terminal_vertex=x,
            arcs=tuple(reversed(arcs_up)),
            final_node=node,
            final_arc=arc,
        )

    # -- check-mode invariants -------------------------------------------

    def _check_enlarge_applies(self, node: int, x: int) -> None:
        if self.store.record_of_node(node) is not None:
            return
        # the skew case: some occurrence of x in a blossom must descend
        # from the current node
        forest = self.forest
        store = self.store
        for a in range(self.n_arcs):
            if forest.vertex[a] != x or store.record_of_node(a) is None:
                continue
            t = a
            while t >= 0:
                if t == node:
                    return
                t = forest.tail[t]
        self._fail(f"enlarge test fired at node {node} with no descendant of {x} in a blossom")

    def _check_blossom(self, rec: BlossomRecord, seg: BlossomSegment) -> None:
        forest = self.forest
        base_vertex = forest.vertex[rec.base_node]
        arcs, children = seg.arcs, seg.children

        for i, child in enumerate(children):
            if child is not None:
                if not child.complete:
                    self._fail("incomplete blossom absorbed as a frozen child")
                if child.base_node != arcs[i]:
                    self._fail("path enters a contracted blossom off its base edge")
        for i in range(len(arcs) - 1):
            if children[i] is None and forest.matched[arcs[i]] == forest.matched[arcs[i + 1]]:
                self._fail("blossom path does not alternate at an atomic node")

        if len(rec.segments) == 1:
            eta_matched = forest.matched[rec.base_node]
            if forest.matched[arcs[0]] == eta_matched:
                self._fail("blossom path starts with the base edge's M-type")
            last = children[-1]
            if last is None:
                if forest.vertex[arcs[-1]] != base_vertex:
                    self._fail("closed trail does not return to the base vertex")
                if forest.matched[arcs[-1]] != forest.matched[arcs[0]]:
                    self._fail("extreme edges of a base-case blossom differ in M-type")
            else:
                if all(forest.vertex[a] != base_vertex for a in last.iter_nodes()):
                    self._fail("skew blossom's final sub-blossom misses the base vertex")
        else:
            if children[-1] is not None:
                self._fail("enlargement path ends in a contracted blossom")
            if forest.vertex[arcs[-1]] != forest.vertex[seg.closure_node]:
                self._fail("enlargement does not close at the popping node's vertex")

        self._check_one_blossom_per_vertex()
        self._check_subtree(rec)

    def _check_one_blossom_per_vertex(self) -> None:
        seen: dict[int, int] = {}
        for root, rec in self.store.root_record.items():
            for nd in rec.iter_nodes():
                v = self.forest.vertex[nd]
                if seen.setdefault(v, root) != root:
                    self._fail(f"vertex {v} occurs in two blossoms")

    def _check_subtree(self, rec: BlossomRecord) -> None:
        nodes = set(rec.iter_nodes())
        for nd in nodes:
            if nd == rec.base_node:
                continue
            t = self.forest.tail[nd]
            if t < 0 or t not in nodes:
                self._fail(f"blossom node {nd} detaches from the base subtree")

    def check_final(self) -> None:
        """Invariants that are only meaningful once the run has halted."""
        if not self.check:
            return
        for a in self.after_e1_arcs:
            if self.child_count[a] != 0:
                self._fail(f"arc {a} grown after e1 returned is not pendant")


def find_trails(
    g: Multigraph,
    f: list[int],
    matching: set[int],
    order: Optional[Sequence[int]] = None,
    check: bool = False,
    trace: Optional[Callable[[str], None]] = None,
) -> BlockingResult:
    """Find a blocking set of augmenting trails for a valid f-matching.

    Runs the depth-first search once over all eligible deficient vertices
    (ascending ids unless an explicit order is given; a vertex roots
    several searches while it stays deficient and none of its invocations
    has returned).  The matching itself is not modified: trails come back
    contracted in the result, and per-vertex deficiencies are maintained
    as if the trails had been rematched.

    Parameters:
        g: the multigraph.
        f: per-vertex degree bounds.
        matching: set of edge ids; must be a valid f-matching.
        order: optional iteration order over the vertices.
        check: enable internal invariant assertions (slow).
        trace: optional sink receiving one line per search step.

    Returns:
        A BlockingResult holding the trails, the search forest, the
        blossom store, per-vertex first-returned arcs and the final
        deficiencies.

    Raises:
        ValueError: if the matching violates a degree bound.
        CheckFailure: if check mode catches an invariant violation.
    """
    check_degree_bounds(g, f)
    bad = validate_matching(g, f, matching)
    if bad:
        raise ValueError(f"matching violates degree bounds at vertices {bad}")

    run = _Run(g, f, matching, check, trace)
    run.run(range(g.n) if order is None else order)
    run.check_final()
    run.forest.trim(run.n_arcs)
    run.store.trim(run.n_arcs)
    return BlockingResult(
        g=g,
        f=f,
        matching=set(matching),
        trails=run.trails,
        forest=run.forest,
        blossoms=run.store,
        e1_arc=run.e1_arc,
        e1_node=run.e1_node,
        def_final=run.deficiency,
        searches=run.search_id + 1,
    )
