"""Gain graphs and contact automata.

A gain graph is an undirected multigraph whose edges carry group elements
read orientation-sensitively: traversing an edge backwards yields the
inverse gain, which forces loops to carry involutions.  The walk gain is
the ordered product of traversal gains.  Two standard computations live
here: the vertex group W_u (gains of all closed walks at u, the empty walk
contributing the identity) and the walk coset W(u, v) = W_u . g for any
fixed walk gain g from u to v.

W_u is computed two ways, which must agree: by closing the gains of all
conjugated cycles p c p^-1 based at u (finitely many in a finite graph),
and by closing the tree-conjugated fundamental cycles of a deterministic
spanning tree (the default; same subgroup, far fewer generators).

The contact automaton of two D-class models sits on vertices
Lambda_1 x I_2 over the dual product G_1 x G_2^d.  For a letter e, vertices
(lambda, i) and (mu, j) are joined when lambda = tau_e(mu) and j = sigma_e(i);
reading the edge from (lambda, i) to (mu, j) the gain is (d^-1, c) with d
tau_e's right cocycle at mu and c sigma_e's left cocycle at i.  The edge
formula is derived from the cocycle conventions; the normative contract is
the splice identity (i0,a,lambda)(i,h,lambda') = (i0,a.x,mu)(j,y.h,lambda'),
which the test-suite checks through the rewriting oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .groups import CosetDescriptor, DualProductGroup, FiniteGroup, Subgroup, dual_product, subgroup_closure
from .rees import PartialActionTable, RegularDClassModel


@dataclass(frozen=True)
class GainEdge:
    u: object
    v: object
    gain: int          # gain read from u to v
    letter: int | None = None
    eid: int = 0       # multigraph identity

    def gain_from(self, group: FiniteGroup, start) -> int:
        return self.gain if start == self.u else group.inv(self.gain)

    def other(self, start):
        return self.v if start == self.u else self.u


class GainGraph:
    """Undirected multigraph with orientation-sensitive group gains."""

    def __init__(self, gain_group: FiniteGroup, vertices, edges):
        self.gain_group = gain_group
        self.vertices = sorted(vertices)
        index = {v: k for k, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self.edges: list[GainEdge] = []
        for k, e in enumerate(edges):
            u, v, gain = e[0], e[1], int(e[2])
            letter = e[3] if len(e) > 3 else None
            if u not in index or v not in index:
                raise ValueError(f"edge endpoint outside vertex set: {e}")
            if u == v and gain_group.mul(gain, gain) != gain_group.identity:
                raise ValueError("loops must carry involutions")
            self.edges.append(GainEdge(u, v, gain, letter, k))
        self.adj: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            self.adj[e.u].append(e)
            if e.v != e.u:
                self.adj[e.v].append(e)
        for v in self.vertices:
            self.adj[v].sort(key=lambda e: (self._key(e.other(v)), e.gain_from(self.gain_group, v), e.eid))
        self._component: dict = {}
        for v in self.vertices:
            if v not in self._component:
                for w in self._bfs_order(v):
                    self._component[w] = v
        self._tree_cache: dict = {}
        self._vgroup_cache: dict = {}

    def _key(self, v):
        return self.vertices.index(v) if not isinstance(v, (int, tuple, str)) else v

    def _bfs_order(self, root):
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            yield v
            for e in self.adj[v]:
                w = e.other(v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    def same_component(self, u, v) -> bool:
        return self._component[u] == self._component[v]

    def components(self) -> list[list]:
        out: dict = {}
        for v in self.vertices:
            out.setdefault(self._component[v], []).append(v)
        return [sorted(vs) for _, vs in sorted(out.items())]

    # -- spanning tree ------------------------------------------------------

    def _tree(self, root):
        """Deterministic BFS tree: vertex -> (gain of tree path root -> vertex),
        plus the set of tree edge ids."""
        if root in self._tree_cache:
            return self._tree_cache[root]
        g = self.gain_group
        gain_to = {root: g.identity}
        tree_edges: set[int] = set()
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in self.adj[v]:
                w = e.other(v)
                if w not in gain_to:
                    gain_to[w] = g.mul(gain_to[v], e.gain_from(g, v))
                    tree_edges.add(e.eid)
                    queue.append(w)
        self._tree_cache[root] = (gain_to, tree_edges)
        return gain_to, tree_edges

    def shortest_path_gain(self, u, v) -> int | None:
        """Gain of the BFS shortest path u -> v (deterministic tie-breaking)."""
        if not self.same_component(u, v):
            return None
        gain_to, _ = self._tree(u)
        return gain_to[v]

    # -- vertex groups --------------------------------------------------------

    def vertex_group(self, u, method: str = "spanning_tree") -> Subgroup:
        if u not in self.adj:
            raise KeyError(f"vertex {u!r} not in graph")
        key = (u, method)
        if key not in self._vgroup_cache:
            if method == "spanning_tree":
                self._vgroup_cache[key] = self._vertex_group_tree(u)
            elif method == "conjugated_cycles":
                self._vgroup_cache[key] = self._vertex_group_cycles(u)
            else:
                raise ValueError(f"unknown method {method!r}")
        return self._vgroup_cache[key]

    def _vertex_group_tree(self, u) -> Subgroup:
        g = self.gain_group
        gain_to, tree_edges = self._tree(u)
        gens = []
        for e in self.edges:
            if e.eid in tree_edges or e.u not in gain_to:
                continue
            # fundamental cycle: tree path to e.u, edge, tree path back
            gens.append(g.mul(g.mul(gain_to[e.u], e.gain), g.inv(gain_to[e.v])))
        return subgroup_closure(g, sorted(set(gens)))

    def _vertex_group_cycles(self, u) -> Subgroup:
        """Close the gains of all conjugated cycles p c p^-1 based at u.

        p runs over simple paths from u, c over cycles based at p's endpoint
        meeting p only there.  Cycles may reuse an edge immediately (the gain
        is then trivial), which is harmless.
        """
        g = self.gain_group
        gains: set[int] = set()

        def cycles_from(base, blocked: frozenset):
            # enumerate gains of cycles based at `base` avoiding `blocked`
            stack = [(base, g.identity, frozenset([base]))]
            while stack:
                v, acc, visited = stack.pop()
                for e in self.adj[v]:
                    w = e.other(v)
                    step = g.mul(acc, e.gain_from(g, v))
                    if w == base and (v != base or e.u == e.v):
                        yield step
                        continue
                    if w in blocked or w in visited:
                        continue
                    stack.append((w, step, visited | {w}))

        def paths(v, acc, visited):
            # v reachable from u along a simple path with gain acc
            for c in cycles_from(v, visited - {v}):
                gains.add(g.mul(g.mul(acc, c), g.inv(acc)))
            for e in self.adj[v]:
                w = e.other(v)
                if w in visited:
                    continue
                paths(w, g.mul(acc, e.gain_from(g, v)), visited | {w})

        paths(u, g.identity, frozenset([u]))
        return subgroup_closure(g, sorted(gains))

    def walk_coset(self, u, v) -> CosetDescriptor | None:
        """W(u, v) as the right coset W_u . (fixed shortest-path gain), or None
        across components.  The empty walk makes walk_coset(u, u) = W_u . 1."""
        gain = self.shortest_path_gain(u, v)
        if gain is None:
            return None
        return CosetDescriptor(self.vertex_group(u), gain, "right")

    def walk_gains_up_to(self, u, v, length: int) -> frozenset:
        """All gains of walks u -> v with at most `length` edges, by dynamic
        programming over (vertex, walk length); the oracle for walk_coset."""
        g = self.gain_group
        current: dict = {u: {g.identity}}
        out = set(current.get(v, ()) if u == v else ())
        if u == v:
            out.add(g.identity)
        for _ in range(length):
            nxt: dict = {}
            for x, gains in current.items():
                for e in self.adj[x]:
                    w = e.other(x)
                    step = e.gain_from(g, x)
                    bucket = nxt.setdefault(w, set())
                    for acc in gains:
                        bucket.add(g.mul(acc, step))
            current = nxt
            out |= current.get(v, set())
        return frozenset(out)

    def to_dot(self, name: str = "gain_graph", vertex_label=str, gain_label=None) -> str:
        gl = gain_label or (lambda x: self.gain_group.name(x))
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{vertex_label(v)}";')
        for e in self.edges:
            tag = "" if e.letter is None else f"{e.letter}:"
            lines.append(f'  "{vertex_label(e.u)}" -- "{vertex_label(e.v)}" [label="{tag}{gl(e.gain)}"];')
        lines.append("}")
        return "\n".join(lines)


class ContactAutomaton:
    """The gain graph A(D1, D2) on Lambda_1 x I_2 over G_1 x G_2^d."""

    def __init__(self, graph: GainGraph, d1: int, d2: int, model1: RegularDClassModel,
                 model2: RegularDClassModel):
        self.graph = graph
        self.d1 = d1
        self.d2 = d2
        self.model1 = model1
        self.model2 = model2

    @property
    def gain_group(self) -> DualProductGroup:
        return self.graph.gain_group

    def to_dot(self, letter_label=str) -> str:
        return self.graph.to_dot(
            name=f"contact_{self.d1}_{self.d2}",
            vertex_label=lambda v: f"l{v[0]}i{v[1]}",
            gain_label=lambda x: self.gain_group.name(x),
        )


def build_contact(model1: RegularDClassModel, model2: RegularDClassModel,
                  actions: PartialActionTable, *, max_group_order: int = 5000,
                  gain_group: DualProductGroup | None = None) -> ContactAutomaton:
    """Assemble A(D1, D2) from the partial-action tables.

    One scan of (letter, mu in dom tau, i in dom sigma) suffices: the second
    transition rule describes the same undirected edges read backwards, and
    idempotency of the actions rules out reversed duplicates.
    """
    if gain_group is None:
        gain_group = dual_product(model1.group, model2.group, max_order=max_group_order)
    vertices = [(lam, i) for lam in range(model1.n_lambda) for i in range(model2.n_i)]
    edges = []
    for e in range(actions.n_letters):
        tau = actions.tau_map(model1.dclass_id, e)
        sigma = actions.sigma_map(model2.dclass_id, e)
        if not tau or not sigma:
            continue
        for mu, (lam, d_coc) in sorted(tau.items()):
            for i, (j, c_coc) in sorted(sigma.items()):
                gain = gain_group.pair(model1.group.inv(d_coc), c_coc)
                edges.append(((lam, i), (mu, j), gain, e))
    graph = GainGraph(gain_group, vertices, edges)
    return ContactAutomaton(graph, model1.dclass_id, model2.dclass_id, model1, model2)
