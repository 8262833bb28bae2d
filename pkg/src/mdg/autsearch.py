"""Graph automorphism search by partition refinement and backtracking.

The search is a certification search against a known subgroup: candidate
branches already reachable by known automorphisms are skipped, and every
other branch is either turned into a new explicit automorphism or refuted
by an exhaustive sub-search.  With the full group supplied as the known
subgroup the search degenerates into a (still exhaustive) verification
that nothing further exists.
"""

from dataclasses import dataclass

import numpy as np

from . import graphs, permgroups


class BudgetExceeded(RuntimeError):
    pass


def refine(graph: graphs.Graph, cells) -> list[list[int]]:
    """Deterministic equitable refinement: split every cell by the tuple
    of neighbor counts into all current cells, until stable."""
    cells = [sorted(c) for c in cells]
    while True:
        cell_of = [0] * graph.n
        for ci, c in enumerate(cells):
            for v in c:
                cell_of[v] = ci
        k = len(cells)
        new_cells = []
        changed = False
        for c in cells:
            buckets: dict[tuple, list[int]] = {}
            for v in c:
                counts = [0] * k
                for u in graph.neighbors[v]:
                    counts[cell_of[u]] += 1
                buckets.setdefault(tuple(counts), []).append(v)
            if len(buckets) > 1:
                changed = True
            for sig in sorted(buckets):
                new_cells.append(buckets[sig])
        cells = new_cells
        if not changed:
            return cells


def _individualize(cells, v: int) -> list[list[int]]:
    out = []
    for c in cells:
        if v in c and len(c) > 1:
            out.append([v])
            out.append([u for u in c if u != v])
        else:
            out.append(c)
    return out


def _refine_seq(graph: graphs.Graph, seq) -> list[list[int]]:
    cells = refine(graph, [list(range(graph.n))])
    for v in seq:
        cells = refine(graph, _individualize(cells, v))
    return cells


class _Matcher:
    """Searches for an automorphism sending one individualization sequence
    to another, sharing a node budget across calls."""

    def __init__(self, graph: graphs.Graph, budget: int):
        self.graph = graph
        self.budget = budget
        self.nodes = 0

    def find(self, seq_s: list[int], seq_t: list[int]) -> np.ndarray | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"matcher exceeded {self.budget} nodes")
        g = self.graph
        cs = _refine_seq(g, seq_s)
        ct = _refine_seq(g, seq_t)
        if [len(c) for c in cs] != [len(c) for c in ct]:
            return None
        # individualized vertices must sit in matching positions
        pos_s = {c[0]: i for i, c in enumerate(cs) if len(c) == 1}
        pos_t = {c[0]: i for i, c in enumerate(ct) if len(c) == 1}
        if [pos_s[v] for v in seq_s] != [pos_t[v] for v in seq_t]:
            return None
        split = next((i for i, c in enumerate(cs) if len(c) > 1), None)
        if split is None:
            p = np.empty(g.n, dtype=np.int32)
            for c_s, c_t in zip(cs, ct):
                p[c_s[0]] = c_t[0]
            if permgroups.is_automorphism(g, p):
                return p
            return None
        v = cs[split][0]
        for u in ct[split]:
            found = self.find(seq_s + [v], seq_t + [u])
            if found is not None:
                return found
        return None


@dataclass
class AutResult:
    gens: list
    order: int | None
    complete: bool
    nodes: int

    def group(self, degree: int) -> permgroups.PermGroup:
        return permgroups.PermGroup(self.gens, degree)


def automorphism_group(graph: graphs.Graph, known_gens=(), node_budget: int = 1 << 20) -> AutResult:
    """Full automorphism group as (generators, order) from a backtrack
    search seeded with ``known_gens``.

    The order is exact: at every level each vertex of the branching cell
    is either reached by a found automorphism or exhaustively refuted,
    so the orbit products equal the true stabilizer-chain indices.
    On budget exhaustion returns complete=False with order None.
    """
    gens = [permgroups.as_perm(g) for g in known_gens]
    for g in gens:
        if not permgroups.is_automorphism(graph, g):
            raise ValueError("known generator is not an automorphism")
    matcher = _Matcher(graph, node_budget)
    order = 1
    seq: list[int] = []
    cells = refine(graph, [list(range(graph.n))])
    complete = True
    try:
        while True:
            split = next((i for i, c in enumerate(cells) if len(c) > 1), None)
            if split is None:
                break
            v = cells[split][0]
            stab = [g for g in gens if all(int(g[x]) == x for x in seq)]
            orb_v = set(permgroups.orbit_of(stab, v, graph.n))
            refuted: set[int] = set()
            for u in cells[split]:
                if u in orb_v or u in refuted:
                    continue
                p = matcher.find(seq + [v], seq + [u])
                if p is None:
                    refuted.update(permgroups.orbit_of(stab, u, graph.n))
                else:
                    gens.append(p)
                    stab.append(p)
                    orb_v = set(permgroups.orbit_of(stab, v, graph.n))
            order *= len(orb_v)
            seq.append(v)
            cells = refine(graph, _individualize(cells, v))
    except BudgetExceeded:
        return AutResult(gens, None, False, matcher.nodes)
    return AutResult(gens, order, complete, matcher.nodes)


def _certificate(graph: graphs.Graph, labeling: list[int]) -> bytes:
    """Adjacency bits of the relabelled graph; labeling[pos] = vertex."""
    pos = [0] * graph.n
    for i, v in enumerate(labeling):
        pos[v] = i
    bits = bytearray((graph.n * graph.n + 7) // 8)
    for (u, w) in graph.edges():
        a, b = pos[u], pos[w]
        if a > b:
            a, b = b, a
        k = a * graph.n + b
        bits[k >> 3] |= 1 << (k & 7)
    return bytes(bits)


def canonical_form(graph: graphs.Graph, node_budget: int = 1 << 20):
    """Canonical relabelling: returns (canonical graph, labeling, AutResult).

    Two graphs are isomorphic iff their canonical graphs are equal.
    Branches are pruned modulo orbits of the pointwise prefix stabilizer
    inside the full automorphism group, which is computed first.
    Practical for graphs up to a few hundred vertices.
    """
    if graph.n > 512:
        raise ValueError("canonical_form is limited to 512 vertices")
    aut = automorphism_group(graph, node_budget=node_budget)
    if not aut.complete:
        raise BudgetExceeded("automorphism search did not finish")
    best: dict = {"cert": None, "labeling": None}
    nodes = [0]

    def search(seq, cells):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetExceeded(f"canonical search exceeded {node_budget} nodes")
        split = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if split is None:
            labeling = [c[0] for c in cells]
            cert = _certificate(graph, labeling)
            if best["cert"] is None or cert < best["cert"]:
                best["cert"] = cert
                best["labeling"] = labeling
            return
        stab = [g for g in aut.gens if all(int(g[x]) == x for x in seq)]
        covered: set[int] = set()
        for u in cells[split]:
            if u in covered:
                continue
            covered.update(permgroups.orbit_of(stab, u, graph.n))
            search(seq + [u], refine(graph, _individualize(cells, u)))

    search([], refine(graph, [list(range(graph.n))]))
    labeling = best["labeling"]
    pos = [0] * graph.n
    for i, v in enumerate(labeling):
        pos[v] = i
    canon = graphs.Graph(graph.n, [(pos[u], pos[w]) for (u, w) in graph.edges()])
    return canon, labeling, aut
