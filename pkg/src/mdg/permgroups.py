"""Permutation groups on graph vertices.

Permutations are numpy int32 arrays mapping vertex -> image.  PermGroup
keeps a base and strong generating set computed by a deterministic,
randomisation-free Schreier-Sims (base points chosen as minimal moved
points; transversal elements rebuilt by walking the Schreier tree, so no
per-point permutation storage is needed at large degrees).
"""

from dataclasses import dataclass, field

import numpy as np

from . import f2, graphs


def identity_perm(degree: int) -> np.ndarray:
    return np.arange(degree, dtype=np.int32)


def as_perm(images) -> np.ndarray:
    p = np.asarray(images, dtype=np.int32)
    if sorted(p.tolist()) != list(range(len(p))):
        raise ValueError("not a permutation")
    return p


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Apply p first, then q: (p * q)[v] = q[p[v]]."""
    return q[p]


def inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_identity(p: np.ndarray) -> bool:
    return bool(np.all(p == np.arange(len(p), dtype=p.dtype)))


def perm_key(p: np.ndarray) -> bytes:
    return p.tobytes()


class _Level:
    __slots__ = ("base", "gens", "inv_gens", "orbit", "pending")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[np.ndarray] = []
        self.inv_gens: list[np.ndarray] = []
        self.orbit: dict[int, tuple[int, int]] = {base: (-1, -1)}
        self.pending: list[tuple[int, int]] = []  # (point, gen index) Schreier pairs


class PermGroup:
    """Group generated by vertex permutations, with exact order and
    membership via a base and strong generating set."""

    def __init__(self, gens, degree: int | None = None):
        gens = [as_perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("need a degree for the trivial group")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators must share a degree")
        self.degree = degree
        self.gens = [g for g in gens if not is_identity(g)]
        self._levels: list[_Level] | None = None

    # -- BSGS construction -------------------------------------------------

    def _transversal_inv_apply(self, level: _Level, p: np.ndarray, point: int) -> np.ndarray:
        """Return p * u^-1 where u is the transversal element b -> point,
        by walking the Schreier tree and applying inverse generators."""
        path = []
        while point != level.base:
            prev, gi = level.orbit[point]
            path.append(gi)
            point = prev
        for gi in path:
            p = compose(p, level.inv_gens[gi])
        return p

    def _transversal(self, level: _Level, point: int) -> np.ndarray:
        path = []
        while point != level.base:
            prev, gi = level.orbit[point]
            path.append(gi)
            point = prev
        p = identity_perm(self.degree)
        for gi in reversed(path):
            p = compose(p, level.gens[gi])
        return p

    def _orbit_grow(self, level: _Level, seeds) -> None:
        frontier = list(seeds)
        while frontier:
            new = []
            for pt in frontier:
                for gi, g in enumerate(level.gens):
                    img = int(g[pt])
                    if img not in level.orbit:
                        level.orbit[img] = (pt, gi)
                        level.pending.extend((img, k) for k in range(len(level.gens)))
                        new.append(img)
            frontier = new

    def _add_gen_at(self, li: int, p: np.ndarray) -> None:
        """Install a strong generator fixing the first ``li`` base points.

        It joins the generating set of every level up to ``li``: it lies
        in all those stabilizers and may grow any of their orbits."""
        levels = self._levels
        if li == len(levels):
            moved = int(np.nonzero(p != np.arange(self.degree, dtype=np.int32))[0][0])
            levels.append(_Level(moved))
        p_inv = inverse(p)
        for i in range(min(li, len(levels) - 1) + 1):
            level = levels[i]
            level.gens.append(p)
            level.inv_gens.append(p_inv)
            gi = len(level.gens) - 1
            level.pending.extend((pt, gi) for pt in level.orbit)
            self._orbit_grow(level, list(level.orbit))

    def _sift_from(self, li: int, p: np.ndarray) -> tuple[np.ndarray, int]:
        """Sift p through levels >= li; returns (residue, level index where
        it stuck).  Residue is the identity iff p is in the subgroup."""
        levels = self._levels
        i = li
        while i < len(levels):
            level = levels[i]
            img = int(p[level.base])
            if img != level.base:
                if img not in level.orbit:
                    return p, i
                p = self._transversal_inv_apply(level, p, img)
            i += 1
        return p, len(levels)

    def _build(self) -> None:
        if self._levels is not None:
            return
        self._levels = []
        for g in self.gens:
            residue, li = self._sift_from(0, g)
            if not is_identity(residue):
                self._add_gen_at(li, residue)
        # Process Schreier pairs until every level is verified; a pair that
        # once sifts to the identity never needs re-checking.
        while True:
            li = next((i for i, lv in enumerate(self._levels) if lv.pending), None)
            if li is None:
                break
            level = self._levels[li]
            pt, gi = level.pending.pop()
            g = level.gens[gi]
            u = self._transversal(level, pt)
            p = compose(u, g)
            p = self._transversal_inv_apply(level, p, int(p[level.base]))
            residue, lj = self._sift_from(li + 1, p)
            if not is_identity(residue):
                self._add_gen_at(lj, residue)

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        self._build()
        n = 1
        for level in self._levels:
            n *= len(level.orbit)
        return n

    def base(self) -> list[int]:
        self._build()
        return [lv.base for lv in self._levels]

    def contains(self, p) -> bool:
        p = as_perm(p)
        if len(p) != self.degree:
            return False
        self._build()
        residue, _ = self._sift_from(0, p)
        return is_identity(residue)

    def basic_orbits(self) -> list[list[int]]:
        self._build()
        return [sorted(lv.orbit) for lv in self._levels]

    def stabilizer_gens(self, li: int = 1) -> list[np.ndarray]:
        """Strong generators fixing the first ``li`` base points."""
        self._build()
        return [g for lv in self._levels[li:] for g in lv.gens]


def orbit_of(gens, seed: int, degree: int) -> list[int]:
    seen = np.zeros(degree, dtype=bool)
    seen[seed] = True
    frontier = np.array([seed], dtype=np.int32)
    while len(frontier):
        imgs = np.unique(np.concatenate([g[frontier] for g in gens])) if gens else frontier[:0]
        new = imgs[~seen[imgs]]
        seen[new] = True
        frontier = new
    return np.nonzero(seen)[0].tolist()


def orbits(gens, degree: int) -> list[list[int]]:
    """Orbit partition, cells ordered by minimal vertex."""
    gens = [as_perm(g) for g in gens]
    assigned = np.zeros(degree, dtype=bool)
    out = []
    for v in range(degree):
        if assigned[v]:
            continue
        orb = orbit_of(gens, v, degree)
        for u in orb:
            assigned[u] = True
        out.append(orb)
    return out


def tuple_orbit_is_all(gens, seed: tuple, universe_size: int) -> bool:
    """BFS the orbit of an ordered tuple under coordinatewise action and
    report whether it reaches ``universe_size`` tuples."""
    seen = {seed}
    frontier = [seed]
    while frontier:
        new = []
        for t in frontier:
            for g in gens:
                img = tuple(int(g[v]) for v in t)
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        if len(seen) > universe_size:
            raise ValueError("orbit exceeded the stated universe size")
        frontier = new
    return len(seen) == universe_size


def is_automorphism(graph: graphs.Graph, p: np.ndarray) -> bool:
    p = as_perm(p)
    if len(p) != graph.n:
        return False
    k = graph.is_regular()
    if k is not None and k > 0:
        nbr = np.array(graph.neighbors, dtype=np.int32)
        return bool(np.array_equal(np.sort(p[nbr], axis=1), nbr[p]))
    for v in range(graph.n):
        if sorted(int(p[u]) for u in graph.neighbors[v]) != graph.neighbors[int(p[v])]:
            return False
    return True


# -- actions attached to the group backends --------------------------------

def right_mult_perm(G, g: int) -> np.ndarray:
    """R(g): vertex k -> code of (element k) * g."""
    if hasattr(G, "mul_vec"):
        return G.mul_vec(np.arange(G.order, dtype=np.uint64), np.uint64(g)).astype(np.int32)
    return np.array([G.mul(k, g) for k in G.elements()], dtype=np.int32)


def right_mult_action(G, gens=None) -> list[np.ndarray]:
    """Right-multiplication permutations for a generating set of G."""
    return [right_mult_perm(G, g) for g in (G.gens if gens is None else gens)]


def x_side_lift(G, m: int) -> np.ndarray:
    """Automorphism of the tensor group induced by an invertible matrix on
    the X side: x -> x.M, y fixed, A -> M^T A."""
    n = G.n
    mt = f2.mat_transpose(m, n)
    out = np.empty(G.order, dtype=np.int32)
    for code in G.elements():
        x, y, a = G.decode(code)
        out[code] = G.encode(f2.vec_mat(x, m, n), y, f2.mat_mul(mt, a, n))
    return out


def y_side_lift(G, m: int) -> np.ndarray:
    """y -> y.M, x fixed, A -> A M."""
    n = G.n
    out = np.empty(G.order, dtype=np.int32)
    for code in G.elements():
        x, y, a = G.decode(code)
        out[code] = G.encode(x, f2.vec_mat(y, m, n), f2.mat_mul(a, m, n))
    return out


def swap_sides_perm(G) -> np.ndarray:
    """The involution composing inversion with the swap of the two vector
    sides: (x, y, A) -> (y, x, outer(y, x) + A^T)."""
    n = G.n
    out = np.empty(G.order, dtype=np.int32)
    for code in G.elements():
        x, y, a = G.decode(code)
        out[code] = G.encode(y, x, f2.outer(y, x, n) ^ f2.mat_transpose(a, n))
    return out


def connection_stabilizer_gens(G, verify_graph: graphs.Graph | None = None) -> list[np.ndarray]:
    """Generators of the vertex-0 stabilizer preserving the connection set
    (X u Y) \\ {0}: one lift per GL transvection on each side, plus the
    side-swapping involution.  Each is optionally verified to be an
    automorphism of the supplied Cayley graph."""
    perms = [x_side_lift(G, m) for m in f2.gl_generators(G.n)]
    perms += [y_side_lift(G, m) for m in f2.gl_generators(G.n)]
    perms.append(swap_sides_perm(G))
    if verify_graph is not None:
        for p in perms:
            if not is_automorphism(verify_graph, p):
                raise ValueError("lift failed automorphism verification")
    return perms


def order_with_regular_normal_subgroup(G, stab_gens) -> int:
    """Order of <R(G) gens, stab_gens> via the verified factorisation
    R(G) . <stab_gens>.

    Checks that every stab generator fixes vertex 0 and conjugates each
    R(s) back into R(G); then the product set is a subgroup, it meets the
    stabilizer of 0 in exactly <stab_gens>, and the order is
    |G| * |<stab_gens>| with the second factor from an honest BSGS.
    """
    r_gens = {s: right_mult_perm(G, s) for s in G.gens}
    for sg in stab_gens:
        if int(sg[G.identity]) != G.identity:
            raise ValueError("stabilizer generator moves the identity vertex")
        sg_inv = inverse(sg)
        for s, rp in r_gens.items():
            conj = compose(compose(sg_inv, rp), sg)
            t = int(conj[G.identity])
            if not np.array_equal(conj, right_mult_perm(G, t)):
                raise ValueError("stabilizer generator does not normalise the regular action")
    return G.order * PermGroup(list(stab_gens), G.degree if hasattr(G, "degree") else G.order).order()


def expected_symmetry_order(n: int) -> int:
    """Order of the group generated by the regular action together with
    the connection-set stabilizer lifts: 2^(n^2+2n) * |GL(n,2)|^2 * 2."""
    return (1 << (n * n + 2 * n)) * f2.gl_order(n) ** 2 * 2


def quotient_perm(partition: list[list[int]], cell_of, p: np.ndarray) -> np.ndarray:
    """Push a permutation down to the cells of an invariant partition;
    raises ValueError if some cell image straddles two cells."""
    out = np.empty(len(partition), dtype=np.int32)
    for ci, cell in enumerate(partition):
        images = {cell_of[int(p[v])] for v in cell}
        if len(images) != 1:
            raise ValueError("permutation does not preserve the partition")
        out[ci] = images.pop()
    return as_perm(out)


# -- distance diagrams -----------------------------------------------------

@dataclass
class DistanceDiagram:
    """Equitable partition of the vertices into stabilizer orbits labelled
    by distance from the base vertex, with constant inter-cell neighbor
    counts."""
    base: int
    cells: list[list[int]]
    distances: list[int]
    counts: list[list[int]] = field(repr=False)

    def cell_sizes_by_distance(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for cell, d in zip(self.cells, self.distances):
            out.setdefault(d, []).append(len(cell))
        return [sorted(out[d]) for d in sorted(out)]

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "cells": [{"distance": d, "size": len(c), "members_min": c[0]}
                      for c, d in zip(self.cells, self.distances)],
            "counts": self.counts,
        }


def distance_diagram(graph: graphs.Graph, stab_gens, v: int) -> DistanceDiagram:
    stab_gens = [as_perm(g) for g in stab_gens]
    for g in stab_gens:
        if int(g[v]) != v:
            raise ValueError("stabilizer generators must fix the base vertex")
    dist, _ = graphs.bfs_layers(graph, v)
    cells = orbits(stab_gens, graph.n)
    dists = []
    for cell in cells:
        ds = {dist[u] for u in cell}
        if len(ds) != 1:
            raise ValueError("orbit does not refine the distance layers")
        dists.append(ds.pop())
    order = sorted(range(len(cells)), key=lambda i: (dists[i], cells[i][0]))
    cells = [cells[i] for i in order]
    dists = [dists[i] for i in order]
    cell_of = [0] * graph.n
    for ci, cell in enumerate(cells):
        for u in cell:
            cell_of[u] = ci
    counts = []
    for cell in cells:
        row = None
        for u in cell:
            c = [0] * len(cells)
            for w in graph.neighbors[u]:
                c[cell_of[w]] += 1
            if row is None:
                row = c
            elif row != c:
                raise ValueError("inter-cell neighbor count is not constant")
        counts.append(row)
    return DistanceDiagram(v, cells, dists, counts)


# -- transitivity checks ---------------------------------------------------

@dataclass
class TransitivityReport:
    vertex: bool
    edge: bool
    arc: bool
    two_arc: bool
    two_geodesic: bool
    distance: dict[int, bool]
    stabilizer_certified: bool

    def flags(self) -> dict:
        return {"vertex": self.vertex, "edge": self.edge, "arc": self.arc,
                "2-arc": self.two_arc, "2-geodesic": self.two_geodesic,
                **{f"{i}-distance": v for i, v in self.distance.items()}}


def _pair_orbit_count(stab_gens, pairs: set[tuple[int, int]]) -> int:
    remaining = set(pairs)
    count = 0
    while remaining:
        seed = min(remaining)
        frontier = [seed]
        remaining.discard(seed)
        while frontier:
            new = []
            for (u, w) in frontier:
                for g in stab_gens:
                    img = (int(g[u]), int(g[w]))
                    if img in remaining:
                        remaining.discard(img)
                        new.append(img)
            frontier = new
        count += 1
    return count


def transitivity_report(graph: graphs.Graph, gens, stab_gens, base: int = 0,
                        stabilizer_certified: bool = False) -> TransitivityReport:
    """Transitivity flags computed by stabilizer-orbit counting at a base
    vertex of a vertex-transitive graph.

    Positive flags are valid for the group generated by ``gens`` as long
    as ``stab_gens`` generate any subgroup of the base stabilizer;
    negative flags are only conclusive when the caller certifies that
    ``stab_gens`` generate the full stabilizer (``stabilizer_certified``).
    """
    gens = [as_perm(g) for g in gens]
    stab_gens = [as_perm(g) for g in stab_gens]
    for g in gens + stab_gens:
        if not is_automorphism(graph, g):
            raise ValueError("generator is not a graph automorphism")
    for g in stab_gens:
        if int(g[base]) != base:
            raise ValueError("stabilizer generator moves the base vertex")
    vertex = len(orbit_of(gens + stab_gens, base, graph.n)) == graph.n
    dist, _ = graphs.bfs_layers(graph, base)
    n1 = graph.neighbors[base]
    arc = vertex and _pair_orbit_count(stab_gens, {(u, u) for u in n1}) == 1
    if arc:
        edge = True
    else:
        # fall back to a direct edge-orbit sweep under the full generator set
        e0 = min(graph.edges())
        seen = {e0}
        frontier = [e0]
        while frontier:
            new = []
            for (u, w) in frontier:
                for g in gens + stab_gens:
                    a, b = int(g[u]), int(g[w])
                    img = (a, b) if a < b else (b, a)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        edge = len(seen) == graph.edge_count()
    pairs = {(u, w) for u in n1 for w in n1 if u != w}
    two_arc = vertex and len(pairs) > 0 and _pair_orbit_count(stab_gens, pairs) == 1
    geo = {(u, w) for (u, w) in pairs if not graph.has_edge(u, w)}
    two_geodesic = vertex and len(geo) > 0 and _pair_orbit_count(stab_gens, geo) == 1
    cells = orbits(stab_gens, graph.n)
    layer_orbit_count = {}
    for cell in cells:
        d = dist[cell[0]]
        layer_orbit_count[d] = layer_orbit_count.get(d, 0) + 1
    distance = {i: vertex and layer_orbit_count.get(i, 0) == 1 for i in (1, 2, 3)}
    return TransitivityReport(vertex, edge, arc, two_arc, two_geodesic, distance,
                              stabilizer_certified)


# -- induced actions and witnesses ----------------------------------------

def induced_sigma_perm(info: graphs.SigmaInfo, p: np.ndarray) -> np.ndarray:
    """Push a permutation of group-element vertices down to the coset
    vertices; raises ValueError if some coset image is not a coset."""
    n_x = info.n_x
    degree = n_x + len(info.y_cosets)
    out = np.empty(degree, dtype=np.int32)
    for vi, members in enumerate(info.x_cosets + info.y_cosets):
        image = sorted(int(p[m]) for m in members)
        first = image[0]
        xi = info.x_index[first]
        if info.x_cosets[xi] == image:
            out[vi] = xi
            continue
        yi = info.y_index[first]
        if info.y_cosets[yi] == image:
            out[vi] = n_x + yi
        else:
            raise ValueError("coset image is not a coset")
    return as_perm(out)


def bipartition(graph: graphs.Graph) -> tuple[list[int], list[int]]:
    color = [-1] * graph.n
    for start in range(graph.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        frontier = [start]
        while frontier:
            new = []
            for u in frontier:
                for w in graph.neighbors[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        new.append(w)
                    elif color[w] == color[u]:
                        raise ValueError("graph is not bipartite")
            frontier = new
    parts = ([v for v in range(graph.n) if color[v] == 0],
             [v for v in range(graph.n) if color[v] == 1])
    return parts


def is_complete_bipartite(graph: graphs.Graph) -> tuple[int, int] | None:
    try:
        a, b = bipartition(graph)
    except ValueError:
        return None
    if graph.edge_count() == len(a) * len(b):
        return len(a), len(b)
    return None


@dataclass
class EdgeAffineWitness:
    ok: bool
    subgroup_order: int
    failing_check: str | None = None
    subgroup: list[np.ndarray] | None = None


def perm_closure(gens, degree: int, budget: int = 1 << 14) -> list[np.ndarray]:
    gens = [as_perm(g) for g in gens]
    seen = {perm_key(identity_perm(degree)): identity_perm(degree)}
    frontier = list(seen.values())
    for g in gens:
        k = perm_key(g)
        if k not in seen:
            seen[k] = g
            frontier.append(g)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = compose(a, g)
                k = perm_key(p)
                if k not in seen:
                    seen[k] = p
                    new.append(p)
        if len(seen) > budget:
            raise ValueError("permutation closure exceeded budget")
        frontier = new
    return list(seen.values())


def edge_affine_witness(quotient: graphs.Graph, group_gens, candidate_gens) -> EdgeAffineWitness:
    """Verify that the candidate generators witness an edge-affine action
    on a complete bipartite quotient: the subgroup they generate must be
    elementary abelian of order m^2, normalised by every group generator,
    intransitive on vertices and regular on the m^2 edges."""
    parts = is_complete_bipartite(quotient)
    if parts is None or parts[0] != parts[1]:
        return EdgeAffineWitness(False, 0, "quotient is not a balanced complete bipartite graph")
    m = parts[0]
    sub = perm_closure(candidate_gens, quotient.n)
    fail = lambda why: EdgeAffineWitness(False, len(sub), why)
    if len(sub) != m * m:
        return fail(f"subgroup order {len(sub)} != {m * m}")
    for p in sub:
        if not is_identity(compose(p, p)):
            return fail("subgroup has an element of order > 2")
    for p in candidate_gens:
        for q in candidate_gens:
            if not np.array_equal(compose(p, q), compose(q, p)):
                return fail("candidate generators do not commute")
    keys = {perm_key(p) for p in sub}
    for g in group_gens:
        g_inv = inverse(as_perm(g))
        for c in candidate_gens:
            if perm_key(compose(compose(g_inv, as_perm(c)), as_perm(g))) not in keys:
                return fail("subgroup is not normalised by the group generators")
    if len(orbits(list(candidate_gens), quotient.n)) < 2:
        return fail("subgroup is vertex-transitive")
    e0 = min(quotient.edges())
    edge_orbit = set()
    for p in sub:
        a, b = int(p[e0[0]]), int(p[e0[1]])
        edge_orbit.add((a, b) if a < b else (b, a))
    if len(edge_orbit) != m * m:
        return fail("subgroup is not regular on the edges")
    return EdgeAffineWitness(True, len(sub), None, sub)


def line_graph_as_cayley(G, info: graphs.SigmaInfo, sigma: graphs.Graph,
                         gamma: graphs.Graph) -> tuple[list[int], bool]:
    """Reconstruct the connection set from the edge-regular action of G on
    the coset-graph edges (h sends the base edge {X, Y} to {Xh, Yh}).

    Returns (S, verdict): S is the set of elements moving the base edge to
    an incident edge, and the verdict is whether Cay(G, S) coincides
    vertex-for-vertex with the supplied line-graph model ``gamma``.
    """
    edge_of = {}
    for h in G.elements():
        edge_of[h] = (info.x_vertex(h), info.y_vertex(h))
    if len(set(edge_of.values())) != G.order or len(edge_of) != sigma.edge_count():
        raise ValueError("the action on edges is not regular")
    base = edge_of[G.identity]
    S = [h for h, e in edge_of.items()
         if e != base and (e[0] in base or e[1] in base)]
    cay = graphs.cayley_graph(G, S)
    return sorted(S), cay == gamma
