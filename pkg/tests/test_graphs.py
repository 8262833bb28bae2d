import pytest
from hypothesis import given, settings, strategies as st

from mdg import f2, graphs, groups


G2 = groups.TensorGroup(2)
S2 = graphs.xy_connection_set(G2)
GAMMA2 = graphs.cayley_graph(G2, S2)
SIGMA2, INFO2 = graphs.sigma_graph(G2)


def test_cayley_validations():
    with pytest.raises(ValueError):
        graphs.cayley_graph(G2, [0, 1])
    with pytest.raises(ValueError):
        # f1 * e1 is not an involution, and its inverse is missing
        graphs.cayley_graph(G2, [G2.mul(G2.y_gens[0], G2.x_gens[0])])


def test_cayley_k2():
    table = [[0, 1], [1, 0]]
    T = groups.TableGroup(table)
    g = graphs.cayley_graph(T, [1])
    assert g.n == 2 and g.edge_count() == 1


def test_gamma2_counts():
    assert GAMMA2.n == 256
    assert GAMMA2.is_regular() == 6
    assert GAMMA2.edge_count() == 768


def test_sigma2_counts():
    assert SIGMA2.n == 128
    assert SIGMA2.is_regular() == 4
    assert SIGMA2.edge_count() == 256


def test_sigma_neighborhood_structure():
    # the neighbors of the coset Xh are exactly the cosets Yxh, x in X
    X = groups.closure(G2, G2.x_gens)
    for h in (0, 7, 100, 255):
        v = INFO2.x_vertex(h)
        expect = sorted({INFO2.y_vertex(G2.mul(x, h)) for x in X})
        assert SIGMA2.neighbors[v] == expect


def test_complete_bipartite():
    k = graphs.complete_bipartite(4, 4)
    assert k.n == 8 and k.edge_count() == 16 and k.is_regular() == 4
    single = graphs.complete_bipartite(1, 1)
    assert single.edge_count() == 1


def test_maximal_cliques_small():
    k3 = graphs.Graph(3, [(0, 1), (0, 2), (1, 2)])
    assert graphs.maximal_cliques(k3) == [[0, 1, 2]]
    cg, cliques = graphs.clique_graph(k3)
    assert cg.n == 1 and cg.edge_count() == 0
    k44 = graphs.complete_bipartite(4, 4)
    assert len(graphs.maximal_cliques(k44)) == 16  # the edges


def test_clique_fast_path_matches_generic():
    generic = graphs.maximal_cliques(GAMMA2)
    fast = sorted(sorted(c) for c in graphs.coset_cliques(G2, INFO2))
    assert generic == fast
    graphs.verify_clique_cover(GAMMA2, fast)


def test_verify_clique_cover_rejects_bad_input():
    with pytest.raises(ValueError):
        # an edge is not a maximal clique here (cosets have size 4)
        graphs.verify_clique_cover(GAMMA2, [list(e) for e in GAMMA2.edges()])


def test_line_graph_small():
    k3 = graphs.Graph(3, [(0, 1), (0, 2), (1, 2)])
    lg, _ = graphs.line_graph(k3)
    assert lg.n == 3 and lg.edge_count() == 3
    star = graphs.Graph(4, [(0, 1), (0, 2), (0, 3)])
    lg2, _ = graphs.line_graph(star)
    assert lg2.n == 3 and lg2.edge_count() == 3


def test_line_graph_of_sigma():
    lg, _ = graphs.line_graph(SIGMA2)
    assert lg.n == 256
    assert lg.is_regular() == 6


def test_phi_map():
    phi = graphs.phi_map(G2, GAMMA2, SIGMA2, INFO2)
    lg, edge_list = graphs.line_graph(SIGMA2)
    assert edge_list[phi[0]] == (INFO2.x_vertex(0), INFO2.y_vertex(0))
    assert sorted(phi) == list(range(256))


def test_normal_quotient_trivial():
    q, preserved = graphs.normal_quotient(GAMMA2, [[v] for v in range(GAMMA2.n)])
    assert q == GAMMA2 and preserved
    with pytest.raises(ValueError):
        graphs.normal_quotient(GAMMA2, [[0, 1]])


def test_bfs_layers():
    dist, sizes = graphs.bfs_layers(GAMMA2, 0)
    assert sizes == [1, 6, 18, 54, 117, 54, 6]
    assert max(dist) == 6
    _, k = graphs.bfs_layers(graphs.complete_bipartite(4, 4), 0)
    assert k == [1, 4, 3]
    _, single = graphs.bfs_layers(graphs.Graph(1, []), 0)
    assert single == [1]


def test_edge_coloring():
    X = groups.closure(G2, G2.x_gens)
    Y = groups.closure(G2, G2.y_gens)
    colors = graphs.edge_coloring(GAMMA2, G2, X, Y)
    assert len(colors) == 768
    counts = (sum(1 for c in colors.values() if c == "X"),
              sum(1 for c in colors.values() if c == "Y"))
    assert counts == (384, 384)
    assert graphs.triangles_monochromatic(GAMMA2, colors)


def _layer_sets(n):
    G = groups.TensorGroup(n)
    gamma = graphs.cayley_graph(G, graphs.xy_connection_set(G))
    dist, _ = graphs.bfs_layers(gamma, 0)
    x0 = [x for x in groups.closure(G, G.x_gens) if x]
    y0 = [y for y in groups.closure(G, G.y_gens) if y]
    return G, dist, x0, y0


@pytest.mark.parametrize("n", [2, 3])
def test_distance_two_layer_structure(n):
    G, dist, x0, y0 = _layer_sets(n)
    expect = set()
    for x in x0:
        for y in y0:
            xv, yv = x, G.decode(y)[1]
            expect.add(G.encode(xv, yv, 0))
            expect.add(G.encode(xv, yv, f2.outer(xv, yv, n)))
    assert {v for v in range(G.order) if dist[v] == 2} == expect


@pytest.mark.parametrize("n", [2, 3])
def test_distance_three_layer_structure(n):
    G, dist, x0, y0 = _layer_sets(n)
    expect = set()
    for x in x0:
        xv = x
        for y in y0:
            yv = G.decode(y)[1]
            t = f2.outer(xv, yv, n)
            expect.add(G.encode(0, yv, t))   # y + x(x)y
            expect.add(G.encode(xv, 0, t))   # x + x(x)y
            for y2 in y0:
                y2v = G.decode(y2)[1]
                if y2v != yv:
                    expect.add(G.encode(xv, yv, f2.outer(xv, y2v, n)))
            for x2 in x0:
                if x2 != x:
                    expect.add(G.encode(xv, yv, f2.outer(x2, yv, n)))
    assert {v for v in range(G.order) if dist[v] == 3} == expect


def test_graph6_known_strings():
    k2 = graphs.Graph(2, [(0, 1)])
    assert graphs.to_graph6(k2) == "A_"
    p3 = graphs.Graph(3, [(0, 1), (1, 2)])
    assert graphs.to_graph6(p3) == "Bg"


@given(st.integers(min_value=1, max_value=12), st.data())
@settings(max_examples=100)
def test_graph6_roundtrip(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = [e for e in pairs if data.draw(st.booleans())]
    g = graphs.Graph(n, chosen)
    assert graphs.from_graph6(graphs.to_graph6(g)) == g


def test_graph6_long_header_roundtrip():
    s = graphs.to_graph6(SIGMA2)
    assert s.startswith("~")
    assert graphs.from_graph6(s) == SIGMA2


def test_edgelist_roundtrip():
    text = graphs.to_edgelist(GAMMA2)
    assert len(text.strip().splitlines()) == 768
    assert graphs.from_edgelist(text, n=256) == GAMMA2
