"""Construct the Cayley graph and the bipartite coset graph for n = 2,
and exhibit the correspondence between them.

The Cayley graph uses the union of the two generating sets as connection
set.  The coset graph has the right cosets of the two coordinate
subgroups as vertices, adjacent when they intersect.  The clique graph
of the Cayley graph is the coset graph, and the line graph of the coset
graph is the Cayley graph back again.
"""

from mdg import cli, graphs, permgroups as pg

G, S, gamma, sigma, info = cli.build_instance(2)
print(f"Cayley graph: {gamma.n} vertices, valency {gamma.is_regular()}, "
      f"{gamma.edge_count()} edges")
print(f"coset graph:  {sigma.n} vertices, valency {sigma.is_regular()}, "
      f"{sigma.edge_count()} edges")

# maximal cliques of the Cayley graph are the coset cliques
cliques = graphs.maximal_cliques(gamma)
print(f"{len(cliques)} maximal cliques, sizes {sorted({len(c) for c in cliques})}")
print("clique graph == coset graph:",
      cli.clique_graph_matches_sigma(G, gamma, sigma, info, generic=True))

# the explicit vertex -> edge bijection realizing the line-graph isomorphism
phi = graphs.phi_map(G, gamma, sigma, info)
print("line-graph bijection covers all vertices:", sorted(phi) == list(range(gamma.n)))

# quotient by the derived-subgroup orbits: a complete bipartite graph,
# covered semiregularly with fibres of size 2^(n^2)
part, cell_of = cli.derived_orbit_partition(G, info)
quotient, preserved = graphs.normal_quotient(sigma, part)
print("quotient is complete bipartite:", pg.is_complete_bipartite(quotient))
print("valency preserved by the cover:", preserved)
print("fibre sizes:", sorted({len(c) for c in part}))

# two-colour the Cayley edges by generator side; triangles are monochromatic
import mdg.groups as groups
X = groups.closure(G, G.x_gens)
Y = groups.closure(G, G.y_gens)
colors = graphs.edge_coloring(gamma, G, X, Y)
print("all triangles monochromatic:", graphs.triangles_monochromatic(gamma, colors))
