"""Symmetries of the two graphs for n = 2.

The regular right-multiplication action combines with three families of
vertex-stabilizer lifts (matrix changes of basis on each side, plus the
side swap) to generate a group of order 2^(n^2+2n) * |GL(n,2)|^2 * 2.
A seeded backtracking search certifies that this is the full
automorphism group of both graphs.
"""

from mdg import autsearch, cli, permgroups as pg

G, S, gamma, sigma, info = cli.build_instance(2)

R = pg.right_mult_action(G)
lifts = pg.connection_stabilizer_gens(G, verify_graph=gamma)
print("stabilizer lifts:", len(lifts), "generators, group order",
      pg.PermGroup(lifts).order())

order = pg.order_with_regular_normal_subgroup(G, lifts)
print("generated symmetry order:", order,
      "== formula:", order == pg.expected_symmetry_order(2))

res = autsearch.automorphism_group(gamma, R + lifts)
print(f"full search on the Cayley graph: order {res.order}, "
      f"complete={res.complete}, {res.nodes} search nodes")

# local action: the distance diagram of the stabilizer orbits
diag = pg.distance_diagram(gamma, lifts, 0)
print("orbit sizes by distance:", diag.cell_sizes_by_distance())
print(cli.render_diagram_table(diag))

# transitivity profile
rep = pg.transitivity_report(gamma, R, lifts, stabilizer_certified=True)
print("Cayley graph transitivity:", rep.flags())
srep = pg.transitivity_report(sigma, cli.sigma_action_gens(G, info),
                              cli.sigma_stab_gens(G, info))
print("coset graph 2-arc-transitive:", srep.two_arc)
