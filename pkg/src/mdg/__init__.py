"""Mixed dihedral 2-groups, their Cayley and bipartite coset graphs, and
machinery to verify the structural and symmetry properties of both."""

__version__ = "0.1.0"
