"""Finite 2-groups generated by two elementary abelian subgroups X and Y.

Two concrete backends are provided:

* ``TensorGroup(n)`` -- the group on F_2^n + F_2^n + F_2^{n x n} whose
  product twists the matrix part by an outer product of the vector parts.
  Elements are packed little-endian as [x bits | y bits | A bits row-major]
  into a single int, which doubles as the canonical vertex code downstream.
* ``DihedralProduct(m_1, ..., m_n)`` -- a direct product of dihedral groups
  of orders 2*m_i, with X the flips and Y the flipped rotations.

Every backend exposes elements as canonical integer codes in
``range(order)`` plus ``mul``/``inv`` callbacks; closures, subgroup and
quotient computations all run over codes so one engine serves every
backend.
"""

from dataclasses import dataclass

import numpy as np

from . import f2

#: Largest group order the enumeration-based operations will touch.
DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(Exception):
    pass


def _check_budget(order: int, budget: int = DEFAULT_BUDGET) -> None:
    if order > budget:
        raise BudgetExceeded(f"group order {order} exceeds enumeration budget {budget}")


class TensorGroup:
    """The 2-group of order 2^(n^2+2n) generated by X and Y.

    An element is a triple (x, y, A) with x, y in F_2^n and A an n x n
    matrix over F_2; the product of (x1, y1, A1) and (x2, y2, A2) is
    (x1+x2, y1+y2, A1+A2+outer(x2, y1)) and the inverse of (x, y, A) is
    (x, y, A+outer(x, y)).  Identity is code 0.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        f2._check_dim(n)
        self.n = n
        self.order = 1 << (n * n + 2 * n)
        self.identity = 0
        self.x_gens = [self.encode(1 << i, 0, 0) for i in range(n)]
        self.y_gens = [self.encode(0, 1 << i, 0) for i in range(n)]
        self.gens = self.x_gens + self.y_gens
        self._vmask = f2.vec_mask(n)

    def encode(self, x: int, y: int, a: int) -> int:
        n = self.n
        return x | (y << n) | (a << (2 * n))

    def decode(self, code: int) -> tuple[int, int, int]:
        n = self.n
        return code & self._vmask, (code >> n) & self._vmask, code >> (2 * n)

    def mul(self, g1: int, g2: int) -> int:
        n = self.n
        x2 = g2 & self._vmask
        y1 = (g1 >> n) & self._vmask
        return g1 ^ g2 ^ (f2.outer(x2, y1, n) << (2 * n))

    def inv(self, g: int) -> int:
        n = self.n
        x = g & self._vmask
        y = (g >> n) & self._vmask
        return g ^ (f2.outer(x, y, n) << (2 * n))

    def elements(self) -> range:
        return range(self.order)

    # Vectorised variants used to build permutations and bulk tests.

    def mul_vec(self, g1, g2):
        """Elementwise product of two equal-shape uint64 code arrays."""
        n = self.n
        g1 = np.asarray(g1, dtype=np.uint64)
        g2 = np.asarray(g2, dtype=np.uint64)
        x2 = g2 & np.uint64(self._vmask)
        y1 = (g1 >> np.uint64(n)) & np.uint64(self._vmask)
        out = g1 ^ g2
        for i in range(n):
            rowbit = (x2 >> np.uint64(i)) & np.uint64(1)
            out ^= (y1 * rowbit) << np.uint64(2 * n + i * n)
        return out

    def inv_vec(self, g):
        n = self.n
        g = np.asarray(g, dtype=np.uint64)
        x = g & np.uint64(self._vmask)
        y = (g >> np.uint64(n)) & np.uint64(self._vmask)
        out = g.copy()
        for i in range(n):
            rowbit = (x >> np.uint64(i)) & np.uint64(1)
            out ^= (y * rowbit) << np.uint64(2 * n + i * n)
        return out


class DihedralProduct:
    """Direct product of dihedral groups D_{2m_i}.

    Each factor is encoded as flip * m + rotation, factors combined in a
    mixed-radix code.  In factor i, x_i is the bare flip and y_i = x_i r_i,
    so x_i^2 = y_i^2 = (x_i y_i)^{m_i} = 1.
    """

    def __init__(self, *ms: int):
        if not ms or any(m < 1 for m in ms):
            raise ValueError("need factor orders m_i >= 1")
        self.ms = tuple(ms)
        self.n = len(ms)
        self.order = 1
        for m in ms:
            self.order *= 2 * m
        self.identity = 0
        self.x_gens = [self._from_factors([(1, 0) if j == i else (0, 0) for j in range(self.n)])
                       for i in range(self.n)]
        self.y_gens = [self._from_factors([(1, 1 % ms[i]) if j == i else (0, 0) for j in range(self.n)])
                       for i in range(self.n)]
        self.gens = self.x_gens + self.y_gens

    def _to_factors(self, code: int) -> list[tuple[int, int]]:
        out = []
        for m in self.ms:
            code, v = divmod(code, 2 * m)
            out.append((v // m, v % m))
        return out

    def _from_factors(self, factors) -> int:
        code = 0
        for m, (flip, rot) in zip(reversed(self.ms), reversed(factors)):
            code = code * (2 * m) + flip * m + rot
        return code

    def mul(self, g1: int, g2: int) -> int:
        out = []
        for m, (f1, k1), (f2, k2) in zip(self.ms, self._to_factors(g1), self._to_factors(g2)):
            k = (k2 - k1 if f2 else k2 + k1) % m
            out.append((f1 ^ f2, k))
        return self._from_factors(out)

    def inv(self, g: int) -> int:
        out = []
        for m, (flip, rot) in zip(self.ms, self._to_factors(g)):
            out.append((flip, rot if flip else (-rot) % m))
        return self._from_factors(out)

    def elements(self) -> range:
        return range(self.order)


class TableGroup:
    """Explicit multiplication-table backend for small groups."""

    def __init__(self, table, identity=0, x_gens=(), y_gens=()):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.identity = identity
        self.x_gens = list(x_gens)
        self.y_gens = list(y_gens)
        self.gens = self.x_gens + self.y_gens
        self._inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == identity:
                    self._inv[a] = b
        if any(v is None for v in self._inv):
            raise ValueError("table has an element without an inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def elements(self) -> range:
        return range(self.order)


def commutator(G, g1: int, g2: int) -> int:
    """[g1, g2] = g1^-1 g2^-1 g1 g2."""
    m = G.mul
    return m(m(m(G.inv(g1), G.inv(g2)), g1), g2)


def closure(G, gens, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Subgroup generated by ``gens``, as a sorted list of codes."""
    seen = {G.identity}
    seen.update(gens)
    frontier = sorted(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = G.mul(a, g)
                if p not in seen:
                    seen.add(p)
                    new.append(p)
        if len(seen) > budget:
            raise BudgetExceeded(f"closure exceeded budget {budget}")
        frontier = new
    return sorted(seen)


def derived_subgroup(G, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Normal closure of the commutators of generator pairs."""
    _check_budget(G.order, budget)
    comms = {commutator(G, a, b) for a in G.gens for b in G.gens}
    comms.discard(G.identity)
    while True:
        sub = closure(G, sorted(comms), budget)
        conj = set()
        subset = set(sub)
        for z in sub:
            for g in G.gens:
                c = G.mul(G.mul(G.inv(g), z), g)
                if c not in subset:
                    conj.add(c)
        if not conj:
            return sub
        comms = subset | conj


def center(G, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Elements commuting with everything, verified against all elements."""
    _check_budget(G.order, budget)
    cand = [z for z in G.elements() if all(G.mul(z, g) == G.mul(g, z) for g in G.gens)]
    # commuting with generators is equivalent, but double-check on the full
    # element list while the group is small enough to enumerate
    if G.order <= 1 << 16:
        if hasattr(G, "mul_vec"):
            all_codes = np.arange(G.order, dtype=np.uint64)
            cand = [z for z in cand
                    if np.array_equal(G.mul_vec(np.uint64(z), all_codes),
                                      G.mul_vec(all_codes, np.uint64(z)))]
        else:
            cand = [z for z in cand if all(G.mul(z, h) == G.mul(h, z) for h in G.elements())]
    return cand


def verify_presentation(n: int, group=None) -> bool:
    """Check the defining relations of the 2n-generator presentation.

    True iff x_i^2 = y_i^2 = 1, the x's commute, the y's commute,
    [x_i, y_j]^2 = 1, [[x_i, y_j], x_k] = [[x_i, y_j], y_k] = 1, and the
    generators produce the full 2^(n^2+2n) elements (the counting bound
    that pins the abstract presentation down to this group).
    """
    G = TensorGroup(n) if group is None else group
    e = G.identity
    xs, ys = G.x_gens, G.y_gens
    for a in xs + ys:
        if G.mul(a, a) != e:
            return False
    for gens in (xs, ys):
        for a in gens:
            for b in gens:
                if commutator(G, a, b) != e:
                    return False
    for a in xs:
        for b in ys:
            c = commutator(G, a, b)
            if G.mul(c, c) != e:
                return False
            for t in xs + ys:
                if commutator(G, c, t) != e:
                    return False
    return len(closure(G, G.gens)) == G.order == 1 << (n * n + 2 * n)


@dataclass
class MixedDihedralReport:
    is_mixed_dihedral: bool
    order: int
    derived_subgroup_order: int
    abelianization_structure: list[int]
    failure_reason: str | None = None


def _elementary_abelian_rank(G, sub: list[int]) -> int | None:
    """log2 of |sub| if sub is elementary abelian of 2-power order."""
    size = len(sub)
    if size & (size - 1):
        return None
    for a in sub:
        if G.mul(a, a) != G.identity:
            return None
    for a in sub:
        for b in sub:
            if G.mul(a, b) != G.mul(b, a):
                return None
    return size.bit_length() - 1


def abelianization_structure(G, derived: list[int]) -> list[int]:
    """Cyclic factor orders of G/G', specialised to exponent-2 quotients.

    The quotient of any group by its derived subgroup is abelian; here we
    only need to distinguish C_2^k (every generator squares into G') from
    anything else, so no Smith normal form is required.
    """
    dset = set(derived)
    index = G.order // len(derived)
    if all(G.mul(g, g) in dset for g in G.gens):
        rank = index.bit_length() - 1
        if 1 << rank == index:
            return [2] * rank
    # fall back to reporting the bare quotient order as one factor
    return [index]


def is_mixed_dihedral(G, budget: int = DEFAULT_BUDGET) -> MixedDihedralReport:
    """Decide whether G is mixed dihedral relative to its X and Y.

    Requires X and Y elementary abelian of equal order 2^n, X and Y
    together generating G, and G/G' elementary abelian of order 2^(2n).
    """
    _check_budget(G.order, budget)
    X = closure(G, G.x_gens, budget)
    Y = closure(G, G.y_gens, budget)
    derived = derived_subgroup(G, budget)
    ab = abelianization_structure(G, derived)

    def fail(reason):
        return MixedDihedralReport(False, G.order, len(derived), ab, reason)

    rx = _elementary_abelian_rank(G, X)
    ry = _elementary_abelian_rank(G, Y)
    if rx is None or ry is None or rx != ry:
        return fail("X and Y are not elementary abelian of equal order 2^n")
    n = rx
    if len(closure(G, G.x_gens + G.y_gens, budget)) != G.order:
        return fail("X and Y do not generate the whole group")
    if ab != [2] * (2 * n):
        return fail(f"abelianization is {ab}, expected C_2^{2 * n}")
    return MixedDihedralReport(True, G.order, len(derived), ab)


class AbelianizationMap:
    """The projection of G onto G/G' ~ C_2^n x C_2^n, in X/Y coordinates.

    Built by a worklist sweep from the identity: multiplying by x_i or y_i
    flips the corresponding coordinate bit, and the kernel is the derived
    subgroup.  Only valid on mixed dihedral groups.
    """

    def __init__(self, G, budget: int = DEFAULT_BUDGET):
        report = is_mixed_dihedral(G, budget)
        if not report.is_mixed_dihedral:
            raise ValueError(f"group is not mixed dihedral: {report.failure_reason}")
        self.G = G
        self.n = len(report.abelianization_structure) // 2
        coords = {G.identity: (0, 0)}
        frontier = [G.identity]
        steps = [(g, 1 << i, 0) for i, g in enumerate(G.x_gens)]
        steps += [(g, 0, 1 << i) for i, g in enumerate(G.y_gens)]
        derived = set(derived_subgroup(G, budget))
        while frontier:
            new = []
            for h in frontier:
                cx, cy = coords[h]
                for g, dx, dy in steps:
                    p = G.mul(h, g)
                    if p not in coords:
                        coords[p] = (cx ^ dx, cy ^ dy)
                        new.append(p)
            frontier = new
        # elements reachable only through the kernel still need coords:
        # multiply every known element by kernel generators
        for z in sorted(derived):
            for h in list(coords):
                p = G.mul(h, z)
                if p not in coords:
                    coords[p] = coords[h]
        if len(coords) != G.order:
            raise ValueError("group not generated by X, Y and the derived subgroup")
        self.coords = coords

    def __call__(self, g: int) -> tuple[int, int]:
        return self.coords[g]


def abelianization_coords(G, g: int, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """One-shot convenience wrapper around AbelianizationMap."""
    return AbelianizationMap(G, budget)(g)


def cosets(G, subgroup: list[int]) -> list[list[int]]:
    """Right cosets S h, sorted by minimal member; each coset sorted.

    Raises ValueError if ``subgroup`` is not multiplication-closed.
    """
    sset = set(subgroup)
    if G.identity not in sset:
        raise ValueError("subgroup must contain the identity")
    for a in subgroup:
        for b in subgroup:
            if G.mul(a, b) not in sset:
                raise ValueError("subgroup is not closed under multiplication")
    seen = set()
    out = []
    for h in G.elements():
        if h in seen:
            continue
        coset = sorted(G.mul(s, h) for s in subgroup)
        seen.update(coset)
        out.append(coset)
    out.sort(key=lambda c: c[0])
    return out


def coset_index_array(G, subgroup: list[int]) -> tuple[list[list[int]], list[int]]:
    """Cosets plus a code -> coset-index lookup table."""
    cs = cosets(G, subgroup)
    idx = [0] * G.order
    for i, c in enumerate(cs):
        for h in c:
            idx[h] = i
    return cs, idx
