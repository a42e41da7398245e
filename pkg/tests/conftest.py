import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latgen.core import Lattice


def fig1_lattice():
    """The 13-element simple-type mother used across the tests.

    Levels (1, 4, 7, 1); coatoms 1..4; the atom level splits into the
    symmetric boxes {5,6,7}, {8,9}, {10}, {11}.
    """
    covers = [
        0,            # 0 top
        1, 1, 1, 1,   # 1..4 coatoms
        1 << 1, 1 << 1, 1 << 1,          # 5,6,7 under coatom 1
        1 << 2, 1 << 2,                  # 8,9 under coatom 2
        (1 << 2) | (1 << 3) | (1 << 4),  # 10 under 2,3,4
        1 << 4,                          # 11 under 4
        sum(1 << i for i in range(5, 12)),  # 12 bottom
    ]
    return Lattice([1, 4, 7, 1], covers)


def fig2_sketch():
    """The pair-budget illustration: ten coatoms, two up-degree-3 elements.

    Returned as drawn (the sink absorbs the uncovered coatoms directly),
    so the structure is a poset, not a graded lattice.
    """
    covers = [0] + [1] * 10
    covers.append((1 << 1) | (1 << 2) | (1 << 3))   # 11 under coatoms 1,2,3
    covers.append((1 << 3) | (1 << 4) | (1 << 5))   # 12 under coatoms 3,4,5
    covers.append(sum(1 << i for i in range(6, 13)))  # 13 sink
    return Lattice.from_arcs(14, [(u, v) for v, c in enumerate(covers)
                                  for u in range(14) if c >> u & 1])


def boolean_cube():
    """B_3: top, three coatoms, three atoms, bottom."""
    covers = [
        0,
        1, 1, 1,
        (1 << 1) | (1 << 2),
        (1 << 1) | (1 << 3),
        (1 << 2) | (1 << 3),
        (1 << 4) | (1 << 5) | (1 << 6),
    ]
    return Lattice([1, 3, 3, 1], covers)


def pentagon():
    """N_5: one two-step chain and one coatom straight to the bottom."""
    return Lattice.from_arcs(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])


def relabel(lat, perm):
    """Rebuild `lat` with vertex u renamed perm[u] (any bijection)."""
    arcs = [(perm[u], perm[v]) for u, v in lat.arcs()]
    return Lattice.from_arcs(lat.n, arcs)


def level_respecting_bijections(a, b):
    """All bijections a -> b mapping levels to levels (empty if shapes differ)."""
    if a.level_sizes != b.level_sizes:
        return
    per_level = [
        itertools.permutations(b.level_members(lvl))
        for lvl in range(len(a.level_sizes))
    ]
    members = [list(a.level_members(lvl)) for lvl in range(len(a.level_sizes))]
    for combo in itertools.product(*per_level):
        mapping = {}
        for lvl, images in enumerate(combo):
            for src, dst in zip(members[lvl], images):
                mapping[src] = dst
        yield mapping


def brute_force_isomorphic(a, b):
    """Level-respecting bijection search (levels are labeling invariants)."""
    arcs_a = a.arcs()
    arcs_b = set(b.arcs())
    if len(arcs_a) != len(arcs_b):
        return False
    for mapping in level_respecting_bijections(a, b):
        if all((mapping[u], mapping[v]) in arcs_b for u, v in arcs_a):
            return True
    return False


def brute_force_orbits(lat):
    """Vertex orbits of the automorphism group by exhaustive bijection search."""
    parent = list(range(lat.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    arcs = set(lat.arcs())
    for mapping in level_respecting_bijections(lat, lat):
        if all((mapping[u], mapping[v]) in arcs for u, v in lat.arcs()):
            for v, w in mapping.items():
                rv, rw = find(v), find(w)
                if rv != rw:
                    parent[max(rv, rw)] = min(rv, rw)
    groups = {}
    for v in range(lat.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


@pytest.fixture(scope="session")
def oracle_lattices():
    """Oracle outputs by size, shared across test modules (n <= 7)."""
    from latgen.oracle import brute_force_lattices

    return {n: brute_force_lattices(n) for n in range(1, 8)}
