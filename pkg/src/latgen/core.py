"""Leveled lattice structures and the validity predicates used everywhere else.

Conventions (fixed across the whole package):
  * elements are 0-based ids, id 0 is the top element
  * level(i) = longest distance from the top; ids are sorted by level,
    so level(i) < level(j) implies i < j
  * cover_masks[i] is the bitmask of elements that cover i (its *upper*
    cover); arcs in the cover digraph point from covering to covered
  * sizes are capped at 62 elements (single-byte digraph6, word masks)
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_ELEMENTS = 62


def _bits(mask: int):
    """Iterate set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _up_sets(cover_masks):
    """Ancestor masks (self included).  Requires ids sorted by level."""
    ups = []
    for i, cov in enumerate(cover_masks):
        u = 1 << i
        for p in _bits(cov):
            u |= ups[p]
        ups.append(u)
    return ups


def _down_sets(n, cover_masks):
    downs = [0] * n
    for i in range(n - 1, -1, -1):
        d = 1 << i
        for j in range(i + 1, n):
            if cover_masks[j] >> i & 1:
                d |= downs[j]
        downs[i] = d
    return downs


def _children_masks(n, cover_masks):
    ch = [0] * n
    for v in range(n):
        for u in _bits(cover_masks[v]):
            ch[u] |= 1 << v
    return ch


def _unique_minimal(jmask, ups):
    """Return the unique order-minimal element of the set `jmask`, or -1.

    Minimal means lowest in the order (largest level).  Because ids are
    sorted by level, the only candidate is the highest id in the set.
    """
    z = jmask.bit_length() - 1
    return z if jmask & ~ups[z] == 0 else -1


def _unique_maximal(jmask, downs):
    z = (jmask & -jmask).bit_length() - 1
    return z if jmask & ~downs[z] == 0 else -1


class Lattice:
    """A finished leveled poset with unique top and bottom.

    Instances produced by the generator are genuine graded lattices; the
    class itself also accepts non-graded posets (e.g. the pentagon) so
    the definitional predicates below can be exercised on them.
    """

    __slots__ = ("n", "level_sizes", "cover_masks", "level_of")

    def __init__(self, level_sizes, cover_masks):
        self.n = len(cover_masks)
        if self.n > MAX_ELEMENTS:
            raise ValueError(f"size {self.n} exceeds the {MAX_ELEMENTS}-element cap")
        self.level_sizes = tuple(level_sizes)
        self.cover_masks = tuple(cover_masks)
        lof = []
        for lvl, width in enumerate(self.level_sizes):
            lof.extend([lvl] * width)
        if len(lof) != self.n:
            raise ValueError("level sizes do not sum to the element count")
        self.level_of = tuple(lof)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_arcs(cls, n, arcs):
        """Build from raw cover arcs (u, v) meaning u covers v.

        Elements are relabeled so that ids are sorted by level (longest
        distance from the unique source).  Raises if the digraph is not
        a DAG or does not have a unique source and sink.
        """
        if n <= 0 or n > MAX_ELEMENTS:
            raise ValueError(f"bad element count {n}")
        out = [[] for _ in range(n)]
        indeg = [0] * n
        for u, v in arcs:
            out[u].append(v)
            indeg[v] += 1
        sources = [v for v in range(n) if indeg[v] == 0]
        if len(sources) != 1:
            raise ValueError("cover digraph must have exactly one source (top)")
        # longest path from the top = level
        order, stack, seen = [], [sources[0]], [0] * n
        level = [-1] * n
        level[sources[0]] = 0
        # Kahn order on a DAG, detecting cycles by counting
        indeg2 = indeg[:]
        queue = [sources[0]]
        while queue:
            u = queue.pop()
            order.append(u)
            for v in out[u]:
                level[v] = max(level[v], level[u] + 1)
                indeg2[v] -= 1
                if indeg2[v] == 0:
                    queue.append(v)
        if len(order) != n:
            raise ValueError("cover digraph is not acyclic or not top-connected")
        sinks = [v for v in range(n) if not out[v]]
        if len(sinks) != 1:
            raise ValueError("cover digraph must have exactly one sink (bottom)")
        relabel = sorted(range(n), key=lambda v: (level[v], v))
        pos = [0] * n
        for new, old in enumerate(relabel):
            pos[old] = new
        covers = [0] * n
        for u, v in arcs:
            covers[pos[v]] |= 1 << pos[u]
        sizes = []
        for old in relabel:
            lvl = level[old]
            while len(sizes) <= lvl:
                sizes.append(0)
            sizes[lvl] += 1
        return cls(sizes, covers)

    @classmethod
    def chain(cls, n):
        """The n-element chain (top to bottom)."""
        if n < 1:
            raise ValueError("chain needs at least one element")
        covers = [0] + [1 << (i - 1) for i in range(1, n)]
        return cls([1] * n, covers)

    # -- basic structure ------------------------------------------------

    @property
    def length(self):
        return len(self.level_sizes) - 1

    @property
    def bottom(self):
        return self.n - 1

    def level_members(self, lvl):
        start = sum(self.level_sizes[:lvl])
        return range(start, start + self.level_sizes[lvl])

    def arcs(self):
        """Cover arcs (u, v), u covers v, in id order."""
        out = []
        for v in range(self.n):
            for u in _bits(self.cover_masks[v]):
                out.append((u, v))
        out.sort()
        return out

    def up_sets(self):
        return _up_sets(self.cover_masks)

    def children_masks(self):
        return _children_masks(self.n, self.cover_masks)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.level_sizes == other.level_sizes
            and self.cover_masks == other.cover_masks
        )

    def __hash__(self):
        return hash((self.level_sizes, self.cover_masks))

    def __repr__(self):
        return f"Lattice(n={self.n}, levels={self.level_sizes})"


def new_initial(j, max_size=None):
    """M_j: a top, j pairwise-incomparable coatoms, and a bottom."""
    if j < 2:
        raise ValueError(f"M_j needs j >= 2, got {j}")
    if max_size is not None and j > max_size - 2:
        raise ValueError(f"M_{j} does not fit in {max_size} elements")
    if j + 2 > MAX_ELEMENTS:
        raise ValueError(f"M_{j} exceeds the {MAX_ELEMENTS}-element cap")
    covers = [0] + [1] * j + [sum(1 << c for c in range(1, j + 1))]
    return Lattice([1, j, 1], covers)


def dual(lat: Lattice) -> Lattice:
    """Order-reversed lattice, relabeled to keep ids sorted by level."""
    n = lat.n
    rev = [(v, u) for (u, v) in lat.arcs()]
    return Lattice.from_arcs(n, rev)


# -- definitional predicates (verification-grade, never on the hot path) --


def is_lattice(lat: Lattice) -> bool:
    """Every pair has a unique join and a unique meet."""
    n = lat.n
    ups = lat.up_sets()
    downs = _down_sets(n, lat.cover_masks)
    for i in range(n):
        for j in range(i + 1, n):
            if ups[j] >> i & 1 or downs[j] >> i & 1:
                continue  # comparable
            if _unique_minimal(ups[i] & ups[j], ups) < 0:
                return False
            if _unique_maximal(downs[i] & downs[j], downs) < 0:
                return False
    return True


def is_graded(lat: Lattice) -> bool:
    """All maximal chains share one length: covers connect adjacent levels."""
    for v in range(lat.n):
        for u in _bits(lat.cover_masks[v]):
            if lat.level_of[v] != lat.level_of[u] + 1:
                return False
    return True


def is_semimodular(lat: Lattice) -> bool:
    """Two elements covering a common element have a common cover."""
    for d in range(lat.n):
        cov = lat.cover_masks[d]
        for a in _bits(cov):
            for b in _bits(cov):
                if b <= a:
                    continue
                if lat.cover_masks[a] & lat.cover_masks[b] == 0:
                    return False
    return True


def is_lower_semimodular(lat: Lattice) -> bool:
    """Two elements covered by a common element cover a common element."""
    ch = lat.children_masks()
    for c in range(lat.n):
        for a in _bits(ch[c]):
            for b in _bits(ch[c]):
                if b <= a:
                    continue
                if ch[a] & ch[b] == 0:
                    return False
    return True


def is_modular(lat: Lattice) -> bool:
    return is_semimodular(lat) and is_lower_semimodular(lat)


def is_atomistic(lat: Lattice) -> bool:
    """Every down-degree-one element is an atom."""
    if lat.n == 1:
        return True
    ch = lat.children_masks()
    bottom_bit = 1 << lat.bottom
    for v in range(lat.n):
        if ch[v] and ch[v].bit_count() == 1 and ch[v] != bottom_bit:
            return False
    return True


def is_coatomistic(lat: Lattice) -> bool:
    """Every up-degree-one element is a coatom."""
    if lat.n == 1:
        return True
    for v in range(lat.n):
        cov = lat.cover_masks[v]
        if cov and cov.bit_count() == 1 and cov != 1:
            return False
    return True


def is_geometric(lat: Lattice) -> bool:
    return is_semimodular(lat) and is_atomistic(lat)


def is_vertically_indecomposable(lat: Lattice) -> bool:
    """No element besides top and bottom is comparable to everything."""
    n = lat.n
    ups = lat.up_sets()
    downs = _down_sets(n, lat.cover_masks)
    full = (1 << n) - 1
    for v in range(1, n - 1):
        if ups[v] | downs[v] == full:
            return False
    return True


# -- the in-construction structure ----------------------------------------


class PartialLattice:
    """Top-rooted level structure missing its bottom, frontier level open.

    This is the reference implementation of the construction-time state:
    clear rather than fast (the generation kernels keep their own mirrored
    state).  Join-uniqueness is preserved by can_add, so appending a
    bottom to any reachable state yields a lattice.
    """

    def __init__(self, max_size):
        if not 3 <= max_size <= MAX_ELEMENTS:
            raise ValueError(f"max_size must be in 3..{MAX_ELEMENTS}")
        self.max_size = max_size
        self.m = 1
        self.level_sizes = [1]
        self.cover_masks = [0]
        self.lower_cover_count = [0]
        self.up_set = [1]
        self.join = {}

    @classmethod
    def from_mother(cls, mother: Lattice, max_size):
        """Drop the mother's bottom and open a fresh frontier level."""
        if mother.level_sizes[-1] != 1:
            raise ValueError("mother must have a single bottom element")
        pl = cls(max_size)
        for lvl in range(1, mother.length):
            pl.open_level()
            for v in mother.level_members(lvl):
                pl.add_element(set(_bits(mother.cover_masks[v])))
        pl.open_level()
        return pl

    # -- structure helpers ---------------------------------------------

    @property
    def frontier_level(self):
        return len(self.level_sizes) - 1

    def level_members(self, lvl):
        start = sum(self.level_sizes[:lvl])
        return range(start, start + self.level_sizes[lvl])

    def open_level(self):
        if self.level_sizes[-1] == 0:
            raise ValueError("frontier level is still empty")
        self.level_sizes.append(0)

    def _join(self, i, j):
        if i == j:
            return i
        return self.join[(i, j) if i < j else (j, i)]

    # -- the incremental operations -------------------------------------

    def can_add(self, cover) -> bool:
        """Would a new minimal element with this upper cover keep joins unique?

        cover must be a nonempty subset of the level above the frontier.
        """
        a_ids = sorted(cover)
        prev = self.level_members(self.frontier_level - 1)
        if not a_ids or not all(a in prev for a in a_ids):
            raise ValueError("cover must be a nonempty subset of the previous level")
        if self.m + 1 > self.max_size - 1:
            return False
        up_all = 0
        for a in a_ids:
            up_all |= self.up_set[a]
        frontier = self.level_members(self.frontier_level)
        for y in range(self.m):
            if y in frontier:
                jm = 0
                for a in a_ids:
                    for b in _bits(self.cover_masks[y]):
                        jm |= 1 << self._join(a, b)
            elif up_all >> y & 1:
                continue  # y is above the new element
            else:
                jm = 0
                for a in a_ids:
                    jm |= 1 << self._join(a, y)
            if _unique_minimal(jm, self.up_set) < 0:
                return False
        return True

    def add_element(self, cover):
        """Append one frontier element covered by `cover` (can_add must hold)."""
        a_ids = sorted(cover)
        x = self.m
        amask = 0
        up = 1 << x
        for a in a_ids:
            amask |= 1 << a
            up |= self.up_set[a]
            self.lower_cover_count[a] += 1
        frontier = self.level_members(self.frontier_level)
        for y in range(x):
            if up >> y & 1:
                z = y
            elif y in frontier:
                jm = 0
                for a in a_ids:
                    for b in _bits(self.cover_masks[y]):
                        jm |= 1 << self._join(a, b)
                z = _unique_minimal(jm, self.up_set)
            else:
                jm = 0
                for a in a_ids:
                    jm |= 1 << self._join(a, y)
                z = _unique_minimal(jm, self.up_set)
            if z < 0:
                raise ValueError("add_element without can_add")
            self.join[(y, x)] = z
        self.cover_masks.append(amask)
        self.lower_cover_count.append(0)
        self.up_set.append(up)
        self.level_sizes[-1] += 1
        self.m += 1
        return self

    def remove_last(self):
        """Exactly reverse the latest add_element."""
        if self.level_sizes[-1] == 0:
            raise ValueError("frontier level is empty")
        x = self.m - 1
        for a in _bits(self.cover_masks[x]):
            self.lower_cover_count[a] -= 1
        for y in range(x):
            del self.join[(y, x)]
        self.cover_masks.pop()
        self.lower_cover_count.pop()
        self.up_set.pop()
        self.level_sizes[-1] -= 1
        self.m -= 1
        return self

    def complete_level(self):
        """Close the frontier and append the bottom, or return None.

        Succeeds iff every element of the level above the frontier has
        been used in an upper cover (gradedness) and the frontier holds
        at least two elements (vertical indecomposability).
        """
        if self.level_sizes[-1] < 2:
            return None
        for a in self.level_members(self.frontier_level - 1):
            if self.lower_cover_count[a] == 0:
                return None
        if self.m + 1 > self.max_size:
            return None
        bottom_cover = 0
        for x in self.level_members(self.frontier_level):
            bottom_cover |= 1 << x
        return Lattice(self.level_sizes + [1], self.cover_masks + [bottom_cover])

    # -- debugging support ----------------------------------------------

    def joins_from_scratch(self):
        """Recompute the whole join table directly from the cover structure."""
        ups = _up_sets(self.cover_masks)
        out = {}
        for i in range(self.m):
            for j in range(i + 1, self.m):
                z = _unique_minimal(ups[i] & ups[j], ups)
                if z < 0:
                    raise ValueError(f"join of {i},{j} is not unique")
                out[(i, j)] = z
        return out

    def __eq__(self, other):
        return (
            isinstance(other, PartialLattice)
            and self.max_size == other.max_size
            and self.level_sizes == other.level_sizes
            and self.cover_masks == other.cover_masks
            and self.lower_cover_count == other.lower_cover_count
            and self.join == other.join
        )

    def copy(self):
        pl = PartialLattice(self.max_size)
        pl.m = self.m
        pl.level_sizes = list(self.level_sizes)
        pl.cover_masks = list(self.cover_masks)
        pl.lower_cover_count = list(self.lower_cover_count)
        pl.up_set = list(self.up_set)
        pl.join = dict(self.join)
        return pl
