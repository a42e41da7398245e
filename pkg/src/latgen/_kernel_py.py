"""Pure-Python kernel: canonical labeling and the per-mother level extension.

This module is the fallback twin of the compiled kernel in _kernel.pyx.
Both implement the same enumeration order and the same canonical-form
tie-breaks, so their outputs are interchangeable byte for byte.

Canonical labeling works on the level-colored cover digraph: iterated
in/out-degree partition refinement, individualization of the first
largest non-singleton cell, and a backtracking search over the refined
partitions.  The canonical form is the lexicographically least edge
list among discrete partitions, kept as digraph6 payload bytes (size
byte followed by the packed adjacency bits, where byte-wise *larger*
payload means lexicographically *smaller* edge list).  Automorphisms
found when two leaves agree are used both to prune the search (only
representatives of orbits under the stabilizer of the individualized
prefix are expanded) and to report exact vertex orbits.
"""

from __future__ import annotations

IS_COMPILED = False


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------


class _CanonSearch:
    def __init__(self, n, out_masks, colors):
        self.n = n
        self.out = list(out_masks)
        inn = [0] * n
        for u in range(n):
            for v in _bits(self.out[u]):
                inn[v] |= 1 << u
        self.inn = inn
        self.nbytes = (n * n + 5) // 6
        self.first_bytes = None
        self.first_lab = None
        self.best_bytes = None
        self.best_lab = None
        self.gens = []
        self.parent = list(range(n))
        order = sorted(range(n), key=lambda v: (colors[v], v))
        cells = []
        for v in order:
            if cells and colors[cells[-1][-1]] == colors[v]:
                cells[-1].append(v)
            else:
                cells.append([v])
        self.prefix = []
        self._search(cells)

    # union-find over the global orbit partition
    def _find(self, v):
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def _refine(self, cells):
        out, inn = self.out, self.inn
        while True:
            masks = []
            for cell in cells:
                mk = 0
                for v in cell:
                    mk |= 1 << v
                masks.append(mk)
            new_cells = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                keyed = {}
                for v in cell:
                    ov, iv = out[v], inn[v]
                    key = tuple(
                        ((ov & mk).bit_count() << 8) | (iv & mk).bit_count()
                        for mk in masks
                    )
                    keyed.setdefault(key, []).append(v)
                if len(keyed) > 1:
                    changed = True
                    for key in sorted(keyed):
                        new_cells.append(keyed[key])
                else:
                    new_cells.append(cell)
            cells = new_cells
            if not changed:
                return cells

    def _leaf(self, cells):
        n = self.n
        lab = [cell[0] for cell in cells]
        pos = [0] * n
        for p, v in enumerate(lab):
            pos[v] = p
        arr = bytearray(self.nbytes)
        for u in range(n):
            pu = pos[u] * n
            for w in _bits(self.out[u]):
                idx = pu + pos[w]
                arr[idx // 6] |= 1 << (5 - idx % 6)
        payload = bytes(arr)
        if self.first_bytes is None:
            self.first_bytes = payload
            self.first_lab = lab
            self.best_bytes = payload
            self.best_lab = lab
            return
        recorded = False
        if payload == self.first_bytes:
            self._record(lab, self.first_lab)
            recorded = True
        if payload == self.best_bytes and self.best_lab is not self.first_lab:
            self._record(lab, self.best_lab)
            recorded = True
        if not recorded and payload > self.best_bytes:
            self.best_bytes = payload
            self.best_lab = lab

    def _record(self, lab, ref_lab):
        gamma = [0] * self.n
        for p in range(self.n):
            gamma[lab[p]] = ref_lab[p]
        self.gens.append(tuple(gamma))
        for v in range(self.n):
            self._union(v, gamma[v])

    def _stab_orbit_same(self, u, v):
        """Are u, v in one orbit of the found generators fixing the prefix?"""
        gens = [g for g in self.gens if all(g[p] == p for p in self.prefix)]
        if not gens:
            return False
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for a in range(self.n):
                ra, rb = find(a), find(g[a])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return find(u) == find(v)

    def _search(self, cells):
        cells = self._refine(cells)
        # target: first largest non-singleton cell
        target = -1
        best_len = 1
        for idx, cell in enumerate(cells):
            if len(cell) > best_len:
                best_len = len(cell)
                target = idx
        if target < 0:
            self._leaf(cells)
            return
        tried = []
        cell = cells[target]
        rest_template = cells[:target]
        for v in cell:
            if any(self._stab_orbit_same(v, u) for u in tried):
                continue
            child = (
                rest_template
                + [[v], [w for w in cell if w != v]]
                + cells[target + 1 :]
            )
            self.prefix.append(v)
            self._search(child)
            self.prefix.pop()
            tried.append(v)


def canon_payload(n, cover_masks, colors):
    """Canonical digraph6 payload (size byte + packed matrix bytes)."""
    out = _covers_to_out(n, cover_masks)
    search = _CanonSearch(n, out, colors)
    return bytes([63 + n]) + bytes(63 + b for b in search.best_bytes)


def automorphism_data(n, cover_masks, colors):
    """Exact vertex orbits (min-element labels) and a generating set."""
    out = _covers_to_out(n, cover_masks)
    search = _CanonSearch(n, out, colors)
    orbits = [search._find(v) for v in range(n)]
    return orbits, search.gens


def _covers_to_out(n, cover_masks):
    out = [0] * n
    for v in range(n):
        for u in _bits(cover_masks[v]):
            out[u] |= 1 << v
    return out


def _levels_from_sizes(level_sizes):
    colors = []
    for lvl, width in enumerate(level_sizes):
        colors.extend([lvl] * width)
    return colors


# ---------------------------------------------------------------------------
# mother classification
# ---------------------------------------------------------------------------


def classify_mother_arrays(n, level_sizes, cover_masks):
    """Classify a finished lattice by the atom action of its automorphisms.

    Returns (kind, boxes): kind is 'fixed' when every atom is a singleton
    orbit, 'simple' when the atom level splits into symmetric boxes (each
    non-singleton orbit admits every transposition of its members as an
    automorphism fixing the remaining atoms), else 'other'.  Boxes are
    the orbits, each sorted, ordered by smallest member.
    """
    colors = _levels_from_sizes(level_sizes)
    atom_lvl = len(level_sizes) - 2
    start = sum(level_sizes[:atom_lvl])
    atoms = list(range(start, start + level_sizes[atom_lvl]))
    orbits, _ = automorphism_data(n, cover_masks, colors)
    groups = {}
    for a in atoms:
        groups.setdefault(orbits[a], []).append(a)
    boxes = sorted(groups.values())
    if all(len(b) == 1 for b in boxes):
        return "fixed", tuple(tuple(b) for b in boxes)
    base = len(level_sizes)
    for box in boxes:
        if len(box) == 1:
            continue
        rep = box[0]
        for other in box[1:]:
            if not _transposition_extends(
                n, cover_masks, colors, atoms, base, rep, other
            ):
                return "other", ()
    return "simple", tuple(tuple(b) for b in boxes)


def _transposition_extends(n, cover_masks, colors, atoms, base, a, b):
    """Does swapping atoms a, b extend to an automorphism fixing other atoms?

    Tested by recoloring every atom with its own color except a and b,
    which share one; the swap extends iff a and b stay in one orbit.
    """
    test_colors = list(colors)
    for idx, c in enumerate(atoms):
        test_colors[c] = base + idx
    test_colors[b] = test_colors[a]
    orbits, _ = automorphism_data(n, cover_masks, test_colors)
    return orbits[a] == orbits[b]


# ---------------------------------------------------------------------------
# level extension search
# ---------------------------------------------------------------------------

CFG_FIELDS = (
    "max_n",
    "sm_creation",
    "lsm",
    "updeg2",
    "atom_check_emit",
    "use_budget",
    "use_shortcuts",
)


class _Extension:
    """One mother's level extension: enumerates all daughter lattices.

    New elements are proposed in decreasing up-degree order, covers of
    equal size in lexicographic order, up-degree-one elements as per-atom
    batches.  Accepted daughters are deduplicated against the per-mother
    store of canonical forms unless the mother is of the fixed class.
    """

    def __init__(self, n, level_sizes, cover_masks, cfg):
        (
            self.max_n,
            self.sm_creation,
            self.lsm,
            self.updeg2,
            self.atom_check_emit,
            self.use_budget,
            self.use_shortcuts,
        ) = cfg
        # strip the bottom: the frontier replaces it
        self.n0 = n - 1
        self.mother_levels = list(level_sizes[:-1])
        self.covers = list(cover_masks[:n - 1])
        self.atom_start = self.n0 - self.mother_levels[-1]
        self.atoms = list(range(self.atom_start, self.n0))
        self.a_cnt = len(self.atoms)
        ups = []
        for i in range(self.n0):
            u = 1 << i
            for p in _bits(self.covers[i]):
                u |= ups[p]
            ups.append(u)
        self.ups = ups
        self.join = self._join_table()
        self.child_cnt = [0] * self.n0
        # pairs of atoms with a common cover; those are the ones lower
        # semimodularity obliges us to give a common frontier child
        cc = [0] * self.n0
        for i, a in enumerate(self.atoms):
            for b in self.atoms[i + 1 :]:
                if self.covers[a] & self.covers[b]:
                    cc[a] |= 1 << b
                    cc[b] |= 1 << a
        self.cc = cc
        self.wanted = list(cc)
        self.pairs_wanting = sum(cc[a].bit_count() for a in self.atoms) // 2
        self.m = self.n0
        self.frontier = []
        self.daughters = []
        self.store = set()
        self.canon_calls = 0
        self.candidates = 0
        self.undo_stack = []
        if self.use_shortcuts:
            kind, boxes = classify_mother_arrays(n, level_sizes, cover_masks)
        else:
            kind, boxes = "other", ()
        self.mother_class = kind
        self.boxes = boxes
        if kind == "simple":
            self.box_of = {}
            self.box_index = {}
            for box in boxes:
                for idx, a in enumerate(box):
                    self.box_of[a] = box
                    self.box_index[a] = idx

    def _join_table(self):
        n0, ups = self.n0, self.ups
        join = [[0] * n0 for _ in range(n0)]
        for i in range(n0):
            join[i][i] = i
            for j in range(i + 1, n0):
                if ups[j] >> i & 1:
                    z = i
                else:
                    jm = ups[i] & ups[j]
                    z = jm.bit_length() - 1
                    if jm & ~ups[z]:
                        raise ValueError("mother join table is not unique")
                join[i][j] = join[j][i] = z
        return join

    # -- candidate checks -------------------------------------------------

    def _can_add(self, a_ids):
        join, ups, covers = self.join, self.ups, self.covers
        for y in self.frontier:
            by = covers[y]
            jm = 0
            for a in a_ids:
                row = join[a]
                for b in _bits(by):
                    jm |= 1 << row[b]
            z = jm.bit_length() - 1
            if jm & ~ups[z]:
                return False
        up_all = 0
        for a in a_ids:
            up_all |= ups[a]
        for y in range(self.n0):
            if up_all >> y & 1:
                continue
            jm = 0
            for a in a_ids:
                jm |= 1 << join[a][y]
            z = jm.bit_length() - 1
            if jm & ~ups[z]:
                return False
        return True

    def _updeg1_ok(self, a):
        join, ups, covers = self.join, self.ups, self.covers
        row = join[a]
        for y in self.frontier:
            by = covers[y]
            if by >> a & 1:
                continue
            jm = 0
            for b in _bits(by):
                jm |= 1 << row[b]
            z = jm.bit_length() - 1
            if jm & ~ups[z]:
                return False
        return True

    def _try_add(self, amask, a_ids):
        if self.sm_creation:
            for a in a_ids:
                if amask & ~self.cc[a] & ~(1 << a):
                    return False
        if not self._can_add(a_ids):
            return False
        x = self.m
        self.covers.append(amask)
        for a in a_ids:
            self.child_cnt[a] += 1
        cleared = []
        if self.lsm:
            removed = 0
            for a in a_ids:
                w = self.wanted[a] & amask & ~(1 << a)
                if w:
                    cleared.append((a, w))
                    removed += w.bit_count()
                    self.wanted[a] &= ~amask
            self.pairs_wanting -= removed // 2
        self.undo_stack.append((a_ids, cleared))
        self.frontier.append(x)
        self.m += 1
        return True

    def _undo_add(self):
        a_ids, cleared = self.undo_stack.pop()
        self.m -= 1
        self.frontier.pop()
        self.covers.pop()
        for a in a_ids:
            self.child_cnt[a] -= 1
        if self.lsm:
            restored = 0
            for a, w in cleared:
                self.wanted[a] |= w
                restored += w.bit_count()
            self.pairs_wanting += restored // 2

    def _is_prefix_union(self, a_ids):
        per_box_count = {}
        per_box_max = {}
        for a in a_ids:
            box = self.box_of[a]
            key = id(box)
            per_box_count[key] = per_box_count.get(key, 0) + 1
            idx = self.box_index[a]
            if idx > per_box_max.get(key, -1):
                per_box_max[key] = idx
        return all(per_box_max[k] == per_box_count[k] - 1 for k in per_box_count)

    # -- completion --------------------------------------------------------

    def _try_batch(self):
        """Final phase: per-atom counts of up-degree-one children, then close."""
        if self.lsm and self.pairs_wanting:
            return
        atoms = self.atoms
        req = [1 if self.child_cnt[a] == 0 else 0 for a in atoms]
        if self.updeg2:
            if not any(req) and len(self.frontier) >= 2:
                self._close([0] * self.a_cnt, 0)
            return
        cap = self.max_n - 1 - self.m
        need = sum(req)
        if need > cap:
            return
        valid = [self._updeg1_ok(a) for a in atoms]
        if any(r and not v for r, v in zip(req, valid)):
            return
        first_ok = None
        if self.use_shortcuts and self.mother_class == "simple" and not self.frontier:
            first_ok = [self.box_index[a] == 0 for a in atoms]
        t = [0] * self.a_cnt

        def go(i, used, first_seen):
            if i == self.a_cnt:
                total = used
                if len(self.frontier) + total >= 2:
                    self._close(t, total)
                return
            hi = cap - used if valid[i] else 0
            lo = req[i]
            for ti in range(lo, hi + 1):
                if ti and not first_seen and first_ok is not None and not first_ok[i]:
                    continue
                t[i] = ti
                go(i + 1, used + ti, first_seen or ti > 0)
            t[i] = 0

        go(0, 0, False)

    def _close(self, t, total):
        self.candidates += 1
        n_d = self.m + total + 1
        f_ids = list(self.frontier)
        covers = list(self.covers)
        for i, a in enumerate(self.atoms):
            for _ in range(t[i]):
                f_ids.append(len(covers))
                covers.append(1 << a)
        bottom = 0
        for x in f_ids:
            bottom |= 1 << x
        covers.append(bottom)
        emit = True
        if self.atom_check_emit:
            for i, x in enumerate(f_ids):
                cx = covers[x]
                for y in f_ids[i + 1 :]:
                    if cx & covers[y] == 0:
                        emit = False
                        break
                if not emit:
                    break
        if not emit and n_d > self.max_n - 2:
            return
        levels = self.mother_levels + [len(f_ids), 1]
        payload = None
        if not (self.use_shortcuts and self.mother_class == "fixed"):
            self.canon_calls += 1
            payload = canon_payload(n_d, covers, _levels_from_sizes(levels))
            if payload in self.store:
                return
            self.store.add(payload)
        self.daughters.append((tuple(levels), tuple(covers), emit, payload))

    # -- the recursion ------------------------------------------------------

    def _budget_prune(self, r):
        return self.pairs_wanting > (self.max_n - 1 - self.m) * (r * (r - 1) // 2)

    def run(self):
        self._rec(self.a_cnt, None)
        return self.daughters

    def _rec(self, r_cur, last_combo):
        self._try_batch()
        if self.m >= self.max_n - 1:
            return
        lsm_live = self.lsm and self.use_budget and self.pairs_wanting > 0
        atoms = self.atoms
        first = not self.frontier
        simple_first = (
            first and self.use_shortcuts and self.mother_class == "simple"
        )
        for r in range(r_cur, 1, -1):
            if lsm_live and self._budget_prune(r):
                break
            if r == r_cur and last_combo is not None:
                combo = self._next_combo(list(last_combo), r)
            else:
                combo = list(range(r))
            while combo is not None:
                a_ids = [atoms[i] for i in combo]
                if not simple_first or self._is_prefix_union(a_ids):
                    amask = 0
                    for a in a_ids:
                        amask |= 1 << a
                    if self._try_add(amask, a_ids):
                        self._rec(r, combo)
                        self._undo_add()
                combo = self._next_combo(combo, r)

    def _next_combo(self, combo, r):
        a_cnt = self.a_cnt
        i = r - 1
        while i >= 0 and combo[i] == a_cnt - r + i:
            i -= 1
        if i < 0:
            return None
        combo = list(combo)
        combo[i] += 1
        for j in range(i + 1, r):
            combo[j] = combo[j - 1] + 1
        return combo


def extend_mother(n, level_sizes, cover_masks, cfg):
    """All daughters of one mother, plus instrumentation.

    Returns (daughters, info): each daughter is (level_sizes, cover_masks,
    emit, canonical_payload_or_None); info reports the mother class and
    the number of candidate completions and dedup canonicalizations.
    """
    ext = _Extension(n, level_sizes, cover_masks, cfg)
    daughters = ext.run()
    info = {
        "mother_class": ext.mother_class,
        "candidates": ext.candidates,
        "canon_calls": ext.canon_calls,
    }
    return daughters, info
