# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: canonical labeling and the per-mother level extension.

Mirrors latgen._kernel_py exactly (same enumeration order, same canonical
tie-breaks); see that module for the algorithm commentary.  Everything here
is plain C arrays and word masks so the candidate checks and the refinement
loop stay allocation-free.
"""

from cpython.mem cimport PyMem_Realloc, PyMem_Free
from libc.stdint cimport uint64_t, uint8_t, uint16_t
from libc.string cimport memcmp, memcpy, memset

IS_COMPILED = True

cdef enum:
    NMAX = 62
    NBYTES_MAX = 641  # ceil(62*62 / 6)

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

cdef inline int popcnt(uint64_t x) nogil:
    return __builtin_popcountll(x)

cdef inline int highbit(uint64_t x) nogil:
    return 63 - __builtin_clzll(x)


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------

cdef class _Canon:
    cdef int n, nbytes
    cdef uint64_t out[NMAX]
    cdef uint64_t inn[NMAX]
    cdef unsigned char first_bytes[NBYTES_MAX]
    cdef unsigned char best_bytes[NBYTES_MAX]
    cdef int first_lab[NMAX]
    cdef int best_lab[NMAX]
    cdef bint have_first, best_is_first
    cdef int prefix[NMAX]
    cdef int depth
    cdef int parent[NMAX]
    cdef unsigned char *gens
    cdef int ngens, gen_cap
    # shared refinement scratch (never live across child recursion)
    cdef uint64_t cmask[NMAX]
    cdef uint16_t keybuf[NMAX][NMAX]
    cdef int stab_parent[NMAX]

    def __cinit__(self):
        self.gens = NULL
        self.ngens = 0
        self.gen_cap = 0

    def __dealloc__(self):
        if self.gens != NULL:
            PyMem_Free(self.gens)

    cdef void setup(self, int n, uint64_t *covers, int *colors) except *:
        cdef int v, u, i, j, tmp, ncells
        cdef uint64_t cov
        cdef int lab[NMAX]
        cdef int cstart[NMAX]
        cdef int csize[NMAX]
        self.n = n
        self.nbytes = (n * n + 5) // 6
        self.have_first = False
        self.depth = 0
        self.ngens = 0
        for v in range(n):
            self.out[v] = 0
            self.inn[v] = 0
            self.parent[v] = v
        for v in range(n):
            cov = covers[v]
            while cov:
                u = highbit(cov & (~cov + 1))
                cov &= cov - 1
                self.out[u] |= <uint64_t>1 << v
                self.inn[v] |= <uint64_t>1 << u
        # initial cells: vertices sorted by (color, id), grouped by color;
        # ids start ascending and insertion sort is stable
        for v in range(n):
            lab[v] = v
        for i in range(1, n):
            tmp = lab[i]
            j = i - 1
            while j >= 0 and colors[lab[j]] > colors[tmp]:
                lab[j + 1] = lab[j]
                j -= 1
            lab[j + 1] = tmp
        ncells = 0
        i = 0
        while i < n:
            cstart[ncells] = i
            j = i
            while j + 1 < n and colors[lab[j + 1]] == colors[lab[i]]:
                j += 1
            csize[ncells] = j - i + 1
            ncells += 1
            i = j + 1
        self.search(lab, cstart, csize, ncells)

    cdef int ufind(self, int v) nogil:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    cdef void uunion(self, int a, int b) nogil:
        cdef int ra = self.ufind(a), rb = self.ufind(b), t
        if ra != rb:
            if ra > rb:
                t = ra; ra = rb; rb = t
            self.parent[rb] = ra

    cdef int refine(self, int *lab, int *cstart, int *csize, int ncells) nogil:
        """Iterated in/out-degree refinement; returns the new cell count."""
        cdef int any_split
        cdef int c, i, j, k, p, v, sz, start, nnew, sub_cells, cmp_res
        cdef int order[NMAX]
        cdef int newlab[NMAX]
        cdef int newstart[NMAX]
        cdef int newsize[NMAX]
        cdef uint16_t *ki
        cdef uint16_t *kj
        while True:
            for c in range(ncells):
                self.cmask[c] = 0
                for p in range(cstart[c], cstart[c] + csize[c]):
                    self.cmask[c] |= <uint64_t>1 << lab[p]
            any_split = 0
            nnew = 0
            p = 0
            for c in range(ncells):
                start = cstart[c]
                sz = csize[c]
                if sz == 1:
                    newlab[p] = lab[start]
                    newstart[nnew] = p
                    newsize[nnew] = 1
                    nnew += 1
                    p += 1
                    continue
                # per-member key vector over all cells
                for i in range(sz):
                    v = lab[start + i]
                    for k in range(ncells):
                        self.keybuf[i][k] = <uint16_t>(
                            (popcnt(self.out[v] & self.cmask[k]) << 8)
                            | popcnt(self.inn[v] & self.cmask[k])
                        )
                    order[i] = i
                # stable insertion sort of member indices by key vector
                for i in range(1, sz):
                    j = i - 1
                    while j >= 0:
                        ki = self.keybuf[order[j]]
                        kj = self.keybuf[order[i]]
                        cmp_res = 0
                        for k in range(ncells):
                            if ki[k] != kj[k]:
                                cmp_res = 1 if ki[k] > kj[k] else -1
                                break
                        if cmp_res <= 0:
                            break
                        j -= 1
                    if j != i - 1:
                        k = order[i]
                        for v in range(i, j + 1, -1):
                            order[v] = order[v - 1]
                        order[j + 1] = k
                # split runs of equal keys into sub-cells (already key-sorted)
                sub_cells = 0
                i = 0
                while i < sz:
                    j = i
                    while j + 1 < sz:
                        ki = self.keybuf[order[i]]
                        kj = self.keybuf[order[j + 1]]
                        cmp_res = 0
                        for k in range(ncells):
                            if ki[k] != kj[k]:
                                cmp_res = 1
                                break
                        if cmp_res:
                            break
                        j += 1
                    newstart[nnew] = p
                    newsize[nnew] = j - i + 1
                    nnew += 1
                    sub_cells += 1
                    for k in range(i, j + 1):
                        newlab[p] = lab[start + order[k]]
                        p += 1
                    i = j + 1
                if sub_cells > 1:
                    any_split = 1
            memcpy(lab, newlab, self.n * sizeof(int))
            memcpy(cstart, newstart, nnew * sizeof(int))
            memcpy(csize, newsize, nnew * sizeof(int))
            ncells = nnew
            if not any_split:
                return ncells

    cdef void record(self, int *lab, int *ref_lab) except *:
        cdef int p, v
        cdef unsigned char gamma[NMAX]
        for p in range(self.n):
            gamma[lab[p]] = <unsigned char>ref_lab[p]
        if self.ngens == self.gen_cap:
            self.gen_cap = 16 if self.gen_cap == 0 else self.gen_cap * 2
            self.gens = <unsigned char *>PyMem_Realloc(
                self.gens, self.gen_cap * NMAX
            )
            if self.gens == NULL:
                raise MemoryError()
        memcpy(self.gens + self.ngens * NMAX, gamma, NMAX)
        self.ngens += 1
        for v in range(self.n):
            self.uunion(v, gamma[v])

    cdef void leaf(self, int *lab) except *:
        cdef int n = self.n
        cdef int pos[NMAX]
        cdef unsigned char buf[NBYTES_MAX]
        cdef int p, u, w, idx
        cdef uint64_t ov
        cdef bint recorded = False
        for p in range(n):
            pos[lab[p]] = p
        memset(buf, 0, self.nbytes)
        for u in range(n):
            ov = self.out[u]
            p = pos[u] * n
            while ov:
                w = highbit(ov & (~ov + 1))
                ov &= ov - 1
                idx = p + pos[w]
                buf[idx // 6] |= <unsigned char>(1 << (5 - idx % 6))
        if not self.have_first:
            self.have_first = True
            memcpy(self.first_bytes, buf, self.nbytes)
            memcpy(self.best_bytes, buf, self.nbytes)
            memcpy(self.first_lab, lab, n * sizeof(int))
            memcpy(self.best_lab, lab, n * sizeof(int))
            self.best_is_first = True
            return
        if memcmp(buf, self.first_bytes, self.nbytes) == 0:
            self.record(lab, self.first_lab)
            recorded = True
        if (not self.best_is_first
                and memcmp(buf, self.best_bytes, self.nbytes) == 0):
            self.record(lab, self.best_lab)
            recorded = True
        if not recorded and memcmp(buf, self.best_bytes, self.nbytes) > 0:
            memcpy(self.best_bytes, buf, self.nbytes)
            memcpy(self.best_lab, lab, n * sizeof(int))
            self.best_is_first = False

    cdef bint stab_orbit_same(self, int u, int v) nogil:
        """u, v in one orbit of found generators fixing the prefix pointwise?"""
        cdef int g, i, a, ra, rb, t
        cdef bint any_gen = False, fixes
        cdef unsigned char *gp
        for i in range(self.n):
            self.stab_parent[i] = i
        for g in range(self.ngens):
            gp = self.gens + g * NMAX
            fixes = True
            for i in range(self.depth):
                if gp[self.prefix[i]] != self.prefix[i]:
                    fixes = False
                    break
            if not fixes:
                continue
            any_gen = True
            for a in range(self.n):
                ra = a
                while self.stab_parent[ra] != ra:
                    self.stab_parent[ra] = self.stab_parent[self.stab_parent[ra]]
                    ra = self.stab_parent[ra]
                rb = gp[a]
                while self.stab_parent[rb] != rb:
                    self.stab_parent[rb] = self.stab_parent[self.stab_parent[rb]]
                    rb = self.stab_parent[rb]
                if ra != rb:
                    if ra > rb:
                        t = ra; ra = rb; rb = t
                    self.stab_parent[rb] = ra
        if not any_gen:
            return False
        ra = u
        while self.stab_parent[ra] != ra:
            ra = self.stab_parent[ra]
        rb = v
        while self.stab_parent[rb] != rb:
            rb = self.stab_parent[rb]
        return ra == rb

    cdef void search(self, int *lab, int *cstart, int *csize, int ncells) except *:
        cdef int target = -1, best_len = 1
        cdef int c, i, j, v, p, tstart, tsz, ntried
        cdef int tried[NMAX]
        cdef int members[NMAX]
        cdef int child_lab[NMAX]
        cdef int child_start[NMAX]
        cdef int child_size[NMAX]
        cdef bint skip
        ncells = self.refine(lab, cstart, csize, ncells)
        for c in range(ncells):
            if csize[c] > best_len:
                best_len = csize[c]
                target = c
        if target < 0:
            self.leaf(lab)
            return
        tstart = cstart[target]
        tsz = csize[target]
        for i in range(tsz):
            members[i] = lab[tstart + i]
        ntried = 0
        for i in range(tsz):
            v = members[i]
            skip = False
            for j in range(ntried):
                if self.stab_orbit_same(v, tried[j]):
                    skip = True
                    break
            if skip:
                continue
            # child partition: [v] first, then the rest of the cell in order
            memcpy(child_lab, lab, self.n * sizeof(int))
            child_lab[tstart] = v
            p = tstart + 1
            for j in range(tsz):
                if members[j] != v:
                    child_lab[p] = members[j]
                    p += 1
            for c in range(target):
                child_start[c] = cstart[c]
                child_size[c] = csize[c]
            child_start[target] = tstart
            child_size[target] = 1
            child_start[target + 1] = tstart + 1
            child_size[target + 1] = tsz - 1
            for c in range(target + 1, ncells):
                child_start[c + 1] = cstart[c]
                child_size[c + 1] = csize[c]
            self.prefix[self.depth] = v
            self.depth += 1
            self.search(child_lab, child_start, child_size, ncells + 1)
            self.depth -= 1
            tried[ntried] = v
            ntried += 1


cdef _Canon _run_canon(int n, uint64_t *covers, int *colors):
    cdef _Canon c = _Canon()
    c.setup(n, covers, colors)
    return c


cdef bytes _payload_from(_Canon c):
    cdef unsigned char buf[NBYTES_MAX + 1]
    cdef int i
    buf[0] = <unsigned char>(63 + c.n)
    for i in range(c.nbytes):
        buf[i + 1] = 63 + c.best_bytes[i]
    return (<char *>buf)[:c.nbytes + 1]


def canon_payload(n, cover_masks, colors):
    """Canonical digraph6 payload (size byte + packed matrix bytes)."""
    cdef uint64_t ccov[NMAX]
    cdef int ccol[NMAX]
    cdef int cn = <int>n
    cdef int i
    for i in range(cn):
        ccov[i] = <uint64_t>cover_masks[i]
        ccol[i] = <int>colors[i]
    cdef _Canon c = _run_canon(cn, ccov, ccol)
    return _payload_from(c)


def automorphism_data(n, cover_masks, colors):
    """Exact vertex orbits (min-element labels) and a generating set."""
    cdef uint64_t ccov[NMAX]
    cdef int ccol[NMAX]
    cdef int cn = <int>n
    cdef int i, g, p
    for i in range(cn):
        ccov[i] = <uint64_t>cover_masks[i]
        ccol[i] = <int>colors[i]
    cdef _Canon c = _run_canon(cn, ccov, ccol)
    orbits = [c.ufind(i) for i in range(cn)]
    gens = []
    for g in range(c.ngens):
        gens.append(tuple(c.gens[g * NMAX + p] for p in range(cn)))
    return orbits, gens


# ---------------------------------------------------------------------------
# mother classification
# ---------------------------------------------------------------------------


def classify_mother_arrays(n, level_sizes, cover_masks):
    """Classify a finished lattice by the atom action of its automorphisms.

    Same contract as the pure twin: ('fixed'|'simple'|'other', boxes).
    """
    cdef uint64_t ccov[NMAX]
    cdef int ccol[NMAX]
    cdef int colors_base[NMAX]
    cdef int cn = <int>n
    cdef int i, lvl, v, a, a_lo, a_hi, base, rep, other, idx
    v = 0
    for lvl in range(len(level_sizes)):
        for i in range(<int>level_sizes[lvl]):
            colors_base[v] = lvl
            v += 1
    for i in range(cn):
        ccov[i] = <uint64_t>cover_masks[i]
        ccol[i] = colors_base[i]
    a_hi = cn - <int>level_sizes[len(level_sizes) - 1]
    a_lo = a_hi - <int>level_sizes[len(level_sizes) - 2]
    cdef _Canon c = _run_canon(cn, ccov, ccol)
    groups = {}
    for a in range(a_lo, a_hi):
        groups.setdefault(c.ufind(a), []).append(a)
    boxes = sorted(groups.values())
    if all(len(b) == 1 for b in boxes):
        return "fixed", tuple(tuple(b) for b in boxes)
    base = len(level_sizes)
    cdef _Canon c2
    for box in boxes:
        if len(box) == 1:
            continue
        rep = box[0]
        for other in box[1:]:
            # recolor: every atom unique except rep/other sharing one color
            for i in range(cn):
                ccol[i] = colors_base[i]
            idx = 0
            for a in range(a_lo, a_hi):
                ccol[a] = base + idx
                idx += 1
            ccol[other] = ccol[rep]
            c2 = _run_canon(cn, ccov, ccol)
            if c2.ufind(rep) != c2.ufind(other):
                return "other", ()
    return "simple", tuple(tuple(b) for b in boxes)


# ---------------------------------------------------------------------------
# level extension search
# ---------------------------------------------------------------------------


cdef class _Ext:
    cdef int max_n
    cdef bint sm_creation, lsm, updeg2, atom_check_emit, use_budget, use_shortcuts
    cdef int n0, atom_start, a_cnt, m, f_cnt, frontier_lvl
    cdef uint64_t covers[NMAX]
    cdef uint64_t ups[NMAX]
    cdef uint8_t join[NMAX][NMAX]
    cdef int child_cnt[NMAX]
    cdef uint64_t cc[NMAX]
    cdef uint64_t wanted[NMAX]
    cdef int pairs_wanting
    cdef int colors[NMAX]       # levels of the bottomless mother part
    cdef int box_ord[NMAX]      # atom id -> box ordinal (simple mothers)
    cdef int box_pos[NMAX]      # atom id -> position within its box
    cdef int t[NMAX]            # batch child counts, by atom offset
    cdef bint valid_u1[NMAX]
    cdef bint req_u1[NMAX]
    cdef bint first_ok[NMAX]
    cdef bint simple, fixed
    cdef int canon_calls, candidates
    cdef object store, daughters, mother_levels, mother_class

    def __init__(self, n, level_sizes, cover_masks, cfg):
        (max_n, sm_creation, lsm, updeg2, atom_check, use_budget,
         use_shortcuts) = cfg
        self.max_n = max_n
        self.sm_creation = sm_creation
        self.lsm = lsm
        self.updeg2 = updeg2
        self.atom_check_emit = atom_check
        self.use_budget = use_budget
        self.use_shortcuts = use_shortcuts
        cdef int cn = <int>n
        cdef int i, j, lvl, v, p, a, b
        cdef uint64_t u, cov
        self.n0 = cn - 1
        self.mother_levels = tuple(level_sizes[:-1])
        self.frontier_lvl = len(level_sizes) - 1
        v = 0
        for lvl in range(len(self.mother_levels)):
            for i in range(<int>self.mother_levels[lvl]):
                self.colors[v] = lvl
                v += 1
        self.atom_start = self.n0 - <int>level_sizes[len(level_sizes) - 2]
        self.a_cnt = self.n0 - self.atom_start
        for i in range(self.n0):
            self.covers[i] = <uint64_t>cover_masks[i]
        for i in range(self.n0):
            u = <uint64_t>1 << i
            cov = self.covers[i]
            while cov:
                p = highbit(cov & (~cov + 1))
                cov &= cov - 1
                u |= self.ups[p]
            self.ups[i] = u
        self._join_table()
        memset(self.child_cnt, 0, sizeof(self.child_cnt))
        self.pairs_wanting = 0
        for i in range(self.n0):
            self.cc[i] = 0
        for a in range(self.atom_start, self.n0):
            for b in range(a + 1, self.n0):
                if self.covers[a] & self.covers[b]:
                    self.cc[a] |= <uint64_t>1 << b
                    self.cc[b] |= <uint64_t>1 << a
                    self.pairs_wanting += 1
        for i in range(self.n0):
            self.wanted[i] = self.cc[i]
        self.m = self.n0
        self.f_cnt = 0
        self.daughters = []
        self.store = set()
        self.canon_calls = 0
        self.candidates = 0
        if self.use_shortcuts:
            kind, boxes = classify_mother_arrays(n, level_sizes, cover_masks)
        else:
            kind, boxes = "other", ()
        self.mother_class = kind
        self.fixed = kind == "fixed"
        self.simple = kind == "simple"
        if self.simple:
            for i, box in enumerate(boxes):
                for j, a in enumerate(box):
                    self.box_ord[a] = i
                    self.box_pos[a] = j

    cdef void _join_table(self) except *:
        cdef int i, j, z
        cdef uint64_t jm
        for i in range(self.n0):
            self.join[i][i] = <uint8_t>i
            for j in range(i + 1, self.n0):
                if self.ups[j] >> i & 1:
                    z = i
                else:
                    jm = self.ups[i] & self.ups[j]
                    z = highbit(jm)
                    if jm & ~self.ups[z]:
                        raise ValueError("mother join table is not unique")
                self.join[i][j] = <uint8_t>z
                self.join[j][i] = <uint8_t>z

    # -- candidate checks --------------------------------------------------

    cdef bint _can_add(self, uint64_t amask) nogil:
        cdef int y, a, b, z
        cdef uint64_t jm, by, am, cov, up_all
        cdef uint8_t *row
        for y in range(self.n0, self.m):
            by = self.covers[y]
            jm = 0
            am = amask
            while am:
                a = highbit(am & (~am + 1))
                am &= am - 1
                row = self.join[a]
                cov = by
                while cov:
                    b = highbit(cov & (~cov + 1))
                    cov &= cov - 1
                    jm |= <uint64_t>1 << row[b]
            z = highbit(jm)
            if jm & ~self.ups[z]:
                return False
        up_all = 0
        am = amask
        while am:
            a = highbit(am & (~am + 1))
            am &= am - 1
            up_all |= self.ups[a]
        for y in range(self.n0):
            if up_all >> y & 1:
                continue
            jm = 0
            am = amask
            while am:
                a = highbit(am & (~am + 1))
                am &= am - 1
                jm |= <uint64_t>1 << self.join[a][y]
            z = highbit(jm)
            if jm & ~self.ups[z]:
                return False
        return True

    cdef bint _updeg1_ok(self, int a) nogil:
        cdef int y, b, z
        cdef uint64_t jm, by, cov
        cdef uint8_t *row = self.join[a]
        for y in range(self.n0, self.m):
            by = self.covers[y]
            if by >> a & 1:
                continue
            jm = 0
            cov = by
            while cov:
                b = highbit(cov & (~cov + 1))
                cov &= cov - 1
                jm |= <uint64_t>1 << row[b]
            z = highbit(jm)
            if jm & ~self.ups[z]:
                return False
        return True

    cdef bint _try_add(self, uint64_t amask, uint64_t *undo_mask) nogil:
        """Validate and commit one frontier element; fills the undo masks."""
        cdef int a, removed
        cdef uint64_t am, w
        if self.sm_creation:
            am = amask
            while am:
                a = highbit(am & (~am + 1))
                am &= am - 1
                if amask & ~self.cc[a] & ~(<uint64_t>1 << a):
                    return False
        if not self._can_add(amask):
            return False
        self.covers[self.m] = amask
        am = amask
        removed = 0
        while am:
            a = highbit(am & (~am + 1))
            am &= am - 1
            self.child_cnt[a] += 1
            if self.lsm:
                w = self.wanted[a] & amask & ~(<uint64_t>1 << a)
                undo_mask[a] = w
                if w:
                    removed += popcnt(w)
                    self.wanted[a] &= ~amask
        if self.lsm:
            self.pairs_wanting -= removed // 2
        self.m += 1
        self.f_cnt += 1
        return True

    cdef void _undo_add(self, uint64_t amask, uint64_t *undo_mask) nogil:
        cdef int a, restored = 0
        cdef uint64_t am = amask
        self.m -= 1
        self.f_cnt -= 1
        while am:
            a = highbit(am & (~am + 1))
            am &= am - 1
            self.child_cnt[a] -= 1
            if self.lsm and undo_mask[a]:
                self.wanted[a] |= undo_mask[a]
                restored += popcnt(undo_mask[a])
        if self.lsm:
            self.pairs_wanting += restored // 2

    cdef bint _is_prefix_union(self, uint64_t amask) nogil:
        cdef int cnt[NMAX]
        cdef int mx[NMAX]
        cdef int a, o
        cdef uint64_t am = amask
        for a in range(self.a_cnt):
            cnt[a] = 0
            mx[a] = -1
        while am:
            a = highbit(am & (~am + 1))
            am &= am - 1
            o = self.box_ord[a]
            cnt[o] += 1
            if self.box_pos[a] > mx[o]:
                mx[o] = self.box_pos[a]
        for a in range(self.a_cnt):
            if cnt[a] and mx[a] != cnt[a] - 1:
                return False
        return True

    # -- completion ----------------------------------------------------------

    cdef void _try_batch(self) except *:
        if self.lsm and self.pairs_wanting:
            return
        cdef int i, need = 0, cap
        cdef bint use_first
        for i in range(self.a_cnt):
            self.req_u1[i] = self.child_cnt[self.atom_start + i] == 0
            if self.req_u1[i]:
                need += 1
        if self.updeg2:
            if need == 0 and self.f_cnt >= 2:
                for i in range(self.a_cnt):
                    self.t[i] = 0
                self._close(0)
            return
        cap = self.max_n - 1 - self.m
        if need > cap:
            return
        for i in range(self.a_cnt):
            self.valid_u1[i] = self._updeg1_ok(self.atom_start + i)
            if self.req_u1[i] and not self.valid_u1[i]:
                return
        use_first = self.use_shortcuts and self.simple and self.f_cnt == 0
        for i in range(self.a_cnt):
            self.first_ok[i] = (
                self.box_pos[self.atom_start + i] == 0 if use_first else True
            )
        self._go(0, 0, not use_first, cap)

    cdef void _go(self, int i, int used, bint first_seen, int cap) except *:
        if i == self.a_cnt:
            if self.f_cnt + used >= 2:
                self._close(used)
            return
        cdef int hi = cap - used if self.valid_u1[i] else 0
        cdef int lo = 1 if self.req_u1[i] else 0
        cdef int ti
        for ti in range(lo, hi + 1):
            if ti and not first_seen and not self.first_ok[i]:
                continue
            self.t[i] = ti
            self._go(i + 1, used + ti, first_seen or ti > 0, cap)
        self.t[i] = 0

    cdef void _close(self, int total) except *:
        self.candidates += 1
        cdef int n_d = self.m + total + 1
        cdef int nf = self.f_cnt + total
        cdef uint64_t dcov[NMAX]
        cdef int dcol[NMAX]
        cdef int i, x, y, p
        cdef uint64_t bottom = 0
        cdef bint emit = True
        for i in range(self.m):
            dcov[i] = self.covers[i]
        p = self.m
        for i in range(self.a_cnt):
            for x in range(self.t[i]):
                dcov[p] = <uint64_t>1 << (self.atom_start + i)
                p += 1
        for x in range(self.n0, p):
            bottom |= <uint64_t>1 << x
        dcov[p] = bottom
        if self.atom_check_emit:
            for x in range(self.n0, p):
                for y in range(x + 1, p):
                    if dcov[x] & dcov[y] == 0:
                        emit = False
                        break
                if not emit:
                    break
        if not emit and n_d > self.max_n - 2:
            return
        cdef bytes payload = None
        if not (self.use_shortcuts and self.fixed):
            for i in range(self.n0):
                dcol[i] = self.colors[i]
            for i in range(self.n0, p):
                dcol[i] = self.frontier_lvl
            dcol[p] = self.frontier_lvl + 1
            self.canon_calls += 1
            payload = _payload_from(_run_canon(n_d, dcov, dcol))
            if payload in <set>self.store:
                return
            (<set>self.store).add(payload)
        levels = self.mother_levels + (nf, 1)
        covers = tuple(dcov[i] for i in range(n_d))
        (<list>self.daughters).append((levels, covers, emit, payload))

    # -- the recursion --------------------------------------------------------

    cdef bint _budget_prune(self, int r) nogil:
        return self.pairs_wanting > (self.max_n - 1 - self.m) * (r * (r - 1) // 2)

    cdef void run(self) except *:
        cdef int combo[NMAX]
        self._rec(self.a_cnt, combo, False)

    cdef bint _next_combo(self, int *combo, int r) nogil:
        cdef int i = r - 1, j
        while i >= 0 and combo[i] == self.a_cnt - r + i:
            i -= 1
        if i < 0:
            return False
        combo[i] += 1
        for j in range(i + 1, r):
            combo[j] = combo[j - 1] + 1
        return True

    cdef void _rec(self, int r_cur, int *last_combo, bint has_last) except *:
        self._try_batch()
        if self.m >= self.max_n - 1:
            return
        cdef bint lsm_live = self.lsm and self.use_budget and self.pairs_wanting > 0
        cdef bint simple_first = (
            self.f_cnt == 0 and self.use_shortcuts and self.simple
        )
        cdef int r, i
        cdef int combo[NMAX]
        cdef uint64_t undo_mask[NMAX]
        cdef uint64_t amask
        cdef bint have
        for r in range(r_cur, 1, -1):
            if lsm_live and self._budget_prune(r):
                break
            if r == r_cur and has_last:
                memcpy(combo, last_combo, r * sizeof(int))
                have = self._next_combo(combo, r)
            else:
                for i in range(r):
                    combo[i] = i
                have = True
            while have:
                amask = 0
                for i in range(r):
                    amask |= <uint64_t>1 << (self.atom_start + combo[i])
                if not simple_first or self._is_prefix_union(amask):
                    if self._try_add(amask, undo_mask):
                        self._rec(r, combo, True)
                        self._undo_add(amask, undo_mask)
                have = self._next_combo(combo, r)


def extend_mother(n, level_sizes, cover_masks, cfg):
    """All daughters of one mother, plus instrumentation (see pure twin)."""
    cdef _Ext ext = _Ext(n, level_sizes, cover_masks, cfg)
    ext.run()
    info = {
        "mother_class": ext.mother_class,
        "candidates": ext.candidates,
        "canon_calls": ext.canon_calls,
    }
    return ext.daughters, info
