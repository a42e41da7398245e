"""The recursive level-extension search over whole lattice families.

A run walks depth-first over mother lattices: the initial lattices are
M_2 .. M_{N-2}, every accepted daughter of size <= N-2 becomes a mother
in turn.  The per-mother extension itself (candidate covers, validity
checks, pruning, per-mother isomorph rejection) lives in the kernel;
this module owns family configuration, the special cases of lengths 0
and 1, dualization on emission, and the multiprocess driver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import backend
from .canon import hash_keys
from .core import Lattice, dual, new_initial


class Family(enum.Enum):
    GRADED = "graded"
    LOWER_SEMIMODULAR = "lsm"
    MODULAR = "modular"
    GEOMETRIC_DUAL = "geometric"
    SEMIMODULAR_DIRECT = "semimodular-direct"


@dataclass(frozen=True)
class FamilySpec:
    """Which family is generated, and whether emitted lattices are dualized."""

    family: Family
    emit_dual: bool = False


def spec_for(name: str, direct_semimodular: bool = False) -> FamilySpec:
    """CLI family name -> generation spec.

    Semimodular lattices are produced as duals of lower semimodular ones
    (much faster with the pair budget); --direct-semimodular switches to
    the direct construction, kept as a cross-check.
    """
    if name == "graded":
        return FamilySpec(Family.GRADED)
    if name == "lsm":
        return FamilySpec(Family.LOWER_SEMIMODULAR)
    if name == "modular":
        return FamilySpec(Family.MODULAR)
    if name == "geometric":
        return FamilySpec(Family.GEOMETRIC_DUAL, emit_dual=True)
    if name == "semimodular":
        if direct_semimodular:
            return FamilySpec(Family.SEMIMODULAR_DIRECT)
        return FamilySpec(Family.LOWER_SEMIMODULAR, emit_dual=True)
    raise ValueError(f"unknown family {name!r}")


def _kernel_cfg(spec: FamilySpec, max_n, use_pair_budget, use_shortcuts):
    fam = spec.family
    sm_creation = fam in (Family.MODULAR, Family.SEMIMODULAR_DIRECT)
    lsm = fam in (Family.LOWER_SEMIMODULAR, Family.MODULAR, Family.GEOMETRIC_DUAL)
    updeg2 = fam is Family.GEOMETRIC_DUAL
    atom_check = fam in (Family.MODULAR, Family.SEMIMODULAR_DIRECT)
    return (max_n, sm_creation, lsm, updeg2, atom_check, use_pair_budget, use_shortcuts)


# -- pure reference predicates for the family conditions --------------------
# These mirror what the kernel enforces during the search; they are used
# by the tests and never on the hot path.


def semimodular_cover_ok(lat_or_covers, cover) -> bool:
    """Every pair in a proposed upper cover shares a covering element."""
    if isinstance(lat_or_covers, Lattice):
        masks = lat_or_covers.cover_masks
    else:
        masks = lat_or_covers
    ids = sorted(cover)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if masks[a] & masks[b] == 0:
                return False
    return True


def lower_semimodular_level_ok(lat: Lattice) -> bool:
    """Every pair above the last full level with a common cover has a
    common child on it (checked on the level right above the bottom)."""
    ch = lat.children_masks()
    atom_lvl = len(lat.level_sizes) - 2
    prev = list(lat.level_members(atom_lvl - 1))
    for i, a in enumerate(prev):
        for b in prev[i + 1 :]:
            if lat.cover_masks[a] & lat.cover_masks[b] and ch[a] & ch[b] == 0:
                return False
    return True


def atoms_common_cover_ok(lat: Lattice) -> bool:
    """Every pair of atoms shares an upper cover (final semimodular check)."""
    atoms = list(lat.level_members(len(lat.level_sizes) - 2))
    for i, a in enumerate(atoms):
        for b in atoms[i + 1 :]:
            if lat.cover_masks[a] & lat.cover_masks[b] == 0:
                return False
    return True


def geometric_updegree_ok(lat: Lattice) -> bool:
    """All elements strictly below the coatom level have up-degree >= 2."""
    for v in range(lat.n):
        if lat.level_of[v] >= 2 and lat.cover_masks[v].bit_count() < 2:
            return False
    return True


@dataclass
class PairBudget:
    """Bookkeeping for the lower-semimodularity cutoff.

    pairs_wanting: pairs on the level being covered that still need a
    common child; capacity_left: elements that may still be created
    (one slot stays reserved for the bottom).
    """

    pairs_wanting: int
    capacity_left: int


def pair_budget_prune(budget: PairBudget, r: int) -> bool:
    """Cut the branch when the remaining elements cannot cover enough pairs."""
    return budget.pairs_wanting > budget.capacity_left * (r * (r - 1) // 2)


class DaughterStore:
    """Canonical forms of one mother's accepted daughters, hash-bucketed."""

    def __init__(self):
        self._buckets = {}

    def add(self, payload: bytes) -> bool:
        """True if the form was new (accepted), False if already present."""
        keys = hash_keys(payload)
        bucket = self._buckets.setdefault(keys, [])
        if payload in bucket:
            return False
        bucket.append(payload)
        return True

    def __len__(self):
        return sum(len(b) for b in self._buckets.values())


# -- the driver --------------------------------------------------------------


def _special_cases(max_n):
    out = []
    if max_n >= 1:
        out.append(Lattice.chain(1))
    if max_n >= 2:
        out.append(Lattice.chain(2))
    return out


def extend(mother: Lattice, spec: FamilySpec, max_n, *, use_pair_budget=True,
           use_shortcuts=True):
    """One level extension: the mother's accepted daughters.

    Returns a list of (daughter, emit, payload) where payload is the
    canonical form computed during dedup, or None for daughters of
    fixed-class mothers.
    """
    impl = backend.get_impl()
    cfg = _kernel_cfg(spec, max_n, use_pair_budget, use_shortcuts)
    raw, info = impl.extend_mother(mother.n, mother.level_sizes,
                                   mother.cover_masks, cfg)
    out = []
    for level_sizes, covers, emit, payload in raw:
        out.append((Lattice(level_sizes, covers), emit, payload))
    return out, info


def generate(spec: FamilySpec, max_n, *, use_pair_budget=True, use_shortcuts=True,
             class_tallies=None):
    """Yield (lattice, payload) for every VI lattice of the family, size <= N.

    Exactly one representative per isomorphism class is produced, the
    length-0 and length-1 special cases first.  payload is the canonical
    digraph6 body when the search already computed it (pre-dualization
    families only), else None.  Lattices are dualized on emission when
    the spec says so.
    """
    if not 3 <= max_n <= 62:
        raise ValueError(f"max-n must be in 3..62, got {max_n}")
    impl = backend.get_impl()
    cfg = _kernel_cfg(spec, max_n, use_pair_budget, use_shortcuts)
    for lat in _special_cases(max_n):
        yield lat, None
    for j in range(2, max_n - 1):
        root = new_initial(j)
        yield (dual(root) if spec.emit_dual else root), None
        if root.n <= max_n - 2:
            yield from _walk(impl, root, spec, cfg, class_tallies)


def _walk(impl, mother, spec, cfg, class_tallies):
    raw, info = impl.extend_mother(mother.n, mother.level_sizes,
                                   mother.cover_masks, cfg)
    if class_tallies is not None:
        class_tallies[info["mother_class"]] += 1
    for level_sizes, covers, emit, payload in raw:
        lat = Lattice(level_sizes, covers)
        if emit:
            if spec.emit_dual:
                yield dual(lat), None
            else:
                yield lat, payload
        if lat.n <= cfg[0] - 2:
            yield from _walk(impl, lat, spec, cfg, class_tallies)


def count_by_size(stream):
    counts = {}
    for lat, _payload in stream:
        counts[lat.n] = counts.get(lat.n, 0) + 1
    return counts


# -- multiprocess driver ------------------------------------------------------


def _root_task(args):
    (family_value, emit_dual, max_n, j, want_payloads,
     use_pair_budget, use_shortcuts) = args
    from .canon import canonical_payload  # local import: worker process

    spec = FamilySpec(Family(family_value), emit_dual)
    impl = backend.get_impl()
    cfg = _kernel_cfg(spec, max_n, use_pair_budget, use_shortcuts)
    counts = {}
    lines = [] if want_payloads else None
    root = new_initial(j)

    def emit(lat, payload):
        counts[lat.n] = counts.get(lat.n, 0) + 1
        if lines is None:
            return
        if payload is None:
            payload = canonical_payload(lat)
        lines.append(payload)

    emit(dual(root) if spec.emit_dual else root, None)
    if root.n <= max_n - 2:
        stack = [root]
        while stack:
            mother = stack.pop()
            raw, _info = impl.extend_mother(mother.n, mother.level_sizes,
                                            mother.cover_masks, cfg)
            for level_sizes, covers, emit_flag, payload in raw:
                lat = Lattice(level_sizes, covers)
                if emit_flag:
                    emit(dual(lat) if spec.emit_dual else lat,
                         None if spec.emit_dual else payload)
                if lat.n <= max_n - 2:
                    stack.append(lat)
    return counts, lines


def run(spec: FamilySpec, max_n, *, threads=1, want_payloads=False,
        use_pair_budget=True, use_shortcuts=True):
    """Full generation run; returns (counts per size, sorted payload lines).

    threads > 1 distributes the initial mothers over worker processes;
    the merged, sorted output is identical for every thread count.
    """
    if not 3 <= max_n <= 62:
        raise ValueError(f"max-n must be in 3..62, got {max_n}")
    from .canon import canonical_payload

    counts = {}
    lines = [] if want_payloads else None

    def emit_local(lat, payload):
        counts[lat.n] = counts.get(lat.n, 0) + 1
        if lines is None:
            return
        lines.append(payload if payload is not None else canonical_payload(lat))

    for lat in _special_cases(max_n):
        emit_local(lat, None)

    tasks = [
        (spec.family.value, spec.emit_dual, max_n, j, want_payloads,
         use_pair_budget, use_shortcuts)
        for j in range(2, max_n - 1)
    ]
    if threads <= 1:
        results = map(_root_task, tasks)
    else:
        import concurrent.futures

        pool = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
        try:
            results = list(pool.map(_root_task, tasks))
        finally:
            pool.shutdown()
    for sub_counts, sub_lines in results:
        for size, c in sub_counts.items():
            counts[size] = counts.get(size, 0) + c
        if lines is not None and sub_lines:
            lines.extend(sub_lines)
    if lines is not None:
        lines.sort()
    return counts, lines
