"""Independent brute-force lattice enumeration for small sizes.

Ground truth for the generator: labeled partial orders are enumerated by
recursive down-set extension (each new element is placed above a chosen
down-closed subset, so labels follow a bottom-up linear extension; the
first element is forced to be the unique minimum and the last element
closes the order as the unique maximum).  The results are filtered with
the definitional lattice test and reduced by canonical form.  No search
logic is shared with the generator; only the canonicalizer and the
lattice predicates are reused.
"""

from __future__ import annotations

from .canon import canonical_payload
from .core import Lattice, is_lattice, is_vertically_indecomposable

ORACLE_MAX = 8


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _bounded_posets(n):
    """Yield strict-down-set masks of naturally labeled bounded posets.

    below[i] is the bitmask of elements strictly below i.  Ids follow a
    bottom-up linear extension: 0 is the unique minimum (every later
    element is above a nonempty down-set) and n-1 the unique maximum.
    """
    below = [0] * n

    def down_closed_choices(m):
        rest = range(1, m)
        for sub in range(1 << (m - 1)):
            mask = 1  # the bottom is in every choice
            for i, v in enumerate(rest):
                if sub >> i & 1:
                    mask |= 1 << v
            if all(below[v] & ~mask == 0 for v in _bits(mask)):
                yield mask

    def rec(m):
        if m == n - 1:
            below[m] = (1 << m) - 1  # top above everything
            yield below
            below[m] = 0
            return
        for d in down_closed_choices(m):
            below[m] = d
            yield from rec(m + 1)
        below[m] = 0

    yield from rec(1)


def _to_lattice(n, below):
    """Cover digraph in top-first labeling (ids reversed), or None."""
    arcs = []
    for v in range(n):
        bb = below[v]
        for w in _bits(bb):
            # w is a lower cover of v iff nothing in v's down-set is above w
            if not any(below[x] >> w & 1 for x in _bits(bb & ~(1 << w))):
                arcs.append((n - 1 - v, n - 1 - w))
    try:
        return Lattice.from_arcs(n, arcs)
    except ValueError:
        return None


def all_lattices(n):
    """Every n-element lattice, one labeled instance per visit (with repeats
    across labelings; callers dedup by canonical form)."""
    if n == 1:
        yield Lattice.chain(1)
        return
    for below in _bounded_posets(n):
        lat = _to_lattice(n, below)
        if lat is not None and is_lattice(lat):
            yield lat


def brute_force_family(n, predicate=None, vi_only=False):
    """Canonical payload -> representative for n-lattices passing `predicate`."""
    if n > ORACLE_MAX:
        raise ValueError(f"oracle is limited to n <= {ORACLE_MAX}")
    if n < 1:
        raise ValueError("n must be positive")
    found = {}
    for lat in all_lattices(n):
        if vi_only and not is_vertically_indecomposable(lat):
            continue
        if predicate is not None and not predicate(lat):
            continue
        payload = canonical_payload(lat)
        found.setdefault(payload, lat)
    return found


def brute_force_lattices(n, vi_only=False):
    """Canonical payload -> representative for all n-element lattices."""
    return brute_force_family(n, None, vi_only=vi_only)
