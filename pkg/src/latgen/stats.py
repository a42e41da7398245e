"""Shape statistics over lattice lists: mean lengths and level widths."""

from __future__ import annotations

from fractions import Fraction

from . import d6
from .core import Lattice


def _lattices(lines):
    for line in lines:
        n, arcs = d6.decode(line)
        yield Lattice.from_arcs(n, arcs)


def average_length(lines):
    """Mean lattice length per size over the list, as exact rationals."""
    sums, counts = {}, {}
    for lat in _lattices(lines):
        sums[lat.n] = sums.get(lat.n, 0) + lat.length
        counts[lat.n] = counts.get(lat.n, 0) + 1
    return {n: Fraction(sums[n], counts[n]) for n in sorted(sums)}


def average_level_widths(lines, n, align="top"):
    """Mean element count per level over all records of size n.

    Levels are aligned from the top by default (lattices shorter than the
    longest contribute zero width beyond their bottom); align='bottom'
    anchors at the bottom instead.
    """
    if align not in ("top", "bottom"):
        raise ValueError("align must be 'top' or 'bottom'")
    widths = []
    count = 0
    for lat in _lattices(lines):
        if lat.n != n:
            raise ValueError(f"record of size {lat.n} in a size-{n} computation")
        count += 1
        sizes = list(lat.level_sizes)
        if len(sizes) > len(widths):
            grow = len(sizes) - len(widths)
            if align == "top":
                widths.extend([0] * grow)
            else:
                widths[0:0] = [0] * grow
        if align == "top":
            for i, w in enumerate(sizes):
                widths[i] += w
        else:
            off = len(widths) - len(sizes)
            for i, w in enumerate(sizes):
                widths[off + i] += w
    if count == 0:
        raise ValueError("empty list")
    return [Fraction(w, count) for w in widths]


def length_csv(rows_by_family):
    """CSV text with columns n, family, mean_length."""
    out = ["n,family,mean_length"]
    for family, means in rows_by_family.items():
        for n, mean in means.items():
            out.append(f"{n},{family},{float(mean):.6g}")
    return "\n".join(out)


def widths_csv(widths_by_family, align="top"):
    """CSV text with columns level, family, mean_width."""
    out = [
        f"# levels aligned from the {align}; shorter lattices pad with zeros",
        "level,family,mean_width",
    ]
    for family, widths in widths_by_family.items():
        for lvl, mean in enumerate(widths):
            out.append(f"{lvl},{family},{float(mean):.6g}")
    return "\n".join(out)
