"""Count tables: vertically indecomposable counts and the totals recursion."""

from __future__ import annotations

from dataclasses import dataclass, field


def totals_from_vi(vi):
    """Totals per size from VI counts via vertical decomposition.

    u(1) = 1 and u(N) = sum_{k=2..N} vi(k) * u(N-k+1) for N >= 2.
    vi must cover every size 1..max(vi); arithmetic is exact.
    """
    if not vi:
        return {}
    max_n = max(vi)
    missing = [n for n in range(1, max_n + 1) if n not in vi]
    if missing:
        raise ValueError(f"vi counts missing for sizes {missing}")
    total = {1: 1}
    for n in range(2, max_n + 1):
        total[n] = sum(vi[k] * total[n - k + 1] for k in range(2, n + 1))
    return total


@dataclass
class CountTable:
    """Per-size VI and total counts for one family."""

    family: str
    vi: dict = field(default_factory=dict)
    total: dict = field(default_factory=dict)

    @property
    def max_n(self):
        return max(self.vi) if self.vi else 0

    @classmethod
    def from_vi(cls, family, vi):
        vi = dict(vi)
        if family == "geometric":
            # geometric lattices are necessarily vertically indecomposable
            return cls(family, vi, dict(vi))
        return cls(family, vi, totals_from_vi(vi))


def render_table(table: CountTable, fmt="text") -> str:
    """Rows `n, vi, total` (vi only for geometric, where total == vi)."""
    geo = table.family == "geometric"
    if fmt == "csv":
        header = "n,vi" if geo else "n,vi,total"
        sep = ","
    elif fmt == "text":
        header = "n, vi" if geo else "n, vi, total"
        sep = ", "
    else:
        raise ValueError(f"unknown format {fmt!r}")
    lines = [header]
    for n in range(1, table.max_n + 1):
        cols = [n, table.vi.get(n, 0)]
        if not geo:
            cols.append(table.total.get(n, 0))
        lines.append(sep.join(str(c) for c in cols))
    return "\n".join(lines)
