"""Built-in graphs and hyperplane families used by tests and the CLI.

Dynkin trees are stored as edge lists with an arbitrary orientation; for
forests the lattice signature does not depend on it.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedType
from .lattices import GraphSpec


def _path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def dynkin_graph(name: str) -> GraphSpec:
    """Standard Dynkin tree: A1-A10, D4-D7, E6, E7, E8."""
    name = name.strip().upper()
    family, rank = name[:1], name[1:]
    if not rank.isdigit():
        raise UnsupportedType("unknown diagram %r" % name)
    n = int(rank)
    if family == "A" and 1 <= n <= 10:
        return GraphSpec(n, _path_edges(n))
    if family == "D" and 4 <= n <= 7:
        # path on 0..n-2 with the extra leaf n-1 at the fork n-3
        return GraphSpec(n, _path_edges(n - 1) + [(n - 3, n - 1)])
    if family == "E" and n in (6, 7, 8):
        # path on 0..n-2 with the branch vertex n-1 attached at node 2
        return GraphSpec(n, _path_edges(n - 1) + [(2, n - 1)])
    raise UnsupportedType("unknown diagram %r" % name)


DYNKIN_NAMES = tuple(
    ["A%d" % n for n in range(1, 11)]
    + ["D%d" % n for n in range(4, 8)]
    + ["E6", "E7", "E8"]
)


def _unit_covector(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def boolean_hyperplanes(n: int):
    """The n coordinate hyperplanes x_i = 0 in dimension n."""
    return [(_unit_covector(n, i), Fraction(0)) for i in range(n)]


def concurrent_lines(m: int):
    """m distinct lines through the origin of the plane: x=0, y=0, x=t*y."""
    if m < 1:
        raise ValueError("need at least one line")
    out = [([Fraction(1), Fraction(0)], Fraction(0))]
    if m >= 2:
        out.append(([Fraction(0), Fraction(1)], Fraction(0)))
    for t in range(1, m - 1):
        out.append(([Fraction(1), Fraction(-t)], Fraction(0)))
    return out


def braid_hyperplanes(n: int):
    """All x_i = x_j in dimension n."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            cov = [Fraction(0)] * n
            cov[i] = Fraction(1)
            cov[j] = Fraction(-1)
            out.append((cov, Fraction(0)))
    return out
