"""Hermitian lattices attached to directed graphs over O_k, k in {4, 6}.

A graph with n vertices defines a form on the free O_k-module of rank n:
k/2 on the diagonal, -1-zeta_k for a directed edge (i, j), the conjugate
on the mirror entry, 0 otherwise.  Gram matrices are plain lists of lists
of CycRat with entries[i][j] = psi(r_i, r_j); psi is linear in the first
argument and conjugate-linear in the second.

The exact signature routine and the box enumerator are the workhorses:
signatures drive every validity check downstream, and the enumerator is
the only window onto the (infinite) root and isotropic sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclo import CycRat, units, vector_key, vector_content, is_unit, zeta
from .errors import (
    DimensionMismatch,
    GeneratorNotUnitary,
    InvalidGraph,
    NotARoot,
)


@dataclass(frozen=True)
class GraphSpec:
    vertex_count: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.vertex_count < 0:
            raise InvalidGraph("negative vertex count")
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise InvalidGraph("edge %r is not a pair" % (e,))
            i, j = e
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise InvalidGraph("edge %r out of range" % (e,))
            if i == j:
                raise InvalidGraph("loop at vertex %d" % i)
            key = frozenset((i, j))
            if key in seen:
                raise InvalidGraph("repeated edge between %d and %d" % (i, j))
            seen.add(key)


def ring_of(M) -> int:
    return M[0][0].k


def as_cyc(value, k) -> CycRat:
    if isinstance(value, CycRat):
        if value.k != k:
            raise ValueError("value from the wrong ring")
        return value
    return CycRat(value, 0, k)


def check_hermitian(M) -> None:
    n = len(M)
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("Gram matrix must be square")
    for i in range(n):
        if M[i][i].b:
            raise ValueError("diagonal entry %d is not real" % i)
        for j in range(i + 1, n):
            if M[i][j] != M[j][i].conjugate():
                raise ValueError("entries (%d,%d)/(%d,%d) not conjugate" % (i, j, j, i))


def gram_matrix(graph: GraphSpec, k: int):
    """Gram matrix of the graph lattice: k/2 diagonal, -1-zeta per edge."""
    if not isinstance(graph, GraphSpec):
        graph = GraphSpec(*graph)
    n = graph.vertex_count
    zero = CycRat(0, 0, k)
    diag = CycRat(Fraction(k, 2), 0, k)
    edge_val = CycRat(-1, -1, k)
    M = [[zero] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = diag
    for i, j in graph.edges:
        M[i][j] = edge_val
        M[j][i] = edge_val.conjugate()
    return M


def herm_product(M, x, y) -> CycRat:
    n = len(M)
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(
            "vectors of length %d, %d against a %dx%d form" % (len(x), len(y), n, n)
        )
    k = ring_of(M)
    total = CycRat(0, 0, k)
    for i in range(n):
        xi = as_cyc(x[i], k)
        if not xi:
            continue
        row = M[i]
        for j in range(n):
            yj = as_cyc(y[j], k)
            if yj and row[j]:
                total = total + xi * yj.conjugate() * row[j]
    return total


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    null: int

    def as_tuple(self):
        return (self.positive, self.negative, self.null)


def signature(M) -> Signature:
    """Exact inertia of the Hermitian form, counted in complex dimensions.

    Recursive elimination: a nonzero real diagonal pivot contributes its
    sign and leaves the Schur complement; if the diagonal vanishes but
    some psi(e_i, e_j) does not, that pair spans a hyperbolic plane
    contributing (1, 1), and subtracting the projections onto e_i, e_j
    from the remaining basis vectors restores the recursion; a zero block
    is pure kernel.
    """
    check_hermitian(M)
    pos = neg = 0
    G = [list(row) for row in M]
    while True:
        n = len(G)
        if n == 0:
            return Signature(pos, neg, 0)
        pivot = None
        for i in range(n):
            if G[i][i]:
                pivot = i
                break
        if pivot is not None:
            i = pivot
            d = G[i][i]
            if d.a > 0:
                pos += 1
            else:
                neg += 1
            rest = [p for p in range(n) if p != i]
            G = [[G[p][q] - G[p][i] * G[i][q] / d for q in rest] for p in rest]
            continue
        pair = None
        for i in range(n):
            for j in range(i + 1, n):
                if G[i][j]:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            return Signature(pos, neg, n)
        i, j = pair
        pos += 1
        neg += 1
        rest = [p for p in range(n) if p != i and p != j]
        # coefficients making e_p - a*e_i - b*e_j orthogonal to e_i and e_j;
        # one-sided correction suffices since the new vectors kill psi(., e_i/j)
        alpha = {p: G[p][j] / G[i][j] for p in rest}
        beta = {p: G[p][i] / G[j][i] for p in rest}
        G = [
            [G[p][q] - alpha[p] * G[i][q] - beta[p] * G[j][q] for q in rest]
            for p in rest
        ]


def is_root(M, v) -> bool:
    k = ring_of(M)
    return herm_product(M, v, v) == Fraction(k, 2)


# ---------------------------------------------------------------------------
# box enumeration


def _integer_form(M):
    """The integer matrix C with psi(v,v)*scale = u C u^T, u = (x..., y...).

    Writing v_i = x_i + zeta*y_i and M_ij = a_ij + b_ij*zeta, the real
    number psi(v,v) equals sum_ij P_ij*a_ij - Q_ij*b_ij with
    P = x_i x_j + y_i y_j (+ x_i y_j when k = 6) and Q = y_i x_j - x_i y_j.
    Collecting coefficients gives blocks [[A, kappa*A + B], [-B, A]].
    """
    n = len(M)
    k = ring_of(M)
    kappa = 1 if k == 6 else 0
    scale = 1
    for row in M:
        for x in row:
            scale = lcm(scale, x.a.denominator, x.b.denominator)
    C = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a = int(M[i][j].a * scale)
            b = int(M[i][j].b * scale)
            C[i][j] = a
            C[n + i][n + j] = a
            C[i][n + j] = kappa * a + b
            C[n + i][j] = -b
    return C, scale


def _box_vectors_exact(n, k, bound, C, scale_target):
    from itertools import product

    hits = []
    rng = range(-bound, bound + 1)
    for u in product(rng, repeat=2 * n):
        q = sum(
            u[p] * C[p][q_] * u[q_]
            for p in range(2 * n)
            for q_ in range(2 * n)
            if u[p] and u[q_] and C[p][q_]
        )
        if q == scale_target and any(u):
            hits.append(tuple(CycRat(u[i], u[n + i], k) for i in range(n)))
    return hits


def enumerate_by_norm(M, target_norm, coeff_bound: int):
    """All nonzero v with |coordinate parts| <= coeff_bound and psi(v,v) = target.

    The box is scanned as an integer quadratic form in the 2n coefficient
    parts; hits are re-verified exactly.  Output is sorted by the
    coordinatewise (a, b) key so the order is reproducible.
    """
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be nonnegative")
    check_hermitian(M)
    n = len(M)
    k = ring_of(M)
    if n == 0 or coeff_bound == 0:
        return []
    C, scale = _integer_form(M)
    t = Fraction(target_norm) * scale
    if t.denominator != 1:
        return []
    t = t.numerator

    abs_sum = sum(abs(c) for row in C for c in row)
    m = 2 * coeff_bound + 1
    total = m ** (2 * n)
    if abs_sum * coeff_bound * coeff_bound < 2**53 and total > 4096:
        import numpy as np

        # every partial sum stays under 2**53, so the float64 pass is
        # exact; the int64 recheck only guards the matching rows
        Cf = np.array(C, dtype=np.float64)
        Ci = np.array(C, dtype=np.int64)
        pows = np.array([m**p for p in range(2 * n)], dtype=np.int64)
        hits = []
        chunk = 1 << 19
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            Z = ((idx[:, None] // pows[None, :]) % m - coeff_bound).astype(np.float64)
            vals = ((Z @ Cf) * Z).sum(axis=1)
            sel = Z[vals == t].astype(np.int64)
            if not len(sel):
                continue
            exact = ((sel @ Ci) * sel).sum(axis=1)
            for row in sel[exact == t]:
                u = [int(c) for c in row]
                if any(u):
                    hits.append(tuple(CycRat(u[i], u[n + i], k) for i in range(n)))
    else:
        hits = _box_vectors_exact(n, k, coeff_bound, C, t)

    hits.sort(key=vector_key)
    return hits


# ---------------------------------------------------------------------------
# unitary reflections and orbits


def reflection(M, r, mu):
    """Matrix of x -> x - (1 - mu) * psi(x, r)/psi(r, r) * r.

    mu must be one of the k roots of unity; mu = 1 gives the identity and
    the defining root is an eigenvector with eigenvalue mu.
    """
    k = ring_of(M)
    mu = as_cyc(mu, k)
    if not is_unit(mu) or mu not in units(k):
        raise ValueError("mu must be a root of unity in O_%d" % k)
    if not is_root(M, r):
        raise NotARoot("reflection axis must have norm k/2")
    n = len(M)
    nr = herm_product(M, r, r)
    factor = (CycRat(1, 0, k) - mu) / nr
    # c_j = psi(e_j, r), so that sum_j c_j x_j = psi(x, r)
    c = [
        sum((M[j][l] * as_cyc(r[l], k).conjugate() for l in range(n)), CycRat(0, 0, k))
        for j in range(n)
    ]
    S = [[CycRat(1 if i == j else 0, 0, k) for j in range(n)] for i in range(n)]
    for i in range(n):
        ri = as_cyc(r[i], k)
        if not ri:
            continue
        for j in range(n):
            if c[j]:
                S[i][j] = S[i][j] - factor * ri * c[j]
    return S


def apply_matrix(S, v):
    n = len(S)
    k = ring_of(S)
    return tuple(
        sum((S[i][j] * as_cyc(v[j], k) for j in range(n)), CycRat(0, 0, k))
        for i in range(n)
    )


def pullback_gram(M, S):
    """Gram of the transformed basis: entry (i,j) = psi(S e_i, S e_j)."""
    n = len(M)
    k = ring_of(M)
    zero = CycRat(0, 0, k)
    # rows of S* M: T[q][i] = sum_p conj-free accumulation, done in two passes
    T = [[zero] * n for _ in range(n)]
    for p in range(n):
        for i in range(n):
            if S[p][i]:
                for q in range(n):
                    if M[p][q]:
                        T[q][i] = T[q][i] + S[p][i] * M[p][q]
    P = [[zero] * n for _ in range(n)]
    for q in range(n):
        for j in range(n):
            sqj = S[q][j]
            if sqj:
                cqj = sqj.conjugate()
                for i in range(n):
                    if T[q][i]:
                        P[i][j] = P[i][j] + T[q][i] * cqj
    return P


def preserves_form(M, S) -> bool:
    P = pullback_gram(M, S)
    n = len(M)
    return all(P[i][j] == M[i][j] for i in range(n) for j in range(n))


def orbit_expand(M, seeds, generators, depth: int):
    """Closure of seeds under the generators up to word length depth."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    for S in generators:
        if not preserves_form(M, S):
            raise GeneratorNotUnitary("generator does not preserve the form")
    k = ring_of(M)
    frontier = {tuple(as_cyc(c, k) for c in v) for v in seeds}
    seen = set(frontier)
    for _ in range(depth):
        nxt = set()
        for v in frontier:
            for S in generators:
                w = apply_matrix(S, v)
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        if not nxt:
            break
        frontier = nxt
    return sorted(seen, key=vector_key)


def primitive_up_to_units(vectors):
    """Filter to primitive O_k vectors, one representative per unit orbit."""
    out = {}
    for v in vectors:
        if not all(c.is_integral() for c in v):
            continue
        g = vector_content(v)
        if not is_unit(g):
            continue
        canon = min(
            (tuple(u * c for c in v) for u in units(v[0].k)), key=vector_key
        )
        out[canon] = canon
    return sorted(out, key=vector_key)
