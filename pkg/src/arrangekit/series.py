"""Truncated lattice and orbit series with explicit tail bounds.

Two families: the planar sums sum (z+a)^{-k} over a square window of a
rank-2 lattice, and the orbit sums sum psi(z, w)^{-l} over a finite
window of equal-negative-norm vectors.  Every result carries the number
of terms used and a tail estimate; nothing here pretends to evaluate an
infinite series exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ball import HermSpace, in_ball
from .cyclo import CycRat, embed
from .errors import (
    ConvergenceGuard,
    EmptyOrbit,
    NotIsotropic,
    OutsideBall,
    PoleHit,
)

POLE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    poles_hit: tuple = ()


@dataclass(frozen=True)
class PlanarLattice:
    omega1: complex
    omega2: complex

    def __post_init__(self):
        w1, w2 = complex(self.omega1), complex(self.omega2)
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        if w1 == 0 or w2 == 0 or (w2 / w1).imag == 0:
            raise ValueError("generators must be R-linearly independent")

    def covolume(self) -> float:
        return abs((self.omega1.conjugate() * self.omega2).imag)

    def box_clearance(self) -> float:
        """Distance from 0 to the boundary of {u*w1 + v*w2 : max|u|,|v| = 1}.

        Any lattice point with max(|m|, |n|) = t then has modulus >= t
        times this, which is what the tail bound of weierstrass_pk needs.
        """

        def seg_dist(a: complex, b: complex) -> float:
            # distance from 0 to {a + t*b : t in [-1, 1]}
            t = -((b.conjugate() * a).real) / abs(b) ** 2
            t = max(-1.0, min(1.0, t))
            return abs(a + t * b)

        return min(seg_dist(self.omega1, self.omega2), seg_dist(self.omega2, self.omega1))


def weierstrass_pk(z, lat: PlanarLattice, k: int, radius: int) -> SeriesResult:
    """Sum of (z+a)^(-k) over a = m*w1 + n*w2, |m|, |n| <= radius.

    The tail bound is rigorous: points outside the window on shell t
    have modulus at least t*h - |z| with h the box clearance, at most 8t
    of them per shell, and the shell series is summed by integral
    comparison.  Infinite when radius*h does not clear |z|.
    """
    if k < 3:
        raise ValueError("exponent must be at least 3 for absolute convergence")
    if radius < 1:
        raise ValueError("radius must be at least 1")
    z = complex(z)
    w1, w2 = lat.omega1, lat.omega2
    pole_scale = 1e-12 * max(abs(w1), abs(w2))
    total = 0j
    for m in range(-radius, radius + 1):
        base = z + m * w1
        for n in range(-radius, radius + 1):
            p = base + n * w2
            if abs(p) < pole_scale:
                raise PoleHit("z + (%d*w1 + %d*w2) = 0" % (m, n))
            total += p ** (-k)
    h = lat.box_clearance()
    c0 = abs(z)
    T = radius + 1
    U = T * h - c0
    if U <= 0:
        tail = math.inf
    else:
        # decreasing summand: first term plus the integral from T on
        tail = 8 * T * U ** (-k) + (8 / h**2) * (
            U ** (2 - k) / (k - 2) + c0 * U ** (1 - k) / (k - 1)
        )
    return SeriesResult(total, (2 * radius + 1) ** 2, tail, ())


# ---------------------------------------------------------------------------
# orbit series over a Hermitian space


@dataclass(frozen=True)
class OrbitWindow:
    vectors: tuple
    ambient_dim_n: int

    def __post_init__(self):
        vecs = tuple(tuple(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len(set(vecs)) != len(vecs):
            raise ValueError("window vectors must be distinct")
        for v in vecs:
            if len(v) != self.ambient_dim_n + 1:
                raise ValueError("window vector of wrong length")


def _as_space(gram) -> HermSpace:
    if isinstance(gram, HermSpace):
        return gram
    return HermSpace.from_gram(gram)


def _embed_vector(z):
    out = []
    for c in z:
        if isinstance(c, CycRat):
            out.append(embed(c))
        else:
            out.append(complex(c))
    return tuple(out)


def _window_checks(space: HermSpace, orbit: OrbitWindow, l: int):
    n = orbit.ambient_dim_n
    if space.n != n:
        raise ValueError("window dimension does not match the form")
    if l <= 2 * n + 1:
        raise ConvergenceGuard("need exponent > %d, got %d" % (2 * n + 1, l))
    if not orbit.vectors:
        raise EmptyOrbit("window has no vectors")
    norms = {space.psi(w, w).real_part() for w in orbit.vectors}
    if len(norms) != 1:
        raise ValueError("window vectors must share one norm")
    common = norms.pop()
    if common >= 0:
        raise ValueError("window norm must be negative, got %s" % common)


def _psi_against_window(space: HermSpace, zc, window):
    import numpy as np

    Mc = np.array(space.gram_complex(), dtype=complex)
    W = np.array([_embed_vector(w) for w in window], dtype=complex)
    zv = np.array(zc, dtype=complex)
    return (Mc @ W.conj().T).T @ zv


def _shell_tail(absvals, n: int, l: int) -> float:
    """Fitted shell model: counts per unit shell of |psi| grow like N^(2n)."""
    shells = {}
    for r in absvals:
        N = max(1, math.ceil(r))
        shells[N] = shells.get(N, 0) + 1
    c = max(count / N ** (2 * n) for N, count in shells.items())
    N0 = max(shells)
    finite = 0.0
    N1 = N0 + 64
    for N in range(N0 + 1, N1):
        finite += c * N ** (2 * n) * (N - 1) ** (-l)
    kappa = (N1 / (N1 - 1)) ** (2 * n)
    power = 2 * n - l
    m = N1 - 1
    remainder = c * kappa * (m**power + m ** (power + 1) / (l - 2 * n - 1))
    return finite + remainder


def poincare_weierstrass(z, orbit: OrbitWindow, l: int, gram) -> SeriesResult:
    """Sum of psi(z, w)^(-l) over the window, in window order.

    The form is normalized so the ball is psi(z,z) > 0 and z must lie
    inside it.  Terms with |psi(z,w)| below the relative pole tolerance
    are excluded and reported; any such term makes the value infinite
    (the true series has a pole along each w-orthogonal hyperplane).
    """
    space = _as_space(gram)
    _window_checks(space, orbit, l)
    zc = _embed_vector(z)
    membership = in_ball(space, zc)
    if membership.sign <= 0:
        raise OutsideBall("psi(z,z) = %g is not positive" % membership.value)
    vals = _psi_against_window(space, zc, orbit.vectors)
    absvals = [abs(v) for v in vals]
    tol = POLE_TOLERANCE * max(absvals)
    poles = []
    total = 0j
    used = 0
    kept = []
    for idx, (v, r) in enumerate(zip(vals, absvals)):
        if r <= tol:
            poles.append((idx, r))
            continue
        total += v ** (-l)
        used += 1
        kept.append(r)
    n = orbit.ambient_dim_n
    tail = _shell_tail(absvals, n, l)
    if poles:
        return SeriesResult(complex(math.inf, 0.0), used, tail, tuple(poles))
    return SeriesResult(total, used, tail, ())


@dataclass(frozen=True)
class CuspLimitResult:
    results: tuple  # SeriesResult per s
    s_values: tuple
    stable_value: complex
    stable_count: int
    decaying_count: int
    decaying_abs: tuple  # sum of |term| over the decaying part, per s
    s0: float
    monotone: bool

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]


def cusp_limit_check(z, orbit: OrbitWindow, l: int, gram, e, s_values) -> CuspLimitResult:
    """Evaluate the orbit series along z + s*psi(z,e)*e and split it.

    Terms with psi(w, e) = 0 are unchanged by the flow (the stable
    subseries); the rest satisfy psi(z_s, w) = psi(z,w) + s*psi(z,e)*psi(e,w),
    so their absolute sum decreases once s clears the reported s0.
    """
    space = _as_space(gram)
    _window_checks(space, orbit, l)
    k = space.ring
    e_exact = tuple(c if isinstance(c, CycRat) else CycRat(c, 0, k) for c in e)
    if space.psi(e_exact, e_exact):
        raise NotIsotropic("flow axis must be isotropic")
    s_values = tuple(float(s) for s in s_values)
    if list(s_values) != sorted(s_values):
        raise ValueError("s_values must be increasing")

    stable_idx = []
    decaying_idx = []
    pairings = []  # psi(e, w) for each window vector
    for idx, w in enumerate(orbit.vectors):
        p = space.psi(e_exact, w)
        pairings.append(embed(p))
        if p:
            decaying_idx.append(idx)
        else:
            stable_idx.append(idx)

    zc = _embed_vector(z)
    ec = _embed_vector(e_exact)
    beta = space.psi_numeric(zc, ec)

    vals0 = _psi_against_window(space, zc, orbit.vectors)
    stable_value = sum(vals0[i] ** (-l) for i in stable_idx) if stable_idx else 0j

    s0 = 0.0
    if decaying_idx and beta:
        for i in decaying_idx:
            denom = beta * pairings[i]
            s0 = max(s0, -(vals0[i] / denom).real)

    results = []
    decaying_abs = []
    for s in s_values:
        zs = tuple(c + s * beta * e_ for c, e_ in zip(zc, ec))
        res = poincare_weierstrass(zs, orbit, l, space)
        results.append(res)
        vals = _psi_against_window(space, zs, orbit.vectors)
        part = 0.0
        for i in decaying_idx:
            r = float(abs(vals[i]))
            part += r ** (-l) if r else math.inf
        decaying_abs.append(part)

    beyond = [a for s, a in zip(s_values, decaying_abs) if s > s0]
    monotone = all(b <= a for a, b in zip(beyond, beyond[1:]))
    return CuspLimitResult(
        tuple(results),
        s_values,
        stable_value,
        len(stable_idx),
        len(decaying_idx),
        tuple(decaying_abs),
        s0,
        monotone,
    )
