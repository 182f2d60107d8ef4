"""Polynomial construction, evaluation, and root finding.

Two routes produce the zeros of p' for a unitary polynomial p:

* coefficient route: expand p = prod(x - z_j), differentiate formally, and
  run Aberth-Ehrlich simultaneous iteration.  Coefficients of a degree-N
  unitary polynomial are bounded by binomial coefficients (<= 2^N), so this
  route runs at N + 64 bits of precision by default.
* log-derivative route: critical points solve S(z) = sum_j 1/(z - z_j) = 0,
  which needs no coefficient formation at all.  Candidates come from the
  eigenvalues of the compression of diag(z_j) onto the orthogonal complement
  of the uniform vector (the secular equation of that compression is exactly
  S(z) = 0), then each candidate is polished by Newton iteration on S.

The log-derivative route is the production pipeline; the coefficient route
is kept as an independent cross-check and for the toy model.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpc, mpf

from .errors import BracketError, ConvergenceError, InvalidDimensionError

# Symmetry-breaking rotation (radians) for the Aberth starting circle.
ABERTH_OFFSET = 2.0 * math.pi * (math.sqrt(2.0) - 1.0)

DOUBLE_BITS = 53


@dataclass(frozen=True)
class Polynomial:
    """Complex coefficients in ascending degree order.

    precision_bits = 53 means native complex arithmetic; anything larger
    switches coefficient work to mpmath at that working precision.
    """

    coeffs: tuple
    precision_bits: int = DOUBLE_BITS
    degenerate: bool = False

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def uses_mp(self) -> bool:
        return self.precision_bits > DOUBLE_BITS


@dataclass
class RootSet:
    roots: list
    residuals: list
    converged: bool
    clusters: list = field(default_factory=list)


def poly_from_roots(roots, precision_bits: int = DOUBLE_BITS) -> Polynomial:
    """Monic polynomial prod(x - z_j), expanded at the given precision."""
    if precision_bits < DOUBLE_BITS:
        raise InvalidDimensionError("precision_bits must be >= 53")
    roots = list(roots)
    if precision_bits == DOUBLE_BITS:
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.convolve(c, np.array([-complex(r), 1.0 + 0j]))
        return Polynomial(coeffs=tuple(c), precision_bits=precision_bits)
    with mp.workprec(precision_bits):
        c = [mpc(1)]
        for r in roots:
            rm = mpc(r)
            nxt = [mpc(0)] * (len(c) + 1)
            for i, ci in enumerate(c):
                nxt[i] -= ci * rm
                nxt[i + 1] += ci
            c = nxt
        return Polynomial(coeffs=tuple(c), precision_bits=precision_bits)


def differentiate(p: Polynomial) -> Polynomial:
    """Formal derivative; a degree-0 input yields a degenerate zero polynomial."""
    if p.degree < 1:
        zero = mpc(0) if p.uses_mp else 0j
        return Polynomial(coeffs=(zero,), precision_bits=p.precision_bits,
                          degenerate=True)
    dc = tuple(k * p.coeffs[k] for k in range(1, len(p.coeffs)))
    return Polynomial(coeffs=dc, precision_bits=p.precision_bits)


def evaluate(p: Polynomial, z):
    """Horner evaluation at the polynomial's working precision."""
    if p.uses_mp:
        with mp.workprec(p.precision_bits):
            zm = mpc(z)
            acc = mpc(0)
            for c in reversed(p.coeffs):
                acc = acc * zm + c
            return acc
    acc = 0j
    zc = complex(z)
    for c in reversed(p.coeffs):
        acc = acc * zc + c
    return acc


def _horner_vec(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _aberth_starts(degree: int):
    angles = [2.0 * math.pi * k / degree + ABERTH_OFFSET for k in range(degree)]
    return [0.95 * cmath.exp(1j * a) for a in angles]


def _detect_clusters(roots, scale: float) -> list:
    """Groups of root indices mutually closer than `scale` (union-find)."""
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(complex(roots[i]) - complex(roots[j])) < scale:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def find_roots_aberth(p: Polynomial, tol: float = 1e-12,
                      max_iters: int = 200) -> RootSet:
    """Aberth-Ehrlich simultaneous iteration for all roots of p.

    Residuals are Newton-step magnitudes |p(z)| / |p'(z)|.  Roots closer
    than 10 sqrt(tol) are flagged as a multiplicity cluster; clustered
    roots are exempt from the residual criterion (their accuracy is
    intrinsically limited to a fractional power of tol).
    """
    if p.degree < 1:
        raise InvalidDimensionError("root finding needs degree >= 1")
    if p.uses_mp:
        roots, residuals = _aberth_mp(p, tol, max_iters)
    else:
        roots, residuals = _aberth_double(p, tol, max_iters)
    cluster_scale = 10.0 * math.sqrt(tol)
    clusters = _detect_clusters(roots, cluster_scale)
    clustered = {i for g in clusters for i in g}
    converged = all(float(r) <= tol for r in residuals)
    ok = converged or all(
        float(r) <= tol or i in clustered for i, r in enumerate(residuals)
    )
    rs = RootSet(roots=roots, residuals=[float(r) for r in residuals],
                 converged=converged, clusters=clusters)
    if not ok:
        raise ConvergenceError(
            f"Aberth did not converge in {max_iters} iterations", best=rs
        )
    return rs


def _aberth_double(p: Polynomial, tol: float, max_iters: int):
    c = np.asarray(p.coeffs, dtype=complex)
    d = p.degree
    if d == 1:
        root = -c[0] / c[1]
        return [complex(root)], [0.0]
    dc = c[1:] * np.arange(1, d + 1)
    z = np.array(_aberth_starts(d), dtype=complex)
    res = None
    for _ in range(max_iters):
        pv = _horner_vec(c, z)
        dpv = _horner_vec(dc, z)
        safe = np.abs(dpv) > 0.0
        w = np.zeros_like(z)
        w[safe] = pv[safe] / dpv[safe]
        res = np.abs(w)
        if np.max(res) <= tol:
            break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom[np.abs(denom) < 1e-300] = 1.0
        z = z - w / denom
    pv = _horner_vec(c, z)
    dpv = _horner_vec(dc, z)
    res = np.where(np.abs(dpv) > 0.0, np.abs(pv) / np.maximum(np.abs(dpv), 1e-300), 0.0)
    return [complex(v) for v in z], [float(r) for r in res]


def _aberth_mp(p: Polynomial, tol: float, max_iters: int):
    with mp.workprec(p.precision_bits):
        c = [mpc(v) for v in p.coeffs]
        d = p.degree
        if d == 1:
            root = -c[0] / c[1]
            return [root], [mpf(0)]
        dc = [k * c[k] for k in range(1, d + 1)]

        def horner(cs, x):
            acc = mpc(0)
            for cc in reversed(cs):
                acc = acc * x + cc
            return acc

        z = [mpc(v) for v in _aberth_starts(d)]
        tol_mp = mpf(tol)
        for _ in range(max_iters):
            worst = mpf(0)
            for i in range(d):
                zi = z[i]
                pv = horner(c, zi)
                dpv = horner(dc, zi)
                if dpv == 0:
                    continue
                w = pv / dpv
                worst = max(worst, abs(w))
                s = mpc(0)
                for j in range(d):
                    if j != i:
                        s += 1 / (zi - z[j])
                denom = 1 - w * s
                if denom == 0:
                    continue
                z[i] = zi - w / denom
            if worst <= tol_mp:
                break
        residuals = []
        for zi in z:
            dpv = horner(dc, zi)
            residuals.append(abs(horner(c, zi)) / abs(dpv) if dpv != 0 else mpf(0))
        return z, residuals


# ---------------------------------------------------------------------------
# Log-derivative route
# ---------------------------------------------------------------------------

def polish_logderiv(zeros_of_p, candidate: complex, tol: float = 1e-12,
                    max_iters: int = 60, basin: float | None = None):
    """Newton-polish a critical-point candidate on S(z) = sum 1/(z - z_j).

    Returns (point, ok).  ok is False on divergence or basin escape, in
    which case the caller should keep the unpolished candidate; the
    returned point is then the candidate itself.
    """
    zeros = np.asarray(zeros_of_p, dtype=complex)
    if basin is None:
        basin = 2.0 * (2.0 * np.pi / zeros.size)
    z = complex(candidate)
    best, best_s = z, math.inf
    for _ in range(max_iters):
        inv = 1.0 / (z - zeros)
        s = np.sum(inv)
        if abs(s) < best_s:
            best, best_s = z, abs(s)
        if abs(s) <= tol:
            return z, True
        s2 = np.sum(inv * inv)  # S'(z) = -s2
        if s2 == 0:
            break
        step = s / s2
        z = z + step
        if not np.isfinite(z.real) or not np.isfinite(z.imag) \
                or abs(z - candidate) > basin:
            return complex(candidate), False
    if best_s <= tol:
        return best, True
    return best, False


def _compression_candidates(zeros: np.ndarray) -> np.ndarray:
    """Eigenvalues of diag(zeros) compressed onto the complement of (1,..,1).

    With uniform weights the secular equation of this compression is
    (1/n) sum_j 1/(z - z_j) = 0, so its eigenvalues are exactly the
    critical points of prod(x - z_j).
    """
    n = zeros.size
    v = np.full(n, 1.0 / math.sqrt(n))
    w = v.copy()
    w[0] -= 1.0
    w /= np.linalg.norm(w)
    basis = (np.eye(n) - 2.0 * np.outer(w, w))[:, 1:]  # Householder, maps e1 -> v
    m = basis.T @ (zeros[:, None] * basis)
    return np.linalg.eigvals(m)


def critical_points(zeros, tol: float = 1e-12, polish: bool = True):
    """All n-1 zeros of p' for p = prod(x - z_j), via the log-derivative route.

    Returns (points, num_polished).  Candidates that fail to polish are kept
    as-is; the compression eigenvalues are already accurate to roundoff.
    """
    zeros = np.asarray(zeros, dtype=complex)
    n = zeros.size
    if n < 2:
        return np.empty(0, dtype=complex), 0
    cands = _compression_candidates(zeros)
    if not polish:
        return cands, 0
    out = np.empty_like(cands)
    polished = 0
    for i, cand in enumerate(cands):
        pt, ok = polish_logderiv(zeros, cand, tol=tol)
        out[i] = pt if ok else cand
        polished += int(ok)
    return out, polished


# ---------------------------------------------------------------------------
# Real root solving
# ---------------------------------------------------------------------------

def solve_real_root_bracketed(f, a, b, tol=1e-12, max_iters: int = 200):
    """Bisection-safeguarded Newton (finite-difference slope) on [a, b].

    Works for both float and mpmath endpoints.  Returns x with |f(x)| <= tol
    and a <= x <= b.
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"f({a}) and f({b}) have the same sign")
    lo, hi, flo = (a, b, fa) if fa < 0 else (b, a, fb)
    x = (a + b) / 2
    for _ in range(max_iters):
        fx = f(x)
        if abs(fx) <= tol:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi = x
        # secant-style slope from the current bracket, Newton step from x
        h = (hi - lo) * 1e-7
        if h == 0:
            return x
        slope = (f(x + h) - fx) / h
        if slope != 0:
            x_new = x - fx / slope
        else:
            x_new = (lo + hi) / 2
        inside = (min(lo, hi) < x_new < max(lo, hi))
        x = x_new if inside else (lo + hi) / 2
        if lo == hi:
            return x
    fx = f(x)
    if abs(fx) <= tol:
        return x
    raise ConvergenceError(
        f"bracketed solve stalled at x={x} with |f|={abs(fx)}", best=x
    )
