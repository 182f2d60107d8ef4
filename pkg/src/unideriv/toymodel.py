"""The excised-roots-of-unity model.

Delete the two roots adjacent to 1 from x^n - 1, creating consecutive zero
gaps of twice the average around angle 0:

    f_n(x) = (x^n - 1) / (1 - 2 cos(2 pi/n) x + x^2).

By the quotient rule the zeros of f_n' coincide with the zeros of the
entire function

    F_n(x) = -2 cos(2 pi/n) + 2 x + n x^{n-1}
             + 2 cos(2 pi/n)(1 - n) x^n - (2 - n) x^{n+1},

up to the squared denominator.  F_n(0) is about -2 and F_n(1) is about
4 pi^2 / n, so F_n has a real zero in (0, 1) close to 1.  Substituting
x = 1 - b/n and expanding shows the zero sits near 1 - b0/n, where b0 is
the unique real root of 4 pi^2 + 2 b + b^2 - 2 b e^b, with an O(1/n^2)
error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpc, mpf

from .errors import ConstructionError, InvalidDimensionError
from .polyroot import (
    Polynomial,
    critical_points,
    solve_real_root_bracketed,
)

DIVISION_REMAINDER_TOL = 1e-25

# Working precision for the high-accuracy F_n root solve; generous enough
# for the cancellation in F_n up to n ~ 1000.
PROPOSITION_PREC = 160


@dataclass(frozen=True)
class ToyResult:
    n: int
    root: float
    predicted: float
    error: float
    deriv_residual: float


@dataclass(frozen=True)
class ModifiedToyResult:
    n: int
    c_plus: float
    c_minus: float
    root: complex
    target: float
    distance: float
    limit: float
    within: bool


def default_precision(n: int) -> int:
    # coefficient magnitudes are bounded by binomials <= 2^n; the floor of
    # 96 bits keeps the division remainder below 1e-25 even for small n
    return max(n + 64, 96)


def build_fn(n: int, precision_bits: int | None = None) -> Polynomial:
    """Exact synthetic division of x^n - 1 by 1 - 2 cos(2 pi/n) x + x^2."""
    if n < 4:
        raise InvalidDimensionError("toy model needs n >= 4")
    prec = default_precision(n) if precision_bits is None else precision_bits
    with mp.workprec(prec):
        two_c = 2 * mp.cos(2 * mp.pi / n)
        # long division in descending order; divisor x^2 - 2c x + 1
        rem = [mpc(0)] * (n + 1)
        rem[0] = mpc(1)
        rem[n] = mpc(-1)
        quotient = []
        for i in range(n - 1):
            qi = rem[i]
            quotient.append(qi)
            rem[i + 1] += two_c * qi
            rem[i + 2] -= qi
        tail = max(abs(rem[n - 1]), abs(rem[n]))
        if tail > DIVISION_REMAINDER_TOL:
            raise ConstructionError(
                f"f_{n} division remainder {mp.nstr(tail)} exceeds tolerance"
            )
        coeffs = tuple(reversed(quotient))  # ascending
        return Polynomial(coeffs=coeffs, precision_bits=prec)


def eval_Fn(n: int, x):
    """The five-term expression whose zeros match those of f_n'.

    Accepts float, complex, or mpmath input and computes in the matching
    arithmetic; real input yields a real result.
    """
    if n < 4:
        raise InvalidDimensionError("toy model needs n >= 4")
    if isinstance(x, (mpf, mpc)):
        c = mp.cos(2 * mp.pi / n)
        xn1 = x ** (n - 1)
        xn = xn1 * x
        return (-2 * c + 2 * x + n * xn1
                + 2 * c * (1 - n) * xn - (2 - n) * xn * x)
    if isinstance(x, complex):
        c = math.cos(2.0 * math.pi / n)
        xn1 = x ** (n - 1)
        xn = xn1 * x
        return (-2.0 * c + 2.0 * x + n * xn1
                + 2.0 * c * (1 - n) * xn - (2 - n) * xn * x)
    c = math.cos(2.0 * math.pi / n)
    xf = float(x)
    xn1 = xf ** (n - 1)
    xn = xn1 * xf
    return (-2.0 * c + 2.0 * xf + n * xn1
            + 2.0 * c * (1 - n) * xn - (2 - n) * xn * xf)


def build_Fn_poly(n: int, precision_bits: int | None = None) -> Polynomial:
    """F_n as an explicit degree n+1 polynomial (for root cross-checks)."""
    prec = default_precision(n) if precision_bits is None else precision_bits
    with mp.workprec(prec):
        c = mp.cos(2 * mp.pi / n)
        coeffs = [mpc(0)] * (n + 2)
        coeffs[0] = mpc(-2 * c)
        coeffs[1] = mpc(2)
        coeffs[n - 1] += mpc(n)
        coeffs[n] += mpc(2 * c * (1 - n))
        coeffs[n + 1] += mpc(-(2 - n))
        return Polynomial(coeffs=tuple(coeffs), precision_bits=prec)


def b0_criterion(b: float) -> float:
    return 4.0 * math.pi ** 2 + 2.0 * b + b * b - 2.0 * b * math.exp(b)


def solve_b0(tol: float = 1e-12) -> float:
    """The unique real root of 4 pi^2 + 2b + b^2 - 2b e^b, in [2, 3]."""
    return float(solve_real_root_bracketed(b0_criterion, 2.0, 3.0, tol))


def eval_expansion(n: int, b: float) -> float:
    """Two-term asymptotic value of F_n(1 - b/n) in powers of 1/n."""
    if n < 4:
        raise InvalidDimensionError("toy model needs n >= 4")
    eb = math.exp(b)
    pi2 = math.pi ** 2
    first = (2.0 * b + b * b - 2.0 * b * eb + 4.0 * pi2) / n
    second = (-b ** 4 - 8.0 * pi2 - 4.0 * b * b * pi2 + 8.0 * eb * pi2) / (2.0 * n * n)
    return math.exp(-b) * (first + second)


def verify_proposition(n: int, prec: int = PROPOSITION_PREC) -> ToyResult:
    """Locate the real critical point of f_n near 1 - b0/n.

    Brackets the real root of F_n in (1 - 6/n, 1 - 0.5/n) and solves it at
    high precision, then reports the distance to the predicted location.
    The residual of f_n' itself is F_n(root) divided by the squared
    denominator, which is of size ~ (b0^2 + 4 pi^2)^2 / n^4, hence the
    very tight tolerance on F_n.
    """
    if n < 10:
        raise InvalidDimensionError("proposition check needs n >= 10")
    with mp.workprec(prec):
        lo = 1 - mpf(6) / n
        hi = 1 - mpf(1) / (2 * n)
        root = solve_real_root_bracketed(
            lambda x: eval_Fn(n, x), lo, hi, tol=mpf(10) ** -30
        )
        x = mpf(root)
        q = 1 - 2 * mp.cos(2 * mp.pi / n) * x + x * x
        deriv_residual = abs(eval_Fn(n, x)) / (q * q)
        b0 = solve_b0()
        predicted = 1.0 - b0 / n
        return ToyResult(
            n=n,
            root=float(root),
            predicted=predicted,
            error=abs(float(root) - predicted),
            deriv_residual=float(deriv_residual),
        )


def modified_roots(n: int, c_plus: float, c_minus: float) -> np.ndarray:
    """Root multiset for the perturbed model: n-th roots of unity with
    e^{+-2pi i/n} deleted and e^{+-4pi i/n} relocated to e^{2pi i c/n}."""
    if n < 10:
        raise InvalidDimensionError("modified toy model needs n >= 10")
    if not (1.0 < c_plus < 3.0) or not (-3.0 < c_minus < -1.0):
        raise InvalidDimensionError(
            f"c ranges are strict: 1 < c_plus < 3, -3 < c_minus < -1; "
            f"got ({c_plus}, {c_minus})"
        )
    keep = [k for k in range(n) if k not in (1, 2, n - 2, n - 1)]
    roots = np.exp(2j * np.pi * np.asarray(keep) / n)
    moved = np.array([
        cmath.exp(2j * cmath.pi * c_plus / n),
        cmath.exp(2j * cmath.pi * c_minus / n),
    ])
    return np.concatenate([roots, moved])


def run_modified_toy(n: int, c_plus: float, c_minus: float) -> ModifiedToyResult:
    """Find the derivative root of the modified model nearest 1 - 2.6/n."""
    roots = modified_roots(n, c_plus, c_minus)
    dz, _ = critical_points(roots)
    target = 1.0 - 2.6 / n
    dists = np.abs(dz - target)
    i = int(np.argmin(dists))
    limit = 0.8 / n
    distance = float(dists[i])
    return ModifiedToyResult(
        n=n, c_plus=c_plus, c_minus=c_minus,
        root=complex(dz[i]), target=target,
        distance=distance, limit=limit, within=distance <= limit,
    )


def grid_sweep(n: int, grid: int = 5) -> list[ModifiedToyResult]:
    """Uniform grid over the open c ranges (1,3) x (-3,-1)."""
    cp = np.linspace(1.2, 2.8, grid)
    cm = np.linspace(-2.8, -1.2, grid)
    return [run_modified_toy(n, float(a), float(b)) for a in cp for b in cm]
