"""Special-function kernel and the derived constants.

Provides Gamma (Lanczos, reflection for the left half-line), the generalized
hypergeometric 2F3 by direct term recurrence, tanh-sinh quadrature for
integrands with algebraic endpoint singularities, a bracketing Brent solver,
the ascending Bessel-J series with its first two positive zeros, and on top of
those every named constant:

    alpha0        unique root in (0,1) of  int_0^{3pi/2} t^-a cos t dt = 0
    alpha0_prime  root of  int_0^{3pi/2} t^-a cos t (1 - 2t/(3pi))^d dt = 0
    beta0, beta1  cubic-fit expansion coefficients of alpha0_prime(d) at d = 0
    lambda_prime  a' + 1/2 where  int_0^{j_{a',2}} t^-a' J_a'(t) dt = 0

alpha0 and alpha0_prime each have two independent routes (quadrature root and
the zero of the closed-form 2F3 expression); both are exposed and the prime
solver cross-checks them to 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (BracketError, ConvergenceError, ParameterDomainError,
                     PoleError, RootOutOfRangeError)

THREE_PI_OVER_2 = 1.5 * math.pi
HYP_ARG = -9.0 * math.pi ** 2 / 16.0

# Lanczos g = 7, 9 terms; classic coefficient set, ~1e-14 relative on (0, 20]
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class SpecialConstant:
    name: str
    value: float
    route: str
    residual: float
    tol: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("constant value must be finite")
        if self.residual > self.tol:
            raise ValueError(
                f"{self.name}: residual {self.residual:.3e} exceeds tol {self.tol:.3e}")


def gamma_fn(x: float) -> float:
    """Gamma(x); reflection formula for x < 0.5, PoleError at 0, -1, -2, ..."""
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma pole at {x}")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def hyp2f3(a1: float, a2: float, b1: float, b2: float, b3: float, z: float,
           max_terms: int = 10000) -> float:
    """2F3(a1, a2; b1, b2, b3; z) = sum (a1)_k (a2)_k / ((b1)_k (b2)_k (b3)_k k!) z^k.

    Summed until |term| < 1e-16 |partial| for five consecutive terms.
    """
    for b in (b1, b2, b3):
        if b <= 0 and b == math.floor(b):
            raise PoleError(f"denominator parameter {b} is a non-positive integer")
    term = 1.0
    acc = 1.0
    small = 0
    for k in range(max_terms):
        term *= (a1 + k) * (a2 + k) / ((b1 + k) * (b2 + k) * (b3 + k) * (k + 1.0)) * z
        acc += term
        if abs(term) < 1e-16 * abs(acc):
            small += 1
            if small >= 5:
                return acc
        else:
            small = 0
    raise ConvergenceError(f"2F3 did not converge within {max_terms} terms")


def quad_singular(f: Callable[[float], float], a: float, b: float,
                  tol: float = 1e-12, max_level: int = 12) -> float:
    """Tanh-sinh quadrature of f on (a, b) to absolute tolerance tol.

    Handles algebraic endpoint singularities of exponent > -1; f is never
    evaluated at a or b.  Nodes are addressed by their distance to the nearest
    endpoint, offset = 1 - tanh((pi/2) sinh t) = 2/(1 + e^{pi sinh t}), so the
    double-exponential clustering is not lost to rounding near a singular
    endpoint.  Levels halve the trapezoid spacing, reusing previous nodes.

    f receives only the abscissa x: integrands whose singular factor cancels
    catastrophically when recomputed from x (for example (1-x)^-1/2 evaluated
    at x near 1) limit the attainable tolerance to the cancellation noise,
    roughly 1e-7 for inverse-square-root behaviour at both endpoints.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ParameterDomainError(f"invalid interval [{a}, {b}]")
    halfw = 0.5 * (b - a)

    def pair(t: float) -> tuple[float, float]:
        """(offset, weight) at abscissa t > 0; weight excludes the h factor."""
        st = math.sinh(t)
        eu = math.exp(-math.pi * st)  # underflows (never overflows) for t > 0
        offset = 2.0 * eu / (1.0 + eu)
        # offset * (2 - offset) = sech^2((pi/2) sinh t)
        return offset, 0.5 * math.pi * math.cosh(t) * offset * (2.0 - offset)

    def sample(offset: float) -> float:
        # skip any node that rounds onto an endpoint; its weight is negligible
        d = halfw * offset
        v = 0.0
        lo = a + d
        if a < lo < b:
            v += f(lo)
        hi = b - d
        if a < hi < b and hi > lo:
            v += f(hi)
        return v

    # raw sum of weight*f over all evaluated nodes; the trapezoid spacing h
    # multiplies at the end, so halving h just adds the odd-multiple nodes
    total = 0.5 * math.pi * f(a + halfw)  # t = 0 midpoint, weight pi/2
    prev = math.inf
    for level in range(max_level + 1):
        h = 0.5 ** level
        step = 1 if level == 0 else 2
        k = 1
        while True:
            offset, w = pair(k * h)
            if offset < 5e-305:
                break
            total += w * sample(offset)
            k += step
        est = halfw * h * total
        if level >= 2 and abs(est - prev) <= tol:
            return est
        prev = est
    raise ConvergenceError(
        f"tanh-sinh quadrature did not reach tol {tol} in {max_level} levels")


def brent_root(f: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-10, max_iter: int = 200) -> float:
    """Brent's method; keeps the bracket throughout, |root error| <= tol."""
    fa, fb = f(lo), f(hi)
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if fa * fb > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {fa:.3e}, {fb:.3e}")
    a, b = lo, hi
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        m = 0.5 * (c - b)
        tol1 = 2.0 * math.ulp(abs(b)) + 0.5 * tol
        if abs(m) <= tol1 or fb == 0.0:
            return b
        if abs(e) < tol1 or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, m)
        fb = f(b)
    raise ConvergenceError(f"Brent did not converge in {max_iter} iterations")


# ---------------------------------------------------------------------------
# defining integrals and closed forms

def _weighted_integral(alpha: float, d: float, tol: float = 1e-13) -> float:
    """int_0^{3pi/2} t^-alpha cos t (1 - 2t/(3pi))^d dt."""
    if d == 0.0:
        return quad_singular(lambda t: math.cos(t) * t ** (-alpha),
                             0.0, THREE_PI_OVER_2, tol)
    c = 2.0 / (3.0 * math.pi)
    return quad_singular(
        lambda t: math.cos(t) * t ** (-alpha) * (1.0 - c * t) ** d,
        0.0, THREE_PI_OVER_2, tol)


def K_closed(alpha: float) -> float:
    """Closed form of int_0^{3pi/2} t^-alpha cos t dt (Gamma-prefactored 2F3)."""
    return (gamma_fn(1.0 - alpha) / gamma_fn(2.0 - alpha)
            * THREE_PI_OVER_2 ** (1.0 - alpha)
            * hyp2f3(0.5 * (1.0 - alpha), 1.0 - 0.5 * alpha,
                     0.5, 0.5 * (2.0 - alpha), 0.5 * (3.0 - alpha), HYP_ARG))


def P_closed(alpha: float, d: float) -> float:
    """Closed form of the (1 - 2t/(3pi))^d - weighted integral."""
    if d < 0:
        raise ParameterDomainError(f"d >= 0 violated (d = {d})")
    return (gamma_fn(1.0 + d) * gamma_fn(1.0 - alpha) / gamma_fn(2.0 - alpha + d)
            * THREE_PI_OVER_2 ** (1.0 - alpha)
            * hyp2f3(0.5 * (1.0 - alpha), 1.0 - 0.5 * alpha,
                     0.5, 0.5 * (2.0 - alpha + d), 0.5 * (3.0 - alpha + d), HYP_ARG))


def hyp_route_fn(alpha: float, d: float) -> float:
    """The 2F3 factor whose zero in alpha defines alpha0_prime (prefactor > 0)."""
    return hyp2f3(0.5 * (1.0 - alpha), 1.0 - 0.5 * alpha,
                  0.5, 0.5 * (2.0 - alpha + d), 0.5 * (3.0 - alpha + d), HYP_ARG)


def h_corr(alpha: float, d: float, max_terms: int = 500) -> float:
    """Correction term h with P(alpha, d) = K(alpha) + h(alpha, d).

    Series with Gamma-ratio terms; the reciprocal Gammas advance by the exact
    two-step recurrence 1/Gamma(z+2) = 1/(z (z+1) Gamma(z)) from one seed each,
    truncated once five consecutive terms fall below 1e-17 of the partial sum.
    """
    if d < 0:
        raise ParameterDomainError(f"d >= 0 violated (d = {d})")
    if not alpha < 1:
        raise ParameterDomainError(f"alpha < 1 violated (alpha = {alpha})")
    if d == 0.0:
        return 0.0  # the two Gamma-ratio tracks coincide term by term
    pref = THREE_PI_OVER_2 ** (1.0 - alpha) * gamma_fn(1.0 - alpha)
    g1d = gamma_fn(1.0 + d)
    inv_gd = 1.0 / gamma_fn(2.0 - alpha + d)   # 1/Gamma(2 - alpha + d + 2k)
    inv_g0 = 1.0 / gamma_fn(2.0 - alpha)       # 1/Gamma(2 - alpha + 2k)
    poch = 1.0  # ((1-a)/2)_k (1-a/2)_k 4^k / ((1/2)_k k!) * z^k
    acc = 0.0
    small = 0
    for k in range(max_terms):
        term = poch * (g1d * inv_gd - inv_g0)
        acc += term
        if abs(term) <= 1e-17 * max(abs(acc), 1e-300):
            small += 1
            if small >= 5:
                return pref * acc
        else:
            small = 0
        poch *= ((0.5 * (1.0 - alpha) + k) * (1.0 - 0.5 * alpha + k) * 4.0 * HYP_ARG
                 / ((0.5 + k) * (k + 1.0)))
        zd = 2.0 - alpha + d + 2.0 * k
        inv_gd /= zd * (zd + 1.0)
        z0 = 2.0 - alpha + 2.0 * k
        inv_g0 /= z0 * (z0 + 1.0)
    raise ConvergenceError(f"h series did not converge within {max_terms} terms")


# ---------------------------------------------------------------------------
# constants

def alpha0(route: str = "quadrature-root") -> SpecialConstant:
    """Littlewood-Salem-Izumi constant, root in (0, 1) of the cosine integral."""
    if route == "quadrature-root":
        fn = lambda a: _weighted_integral(a, 0.0)
    elif route == "hyp2f3-root":
        fn = K_closed
    else:
        raise ParameterDomainError(f"unknown route {route!r}")
    root = brent_root(fn, 0.2, 0.4, tol=1e-12)
    return SpecialConstant("alpha0", root, route, abs(fn(root)), 1e-8)


def _root_in_alpha(fn: Callable[[float], float], d: float,
                   hi: float = 1.0 - 1e-6) -> float:
    """Root of fn over the extended alpha bracket [-0.6, hi); scans for a sign change."""
    lo = -0.6
    grid = [lo + (hi - lo) * i / 32 for i in range(33)]
    fprev = fn(grid[0])
    for x_prev, x in zip(grid, grid[1:]):
        fcur = fn(x)
        if fprev == 0.0:
            return x_prev
        if fprev * fcur < 0:
            return brent_root(fn, x_prev, x, tol=1e-12)
        fprev = fcur
    raise RootOutOfRangeError(
        f"alpha0_prime: no sign change in alpha in [{lo}, {hi}] for d = {d}")


def alpha0_prime(d: float, route: str = "quadrature-root",
                 cross_check_tol: float = 1e-8) -> SpecialConstant:
    """Root alpha0'(d) of the weighted integral; d = b - c >= 0.

    Always solves both the quadrature route and the 2F3 route and requires
    them to agree within cross_check_tol.  The root leaves (0, 1) beyond
    d = 1 - alpha0; the bracket extends to -0.6 before reporting
    RootOutOfRangeError.
    """
    if d < 0:
        raise ParameterDomainError(f"d >= 0 violated (d = {d})")
    quad_fn = lambda a: _weighted_integral(a, d)
    hyp_fn = lambda a: hyp_route_fn(a, d)
    # the root never exceeds alpha0 for d >= 0; capping the quadrature scan at
    # 0.9 keeps it clear of the nearly non-integrable t^(alpha-1) regime
    root_q = _root_in_alpha(quad_fn, d, hi=0.9)
    root_h = _root_in_alpha(hyp_fn, d)
    if abs(root_q - root_h) > cross_check_tol:
        raise ConvergenceError(
            f"alpha0_prime routes disagree at d = {d}: {root_q} vs {root_h}")
    if route == "quadrature-root":
        return SpecialConstant("alpha0_prime", root_q, route, abs(quad_fn(root_q)), 1e-8)
    if route == "hyp2f3-root":
        return SpecialConstant("alpha0_prime", root_h, route, abs(hyp_fn(root_h)), 1e-8)
    raise ParameterDomainError(f"unknown route {route!r}")


def expansion_fit(ds: Sequence[float] | None = None
                  ) -> tuple[SpecialConstant, SpecialConstant]:
    """Least-squares cubic fit of alpha0_prime(d) on d in {0, 0.02, ..., 0.2}.

    Returns (beta0, beta1): the negated linear and quadratic coefficients of
    alpha0' = alpha0 - beta0 d - beta1 d^2 + O(d^3).
    """
    if ds is None:
        ds = [0.02 * i for i in range(11)]
    ds = np.asarray(list(ds), dtype=np.float64)
    if ds.size < 4:
        raise ParameterDomainError("need at least 4 fit points for a cubic")
    roots = np.array([alpha0_prime(float(d)).value for d in ds])
    scale = float(ds.max()) or 1.0
    design = np.vander(ds / scale, 4, increasing=True)
    coef, *_ = np.linalg.lstsq(design, roots, rcond=None)
    coef = coef / scale ** np.arange(4)
    fit = np.vander(ds, 4, increasing=True) @ coef
    resid = float(np.max(np.abs(fit - roots)))
    beta0 = SpecialConstant("beta0", float(-coef[1]), "expansion-fit", resid, 1e-3)
    beta1 = SpecialConstant("beta1", float(-coef[2]), "expansion-fit", resid, 1e-3)
    return beta0, beta1


def bessel_j(nu: float, t: float, max_terms: int = 500) -> float:
    """Bessel J_nu(t) by the ascending series; validated for nu > -1, 0 <= t <= 30."""
    if nu <= -1:
        raise ParameterDomainError(f"nu > -1 violated (nu = {nu})")
    if t < 0 or t > 30:
        raise ParameterDomainError(f"t = {t} outside the validated range [0, 30]")
    if t == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0 else math.inf
    term = (0.5 * t) ** nu / gamma_fn(nu + 1.0)
    acc = term
    q = -0.25 * t * t
    small = 0
    for m in range(max_terms):
        term *= q / ((m + 1.0) * (nu + m + 1.0))
        acc += term
        if abs(term) <= 1e-17 * max(abs(acc), 1e-300):
            small += 1
            if small >= 5:
                return acc
        else:
            small = 0
    raise ConvergenceError(f"Bessel series did not converge within {max_terms} terms")


def bessel_zero(nu: float, m: int) -> float:
    """m-th positive zero of J_nu (m in {1, 2}), by scan + Brent on the series."""
    if m not in (1, 2):
        raise ParameterDomainError(f"m must be 1 or 2, got {m}")
    if nu <= -1:
        raise ParameterDomainError(f"nu > -1 violated (nu = {nu})")
    f = lambda t: bessel_j(nu, t)
    step = 0.05
    t_prev = step
    f_prev = f(t_prev)
    found = 0
    k = 2
    while t_prev < 30.0:
        t_cur = k * step
        f_cur = f(t_cur)
        if f_prev == 0.0:
            found += 1
            if found == m:
                return t_prev
        elif f_prev * f_cur < 0:
            found += 1
            if found == m:
                return brent_root(f, t_prev, t_cur, tol=1e-12)
        t_prev, f_prev = t_cur, f_cur
        k += 1
    raise RootOutOfRangeError(f"zero {m} of J_{nu} not located below t = 30")


def lambda_prime() -> SpecialConstant:
    """Gegenbauer positivity threshold lambda' = alpha' + 1/2.

    alpha' solves int_0^{j_{a,2}} t^-a J_a(t) dt = 0 over the negative-order
    region (order > -1), the upper limit moving with a.
    """
    def G(a: float) -> float:
        j2 = bessel_zero(a, 2)
        return quad_singular(lambda t: t ** (-a) * bessel_j(a, t), 0.0, j2, tol=1e-13)

    root = brent_root(G, -0.35, -0.15, tol=1e-12)
    return SpecialConstant("lambda_prime", root + 0.5, "bessel-quadrature-root",
                           abs(G(root)), 1e-8)
