"""Orthogonal-polynomial sums: Chebyshev/Gegenbauer/Jacobi recurrences, the
Fejer-type Gegenbauer partial sums, and the para-orthogonal (OPUC) coefficient
families from the two-factor binomial generating function

    (1 - omega z)^-(b+1) (1 - z)^-(b+1) = sum_k F_k^b(omega) z^k .

Everything is recurrence-based; no closed-form hypergeometric evaluation is
used for polynomial values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ParameterDomainError
from .seqkit import CoefficientSequence, CriterionReport, CRITERION_TOL


@dataclass(frozen=True)
class SeriesCoefficients:
    coeffs: tuple[float, ...]
    truncation: int
    params: Mapping[str, float] = field(default_factory=dict)
    tail_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(v) for v in self.coeffs))
        object.__setattr__(self, "params", dict(self.params))
        if any(not math.isfinite(v) for v in self.coeffs):
            raise ParameterDomainError("series coefficients must be finite")
        if self.tail_bound < 0:
            raise ParameterDomainError("tail_bound must be >= 0")


def chebyshev_T(k: int, t: float) -> float:
    """Chebyshev T_k(t) by the three-term recurrence."""
    if k < 0:
        raise ParameterDomainError("k must be >= 0")
    if k == 0:
        return 1.0
    prev, cur = 1.0, t
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur


def gegenbauer_C(k: int, lam: float, x) -> float | np.ndarray:
    """Gegenbauer C_k^lam(x); lam > 0.  Accepts scalar or array x."""
    if k < 0:
        raise ParameterDomainError("k must be >= 0")
    if lam <= 0:
        raise ParameterDomainError(f"lam > 0 violated (lam = {lam})")
    xs = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(xs)
    if k == 0:
        return float(prev) if xs.ndim == 0 else prev
    cur = 2.0 * lam * xs
    for j in range(1, k):
        prev, cur = cur, (2.0 * (j + lam) * xs * cur - (j + 2.0 * lam - 1.0) * prev) / (j + 1.0)
    return float(cur) if xs.ndim == 0 else cur


def gegenbauer_C1(k: int, lam: float) -> float:
    """C_k^lam(1) = (2 lam)_k / k!."""
    acc = 1.0
    for j in range(k):
        acc *= (2.0 * lam + j) / (j + 1.0)
    return acc


def jacobi_P(k: int, a: float, b: float, x: float) -> float:
    """Jacobi P_k^{(a,b)}(x) by the standard three-term recurrence; a, b > -1."""
    if k < 0:
        raise ParameterDomainError("k must be >= 0")
    if a <= -1 or b <= -1:
        raise ParameterDomainError("Jacobi parameters must exceed -1")
    if k == 0:
        return 1.0
    prev = 1.0
    cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for j in range(2, k + 1):
        c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0)
        c2 = (2.0 * j + a + b - 1.0) * (a * a - b * b)
        c3 = (2.0 * j + a + b - 1.0) * (2.0 * j + a + b) * (2.0 * j + a + b - 2.0)
        c4 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b)
        prev, cur = cur, ((c2 + c3 * x) * cur - c4 * prev) / c1
    return cur


def chebyshev_qk_sum(n: int, alpha: float, beta: float, lam: float, mu: float,
                     t: float) -> float:
    """T_0(t) + T_1(t) + sum_{k=2}^n T_k(t) / ((k+alpha)^lam (k+beta)^mu).

    Built directly from the Chebyshev recurrence; equals the corresponding
    cosine sum at theta = arccos t.
    """
    if n < 1:
        raise ParameterDomainError("n must be >= 1")
    if alpha < 0 or beta < 0:
        raise ParameterDomainError("alpha and beta must be >= 0")
    if abs(t) >= 1:
        raise ParameterDomainError(f"|t| < 1 violated (t = {t})")
    prev, cur = 1.0, t
    acc = prev + cur
    for k in range(2, n + 1):
        prev, cur = cur, 2.0 * t * cur - prev
        acc += cur / ((k + alpha) ** lam * (k + beta) ** mu)
    return acc


def gegenbauer_fejer_sum(n: int, lam: float, x: float) -> float:
    """sum_{k=0}^n C_k^lam(x)."""
    if n < 0:
        raise ParameterDomainError("n must be >= 0")
    if lam <= 0:
        raise ParameterDomainError(f"lam > 0 violated (lam = {lam})")
    if abs(x) >= 1:
        raise ParameterDomainError(f"|x| < 1 violated (x = {x})")
    prev = 1.0
    if n == 0:
        return prev
    cur = 2.0 * lam * x
    acc = prev + cur
    for j in range(1, n):
        prev, cur = cur, (2.0 * (j + lam) * x * cur - (j + 2.0 * lam - 1.0) * prev) / (j + 1.0)
        acc += cur
    return acc


def gegenbauer_normalized_sum(a_seq: CoefficientSequence | Sequence[float],
                              n: int, lam: float, x: float) -> float:
    """sum_{k=0}^n a_k C_k^lam(x) / C_k^lam(1).

    a_seq supplies a_0..a_n (a CoefficientSequence is read in its stored
    order); pass all ones for the plain normalized Fejer-type sum.
    """
    values = a_seq.values if isinstance(a_seq, CoefficientSequence) else tuple(a_seq)
    if n < 0 or n > len(values) - 1:
        raise ParameterDomainError(f"n = {n} outside the supplied coefficients")
    if lam <= 0:
        raise ParameterDomainError(f"lam > 0 violated (lam = {lam})")
    if abs(x) >= 1:
        raise ParameterDomainError(f"|x| < 1 violated (x = {x})")
    prev = 1.0
    acc = values[0] * prev
    if n == 0:
        return acc
    cur = 2.0 * lam * x
    norm = 2.0 * lam  # C_k^lam(1) advanced alongside the polynomial
    acc += values[1] * cur / norm
    for j in range(1, n):
        prev, cur = cur, (2.0 * (j + lam) * x * cur - (j + 2.0 * lam - 1.0) * prev) / (j + 1.0)
        norm *= (2.0 * lam + j) / (j + 1.0)
        acc += values[j + 1] * cur / norm
    return acc


def scan_normalized_gegenbauer(lam: float, n_max: int, x_grid: np.ndarray
                               ) -> tuple[int, float, float] | None:
    """First (n, x, value) with a negative normalized all-ones sum, or None.

    Used to exhibit that the sums are not bounded below once lam drops under
    the positivity threshold; scans n upward so the minimal failing n returns.
    """
    xs = np.asarray(x_grid, dtype=np.float64)
    prev = np.ones_like(xs)
    acc = prev.copy()
    cur = 2.0 * lam * xs
    norm = 2.0 * lam
    acc = acc + cur / norm
    for n in range(1, n_max + 1):
        if n >= 2:
            j = n - 1
            prev, cur = cur, (2.0 * (j + lam) * xs * cur - (j + 2.0 * lam - 1.0) * prev) / (j + 1.0)
            norm *= (2.0 * lam + j) / (j + 1.0)
            acc = acc + cur / norm
        i = int(np.argmin(acc))
        if acc[i] < 0.0:
            return n, float(xs[i]), float(acc[i])
    return None


def opuc_coeffs(b: float, omega: float, N: int) -> SeriesCoefficients:
    """F_0..F_N of (1 - omega z)^-(b+1) (1 - z)^-(b+1) by Cauchy product.

    Each binomial factor's coefficients come from the ratio recurrence
    c_{m+1} = c_m (b+1+m)/(m+1) * arg; the tail bound is the geometric-ratio
    estimate of the first omitted coefficient.
    """
    if b <= -1:
        raise ParameterDomainError(f"b > -1 violated (b = {b})")
    if N < 0:
        raise ParameterDomainError("N must be >= 0")
    fa = np.empty(N + 1)
    fb = np.empty(N + 1)
    fa[0] = fb[0] = 1.0
    for m in range(N):
        ratio = (b + 1.0 + m) / (m + 1.0)
        fa[m + 1] = fa[m] * ratio * omega
        fb[m + 1] = fb[m] * ratio
    F = np.convolve(fa, fb)[: N + 1]
    if N >= 1 and F[N - 1] != 0.0:
        tail = abs(F[N] * (F[N] / F[N - 1]))
    else:
        tail = 0.0
    return SeriesCoefficients(tuple(F), N, {"b": b, "omega": omega}, tail)


def opuc_log_route_cumulative(b: float, omega: float, N: int) -> np.ndarray:
    """Cumulative sums via psi = (1-z)^-(b+2) (1-omega z)^-(b+1) = exp(g).

    g'(z) has coefficients (b+2) + (b+1) omega^{m+1}, all positive for
    b > -1/2 and |omega| < 1, so exp(g) keeps positive coefficients; those
    coefficients are exactly the cumulative sums of the F_k.
    """
    gp = np.empty(N + 1)  # m g_m = (b+2) + (b+1) omega^m, m >= 1
    pw = 1.0
    for m in range(1, N + 1):
        pw *= omega
        gp[m] = (b + 2.0) + (b + 1.0) * pw
    psi = np.empty(N + 1)
    psi[0] = 1.0
    for n in range(1, N + 1):
        psi[n] = float(np.dot(gp[1:n + 1], psi[n - 1::-1])) / n
    return psi


def opuc_cumulative_positive(b: float, omega: float, N: int) -> CriterionReport:
    """Positivity of all cumulative sums sum_{k<=n} F_k, n <= N, both routes.

    Route one takes prefix sums of the Cauchy-product coefficients; route two
    builds them as exp of the integrated logarithmic derivative.  Both must
    agree on positivity (they agree numerically to ~1e-10).
    """
    if not b > -0.5:
        raise ParameterDomainError(f"b > -1/2 violated (b = {b})")
    if not abs(omega) < 1:
        raise ParameterDomainError(f"|omega| < 1 violated (omega = {omega})")
    F = np.asarray(opuc_coeffs(b, omega, N).coeffs)
    cum = np.cumsum(F)
    psi = opuc_log_route_cumulative(b, omega, N)
    margin = float(min(cum.min(), psi.min()))
    violation = None
    for n in range(N + 1):
        if cum[n] < -CRITERION_TOL or psi[n] < -CRITERION_TOL:
            violation = n
            break
    return CriterionReport(violation is None, violation, margin,
                           tuple(float(v) for v in cum))


def jacobi_sum_check(n: int, lam_p: float, delta: float, a: float, b: float,
                     x: float, z_angle: float) -> float:
    """|sum_k ((1+lam_p)_{n-k}/(1+delta)_{n-k}) ((1+lam_p)_k/(1+delta)_k)
    (P_k^{(a,b)}(x)/P_k^{(a,b)}(1)) z^k| on |z| = 1."""
    if n < 0:
        raise ParameterDomainError("n must be >= 0")
    if a <= -1 or b <= -1:
        raise ParameterDomainError("Jacobi parameters must exceed -1")
    if delta <= -1 or lam_p < 0:
        raise ParameterDomainError("need delta > -1 and lam_p >= 0")
    if abs(x) > 1:
        raise ParameterDomainError(f"|x| <= 1 violated (x = {x})")
    w = np.empty(n + 1)
    w[0] = 1.0
    for j in range(n):
        w[j + 1] = w[j] * (1.0 + lam_p + j) / (1.0 + delta + j)
    z = complex(math.cos(z_angle), math.sin(z_angle))
    acc = 0.0 + 0.0j
    zp = 1.0 + 0.0j
    norm = 1.0  # P_k(1) = (a+1)_k / k!
    prev = 1.0
    cur = None
    for k in range(n + 1):
        if k == 0:
            pk = 1.0
        elif k == 1:
            cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
            norm *= (a + 1.0)
            pk = cur
        else:
            c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
            c2 = (2.0 * k + a + b - 1.0) * (a * a - b * b)
            c3 = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0)
            c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
            prev, cur = cur, ((c2 + c3 * x) * cur - c4 * prev) / c1
            norm *= (a + k) / k
            pk = cur
        acc += w[n - k] * w[k] * (pk / norm) * zp
        zp *= z
    return abs(acc)
