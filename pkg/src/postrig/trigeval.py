"""Trigonometric sum evaluation.

The central object is :class:`TrigPolynomial`,

    f(theta) = a0/2 + sum_j cc[j] * cos(nu_j * theta) + sum_j sc[j] * sin(nu_j * theta)

with frequencies nu_j = stride*(j + j0) + shift.  In the standard layout
(shift = 0) the constant sits in a0 and the coefficient lists start at k = 1
(j0 = 1); when shift > 0 there is no constant term and the lists start at
k = 0 (j0 = 0).  This covers the plain partial Fourier sums, the phase-shifted
sums cos((k+lam)*theta) / sin((k+mu)*theta), and the stride-2 shape
cos((2k+1/2)*theta).

All evaluators route through the Clenshaw kernel (`postrig.kernels`); the
shift is peeled off with the two angle-addition identities, so a shifted sum
is computed from two unshifted kernel sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterDomainError, SizeError
from .kernels import pair_sums


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite trigonometric sum; see the module docstring for the semantics."""

    a0: float = 0.0
    cos_coeffs: tuple[float, ...] = ()
    sin_coeffs: tuple[float, ...] = ()
    shift: float = 0.0
    stride: int = 1

    def __post_init__(self):
        object.__setattr__(self, "cos_coeffs", tuple(float(v) for v in self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", tuple(float(v) for v in self.sin_coeffs))
        object.__setattr__(self, "a0", float(self.a0))
        if self.a0 == 0.0 and not self.cos_coeffs and not self.sin_coeffs:
            raise ParameterDomainError("empty polynomial: a0 = 0 and no coefficients")
        for v in (self.a0, *self.cos_coeffs, *self.sin_coeffs):
            if not math.isfinite(v):
                raise ParameterDomainError("coefficients must be finite")
        if self.stride not in (1, 2):
            raise ParameterDomainError(f"stride must be 1 or 2, got {self.stride}")
        if not (0.0 <= self.shift < 1.0):
            raise ParameterDomainError(f"shift must lie in [0, 1), got {self.shift}")

    @property
    def index_start(self) -> int:
        """First coefficient index k: 1 in the standard layout, 0 when shifted."""
        return 0 if self.shift != 0.0 else 1

    def frequencies(self, kind: str) -> list[float]:
        coeffs = self.cos_coeffs if kind == "cos" else self.sin_coeffs
        k0 = self.index_start
        return [self.stride * (j + k0) + self.shift for j in range(len(coeffs))]

    def values(self, theta) -> np.ndarray:
        """Evaluate at an array of angles."""
        th = np.asarray(theta, dtype=np.float64)
        out = np.full(th.shape, 0.5 * self.a0)
        k0 = self.index_start
        x = th if self.stride == 1 else self.stride * th
        for kind, coeffs in (("cos", self.cos_coeffs), ("sin", self.sin_coeffs)):
            if not coeffs:
                continue
            if k0 == 0:
                head, body = coeffs[0], np.asarray(coeffs[1:])
            else:
                head, body = 0.0, np.asarray(coeffs)
            C, S = pair_sums(body, x)
            if k0 == 0:
                C = C + head  # cos(0*x) = 1 term; its sine partner vanishes
            if self.shift == 0.0:
                out = out + (C if kind == "cos" else S)
            else:
                ph = self.shift * th
                cph, sph = np.cos(ph), np.sin(ph)
                if kind == "cos":
                    out = out + cph * C - sph * S
                else:
                    out = out + sph * C + cph * S
        return out

    def value(self, theta: float) -> float:
        return float(self.values(np.array([theta]))[0])

    def derivative_value(self, theta: float) -> float:
        """d/dtheta at a point, term by term (used for endpoint slopes)."""
        k0 = self.index_start
        acc = 0.0
        for j, c in enumerate(self.cos_coeffs):
            nu = self.stride * (j + k0) + self.shift
            acc -= c * nu * math.sin(nu * theta)
        for j, s in enumerate(self.sin_coeffs):
            nu = self.stride * (j + k0) + self.shift
            acc += s * nu * math.cos(nu * theta)
        return acc


def sine_poly(coeffs: Sequence[float]) -> TrigPolynomial:
    """sum_{k>=1} coeffs[k-1] sin(k theta)."""
    return TrigPolynomial(sin_coeffs=tuple(coeffs))


def cosine_poly(a0: float, coeffs: Sequence[float] = ()) -> TrigPolynomial:
    """a0/2 + sum_{k>=1} coeffs[k-1] cos(k theta)."""
    return TrigPolynomial(a0=a0, cos_coeffs=tuple(coeffs))


def shifted_poly(coeffs: Sequence[float], shift: float, kind: str,
                 stride: int = 1) -> TrigPolynomial:
    """sum_{k>=0} coeffs[k] trig((stride*k + shift) theta) for trig = cos|sin.

    shift = 0 folds into the standard layout (e0 becomes the constant for
    cosine sums and drops for sine sums), so the reduction to the unshifted
    evaluators is exact.
    """
    e = tuple(float(v) for v in coeffs)
    if not e:
        raise SizeError("need at least one coefficient")
    if kind not in ("cosine", "sine"):
        raise ParameterDomainError(f"kind must be cosine or sine, got {kind!r}")
    if shift == 0.0:
        if kind == "cosine":
            return TrigPolynomial(a0=2.0 * e[0], cos_coeffs=e[1:], stride=stride)
        return TrigPolynomial(sin_coeffs=e[1:], stride=stride) if len(e) > 1 \
            else TrigPolynomial(a0=0.0, sin_coeffs=(0.0,), stride=stride)
    if kind == "cosine":
        return TrigPolynomial(cos_coeffs=e, shift=shift, stride=stride)
    return TrigPolynomial(sin_coeffs=e, shift=shift, stride=stride)


def eval_sine_sum(coeffs: Sequence[float], theta) -> float | np.ndarray:
    """sum_{k=1}^n coeffs[k-1] sin(k theta), Clenshaw-evaluated."""
    arr = np.asarray(coeffs, dtype=np.float64)
    th = np.asarray(theta, dtype=np.float64)
    _, S = pair_sums(arr, np.atleast_1d(th))
    return float(S[0]) if th.ndim == 0 else S


def eval_cosine_sum(a0: float, coeffs: Sequence[float], theta) -> float | np.ndarray:
    """a0/2 + sum_{k=1}^n coeffs[k-1] cos(k theta)."""
    arr = np.asarray(coeffs, dtype=np.float64)
    th = np.asarray(theta, dtype=np.float64)
    C, _ = pair_sums(arr, np.atleast_1d(th))
    out = 0.5 * a0 + C
    return float(out[0]) if th.ndim == 0 else out


def eval_shifted_sum(poly: TrigPolynomial, theta, kind: str) -> float | np.ndarray:
    """Evaluate a phase-shifted sum sum_k e_k trig((stride*k + shift) theta).

    ``kind`` names which trig family the polynomial's coefficients belong to
    and must match how the polynomial was built (see :func:`shifted_poly`).
    """
    if kind not in ("cosine", "sine"):
        raise ParameterDomainError(f"kind must be cosine or sine, got {kind!r}")
    if kind == "cosine" and not (poly.cos_coeffs or poly.a0):
        raise ParameterDomainError("polynomial carries no cosine part")
    if kind == "sine" and not poly.sin_coeffs:
        raise ParameterDomainError("polynomial carries no sine part")
    th = np.asarray(theta, dtype=np.float64)
    out = poly.values(np.atleast_1d(th))
    return float(out[0]) if th.ndim == 0 else out


def qk_weight(k: int, alpha: float, beta: float, lam: float, mu: float) -> float:
    """(k+alpha)^lam * (k+beta)^mu."""
    return (k + alpha) ** lam * (k + beta) ** mu


def eval_halfangle_product_derivative(n: int, alpha: float, beta: float, lam: float,
                              mu: float, theta: float) -> float:
    """Analytic d/dtheta of cos(theta/2) * (1 + cos(theta) + sum_{k=2}^n cos(k theta)/(k w_k)).

    Returns -(1/2) sin(theta/2) C(theta) - cos(theta/2) S(theta) with
    C = 1 + cos(theta) + sum cos(k theta)/(k w_k) and
    S = sin(theta) + sum sin(k theta)/w_k, w_k = (k+alpha)^lam (k+beta)^mu.
    """
    if n < 1:
        raise ParameterDomainError("n must be >= 1")
    w = [qk_weight(k, alpha, beta, lam, mu) for k in range(2, n + 1)]
    c_coeffs = [1.0] + [1.0 / (k * wk) for k, wk in zip(range(2, n + 1), w)]
    s_coeffs = [1.0] + [1.0 / wk for wk in w]
    C = eval_cosine_sum(2.0, c_coeffs, theta)
    S = eval_sine_sum(s_coeffs, theta)
    return -0.5 * math.sin(0.5 * theta) * C - math.cos(0.5 * theta) * S


def halfangle_product_negated_poly(n: int, alpha: float, beta: float, lam: float,
                           mu: float) -> TrigPolynomial:
    """The negated half-angle-product derivative as a shift-1/2 sine polynomial.

    Using sin(A)cos(B)/cos(A)sin(B) product identities, the negated derivative
    collapses to sum_{m=0}^n E_m sin((m + 1/2) theta), which the positivity
    certifier can bound directly.
    """
    if n < 1:
        raise ParameterDomainError("n must be >= 1")
    c = [1.0, 1.0] + [1.0 / (k * qk_weight(k, alpha, beta, lam, mu))
                      for k in range(2, n + 1)] + [0.0]
    s = [0.0, 1.0] + [1.0 / qk_weight(k, alpha, beta, lam, mu)
                      for k in range(2, n + 1)] + [0.0]
    e = [0.5 * c[0] - 0.25 * c[1] + 0.5 * s[1]]
    for m in range(1, n + 1):
        e.append(0.25 * (c[m] - c[m + 1]) + 0.5 * (s[m] + s[m + 1]))
    return TrigPolynomial(sin_coeffs=tuple(e), shift=0.5, stride=1)


def fejer_sigma(k: int, x: float) -> float:
    """sigma_k(x) = sum_{j=1}^k (k - j + 1) sin(j x)."""
    if k < 1:
        raise ParameterDomainError("k must be >= 1")
    return math.fsum((k - j + 1) * math.sin(j * x) for j in range(1, k + 1))


def fejer_h(k: int, x: float) -> float:
    """h_k(x) = sin(x) + ... + sin((k-1)x) + sin(kx)/2."""
    if k < 1:
        raise ParameterDomainError("k must be >= 1")
    return math.fsum(math.sin(j * x) for j in range(1, k)) + 0.5 * math.sin(k * x)


def abel_resum(b_seq: Iterable[float], c_seq: Iterable[float]) -> float:
    """Right-hand side of the summation-by-parts identity.

    sum_k b_k c_k = sum_{k=0}^{n-1} (b_k - b_{k+1}) * (sum_{j<=k} c_j)
                    + b_n * sum_{k<=n} c_k
    """
    b = [float(v) for v in b_seq]
    c = [float(v) for v in c_seq]
    if len(b) != len(c):
        raise SizeError(f"length mismatch: {len(b)} vs {len(c)}")
    if not b:
        raise SizeError("need at least one term")
    acc = 0.0
    prefix = 0.0
    for k in range(len(b) - 1):
        prefix += c[k]
        acc += (b[k] - b[k + 1]) * prefix
    prefix += c[-1]
    return acc + b[-1] * prefix
