"""Shared naive oracles for the test suite.

These deliberately avoid the library's evaluation paths: plain term-by-term
summation with math.fsum, Fraction-based rising factorials, and a discrete
Cauchy contour sum, so each dual-route test really has two independent sides.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest


def naive_trig_value(poly, theta: float) -> float:
    """Term-by-term fsum evaluation of a TrigPolynomial."""
    terms = [0.5 * poly.a0]
    k0 = 0 if poly.shift != 0.0 else 1
    for j, c in enumerate(poly.cos_coeffs):
        nu = poly.stride * (j + k0) + poly.shift
        terms.append(c * math.cos(nu * theta))
    for j, s in enumerate(poly.sin_coeffs):
        nu = poly.stride * (j + k0) + poly.shift
        terms.append(s * math.sin(nu * theta))
    return math.fsum(terms)


def naive_sine_sum(coeffs, theta: float) -> float:
    return math.fsum(c * math.sin((k + 1) * theta) for k, c in enumerate(coeffs))


def naive_cosine_sum(a0, coeffs, theta: float) -> float:
    return 0.5 * a0 + math.fsum(c * math.cos((k + 1) * theta)
                                for k, c in enumerate(coeffs))


def poch_fraction(x: Fraction, k: int) -> Fraction:
    """Exact rising factorial for rational x."""
    acc = Fraction(1)
    for j in range(k):
        acc *= x + j
    return acc


def contour_coeffs(fn, N: int, radius: float = 0.9, nodes: int = 512) -> np.ndarray:
    """Power-series coefficients of fn by a discrete Cauchy integral.

    Averages fn over `nodes` scaled roots of unity; the radius keeps the
    r^-k roundoff amplification moderate for k up to N.
    """
    ang = 2.0 * np.pi * np.arange(nodes) / nodes
    z = radius * np.exp(1j * ang)
    vals = np.array([fn(zz) for zz in z])
    ks = np.arange(N + 1)
    out = np.empty(N + 1)
    for k in ks:
        out[k] = (vals * np.exp(-1j * k * ang)).mean().real / radius ** k
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
