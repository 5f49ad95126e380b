"""Single-panel collocation estimates for oscillatory integrals.

A panel estimate of ``int_a0^b0 f(x) exp(i g(x)) dx`` is obtained by
solving the first-order ODE

    p'(x) + i g'(x) p(x) = f(x)

with a k-point Chebyshev spectral collocation: sample f and g at the
mapped extremal nodes, differentiate the g samples spectrally (the caller
never supplies g'), form the collocation matrix D + i diag(g'), solve it
with a truncated SVD or rank-revealing QR, and return

    p(b0) exp(i g(b0)) - p(a0) exp(i g(a0)).

The truncation makes the solve well behaved even when the matrix is
numerically singular, which happens whenever g' is small on the panel; the
near-null direction corresponds to exp(-i g) and contributes (almost)
nothing to the antiderivative difference, so the estimate stays accurate
at arbitrarily low frequency and across stationary points of g.  No
per-panel error estimate is produced; error control belongs entirely to
the adaptive driver.

cos- and sin-kernel integrals reuse the exp-kernel machinery: for real f
they are the real and imaginary parts of the exp-kernel estimate, and for
complex f a second solve against conj(f) supplies the estimate for the
opposite-sign phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import chebyshev, linalg

KERNELS = ("exp", "cos", "sin")

# Inward shift, as a fraction of the panel width, used to re-evaluate an
# endpoint whose sample came back non-finite (integrable endpoint
# singularities such as x**-0.5 at 0).
NUDGE_FACTOR = 2.0 ** -46


class PanelError(Exception):
    """A panel estimate could not be produced (bad samples or solver)."""


@dataclass(frozen=True)
class Integrand:
    """The pair (f, g) plus the oscillatory kernel.

    ``f`` maps a float ndarray to complex (or real) values, ``g`` maps a
    float ndarray to real values; both must accept vector arguments and be
    safe to call concurrently.  ``kernel`` selects exp(i g), cos(g) or
    sin(g).
    """

    f: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    kernel: str = "exp"

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")


@dataclass(frozen=True)
class LevinLocalResult:
    """One panel estimate with solver diagnostics."""

    value: complex
    rank_used: int
    p_endpoints: tuple
    norm_a: float


def sample_integrand(integrand: Integrand, xs: np.ndarray, a0: float, b0: float,
                     nudge: bool = True):
    """Evaluate f and g at the panel nodes, repairing non-finite samples.

    A node where f or g is non-finite is re-evaluated once, shifted toward
    the panel interior by NUDGE_FACTOR*(b0-a0).  Returns (fs, gs, nevals);
    raises PanelError if any sample is still non-finite (or immediately,
    when nudging is disabled).
    """
    with np.errstate(all="ignore"):
        fs = np.asarray(integrand.f(xs), dtype=np.complex128)
        gs = np.asarray(integrand.g(xs), dtype=np.float64)
    nevals = xs.shape[0]
    bad = ~(np.isfinite(fs) & np.isfinite(gs))
    if bad.any():
        if not nudge:
            raise PanelError(f"non-finite sample in [{a0}, {b0}] (nudge disabled)")
        delta = NUDGE_FACTOR * (b0 - a0)
        center = 0.5 * (a0 + b0)
        idx = np.nonzero(bad)[0]
        moved = xs[idx] + np.where(xs[idx] <= center, delta, -delta)
        with np.errstate(all="ignore"):
            fs[idx] = np.asarray(integrand.f(moved), dtype=np.complex128)
            gs[idx] = np.asarray(integrand.g(moved), dtype=np.float64)
        nevals += idx.shape[0]
        if not (np.all(np.isfinite(fs[idx])) and np.all(np.isfinite(gs[idx]))):
            raise PanelError(f"non-finite sample in [{a0}, {b0}] after nudge")
    return fs, gs, nevals


def weighted_value(p_endpoints, g_endpoints, kernel: str, conj_p_endpoints=None) -> complex:
    """Assemble the panel value for the requested kernel.

    ``p_endpoints`` are (p(a0), p(b0)) from the exp-kernel solve and
    ``g_endpoints`` the sampled (g(a0), g(b0)); the oscillator phases are
    taken from the sampled g values, consistent with the collocation.  For
    cos/sin with real f the result is the real/imaginary part of the
    exp-kernel estimate.  For complex f, ``conj_p_endpoints`` must hold the
    endpoints of the companion solve against conj(f), from which the
    opposite-phase estimate E(-g) = conj(E_conj(g)) is assembled; then
    cos -> (E(g)+E(-g))/2 and sin -> (E(g)-E(-g))/(2i).
    """
    ea = np.exp(1j * g_endpoints[0])
    eb = np.exp(1j * g_endpoints[1])
    value = p_endpoints[1] * eb - p_endpoints[0] * ea
    if kernel == "exp":
        return complex(value)
    if conj_p_endpoints is None:
        return complex(value.real) if kernel == "cos" else complex(value.imag)
    value_neg = np.conj(conj_p_endpoints[1] * eb - conj_p_endpoints[0] * ea)
    if kernel == "cos":
        return complex(0.5 * (value + value_neg))
    return complex((value - value_neg) / 2j)


def _solve_panel(fs, gs, diff, half, solver, threshold_scale, want_conj):
    """Collocation solve on one panel given its samples.

    ``diff`` is the reference differentiation matrix and ``half`` the panel
    half-width; the mapped matrix is diff/half.  Returns
    (p, p_conj_or_None, rank, norm_proxy).
    """
    gprime = (diff @ gs) / half
    a = (diff / half).astype(np.complex128)
    k = a.shape[0]
    a.flat[:: k + 1] += 1j * gprime
    try:
        if solver == "qr":
            factors = linalg.qr_factor(a)
            norm_proxy = float(factors.rdiag[0])
            thr = threshold_scale * norm_proxy
            if thr <= 0.0:
                thr = np.finfo(np.float64).tiny
            p, rank = linalg.qr_apply(factors, fs, thr)
            pc = linalg.qr_apply(factors, np.conj(fs), thr)[0] if want_conj else None
        elif solver == "svd":
            factors = linalg.svd(a)
            norm_proxy = float(factors.sigma[0])
            thr = threshold_scale * norm_proxy
            if thr <= 0.0:
                thr = np.finfo(np.float64).tiny
            p, rank = linalg.tsvd_apply(factors, fs, thr)
            pc = linalg.tsvd_apply(factors, np.conj(fs), thr)[0] if want_conj else None
        else:
            raise ValueError(f"solver must be 'qr' or 'svd', got {solver!r}")
    except linalg.LinalgError as exc:
        raise PanelError(str(exc)) from exc
    return p, pc, rank, norm_proxy


def levin_panel(integrand: Integrand, a0: float, b0: float,
                grid: chebyshev.ChebGrid | None = None, solver: str = "qr",
                threshold_scale: float = linalg.EPS0,
                nudge: bool = True) -> LevinLocalResult:
    """Estimate the integral of f * kernel(g) over a single panel [a0, b0].

    ``threshold_scale`` is the relative truncation level: singular
    directions (or R-diagonal entries on the QR path) below
    threshold_scale times the matrix-norm proxy are dropped.
    """
    if not (np.isfinite(a0) and np.isfinite(b0) and a0 < b0):
        raise ValueError(f"need finite a0 < b0, got [{a0}, {b0}]")
    if grid is None:
        grid = chebyshev.grid()
    half = 0.5 * (b0 - a0)
    xs = (a0 + half) + half * grid.nodes
    xs[0] = a0
    xs[-1] = b0
    fs, gs, _ = sample_integrand(integrand, xs, a0, b0, nudge)
    want_conj = integrand.kernel != "exp" and bool(np.any(fs.imag))
    p, pc, rank, norm_a = _solve_panel(fs, gs, grid.diff, half, solver,
                                       threshold_scale, want_conj)
    p_ends = (complex(p[0]), complex(p[-1]))
    pc_ends = (complex(pc[0]), complex(pc[-1])) if pc is not None else None
    value = weighted_value(p_ends, (gs[0], gs[-1]), integrand.kernel, pc_ends)
    if not np.isfinite(value):
        raise PanelError(f"non-finite panel estimate on [{a0}, {b0}]")
    return LevinLocalResult(value=value, rank_used=rank, p_endpoints=p_ends,
                            norm_a=norm_a)


def panel_trio(integrand: Integrand, a0: float, c0: float, b0: float,
               grid: chebyshev.ChebGrid, solver: str, threshold_scale: float,
               nudge: bool):
    """Estimates for [a0,b0], [a0,c0] and [c0,b0] with one sampling pass.

    This is the adaptive driver's inner loop; f and g are each evaluated in
    a single vectorized call over all 3k nodes.  Returns
    (val0, val_left, val_right, nevals).
    """
    k = grid.k
    xs = np.empty(3 * k)
    spans = ((a0, b0), (a0, c0), (c0, b0))
    for i, (a, b) in enumerate(spans):
        half = 0.5 * (b - a)
        seg = xs[i * k:(i + 1) * k]
        np.multiply(grid.nodes, half, out=seg)
        seg += a + half
        seg[0] = a
        seg[-1] = b
    fs, gs, nevals = sample_integrand(integrand, xs, a0, b0, nudge)
    want_conj = integrand.kernel != "exp" and bool(np.any(fs.imag))
    values = []
    for i, (a, b) in enumerate(spans):
        lo, hi = i * k, (i + 1) * k
        fseg, gseg = fs[lo:hi], gs[lo:hi]
        p, pc, _rank, _norm = _solve_panel(fseg, gseg, grid.diff, 0.5 * (b - a),
                                           solver, threshold_scale, want_conj)
        pc_ends = (pc[0], pc[-1]) if pc is not None else None
        values.append(weighted_value((p[0], p[-1]), (gseg[0], gseg[-1]),
                                     integrand.kernel, pc_ends))
    if not all(np.isfinite(v) for v in values):
        raise PanelError(f"non-finite panel estimate on [{a0}, {b0}]")
    return values[0], values[1], values[2], nevals
