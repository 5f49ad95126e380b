"""Adaptive bisection driver around the single-panel estimates.

The driver keeps a worklist of intervals, initially just [a, b].  For each
popped interval it computes the panel estimate for the whole interval and
for its two halves; if the whole-interval estimate agrees with the sum of
the half estimates to within the absolute tolerance, the *unsplit*
estimate is added to the running total, otherwise both halves go back on
the worklist.  The worklist is a LIFO stack, so runs are deterministic and
memory stays proportional to the subdivision depth.

Safety rails absent from the basic scheme: a budget on the number of
processed intervals and a minimum interval width, both reported through
``QuadResult.status``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chebyshev, linalg
from .levin import Integrand, PanelError, panel_trio

STATUSES = ("converged", "budget_exhausted", "width_floor", "panel_failure")


@dataclass(frozen=True)
class AdaptiveConfig:
    """Knobs of the adaptive integrator.

    eps
        Absolute acceptance tolerance of the whole-vs-halves test.
    k
        Collocation order per panel.
    solver
        'qr' (rank-revealing QR, the fast path) or 'svd' (truncated SVD,
        the verification path).  Both produce the same estimates to well
        below eps.
    max_intervals
        Budget on processed (popped) intervals.
    min_width_factor
        An interval narrower than min_width_factor * max(|a|, |b|, 1) stops
        the run with status 'width_floor'.
    threshold_policy
        Relative truncation level for the panel solves; the threshold
        passed down is threshold_policy times the panel matrix norm proxy.
    nudge
        Re-evaluate non-finite endpoint samples slightly inside the panel
        (integrable endpoint singularities); disable to turn such samples
        into panel failures.
    """

    eps: float = 1e-12
    k: int = 12
    solver: str = "qr"
    max_intervals: int = 2 ** 20
    min_width_factor: float = 16.0 * linalg.EPS0
    threshold_policy: float = linalg.EPS0
    nudge: bool = True

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ValueError("eps must be > 0")
        if self.k < 4:
            raise ValueError("collocation order must be >= 4")
        if self.max_intervals < 1:
            raise ValueError("max_intervals must be >= 1")
        if self.solver not in ("qr", "svd"):
            raise ValueError(f"solver must be 'qr' or 'svd', got {self.solver!r}")
        if not self.threshold_policy > 0.0:
            raise ValueError("threshold_policy must be > 0")


@dataclass(frozen=True)
class QuadResult:
    """Outcome of an adaptive run.

    ``intervals_used`` counts every panel estimate computed (three per
    processed interval); ``fevals`` counts every point at which the
    integrand was sampled.  ``value`` is the partial sum when the status is
    not 'converged'.
    """

    value: complex
    intervals_used: int
    fevals: int
    status: str


def accepted_pair_update(val0: complex, val_l: complex, val_r: complex,
                         eps: float) -> bool:
    """Whole-vs-halves acceptance test.

    True (accept, accumulate the unsplit val0) iff |val0 - (val_l + val_r)|
    is strictly below eps; a difference of exactly eps splits.
    """
    return abs(val0 - (val_l + val_r)) < eps


def _run_worklist(trio, a: float, b: float, eps: float, max_intervals: int,
                  min_width_factor: float) -> QuadResult:
    """Generic whole-vs-halves driver over a panel-trio evaluator.

    ``trio(a0, c0, b0)`` returns (val0, val_l, val_r, nevals) and may raise
    PanelError; a failing interval is split until the width floor, at
    which point the run stops with status 'panel_failure'.
    """
    floor = min_width_factor * max(abs(a), abs(b), 1.0)
    stack = [(a, b)]
    val = 0.0 + 0.0j
    pops = 0
    panels = 0
    fevals = 0
    status = "converged"
    while stack:
        if pops >= max_intervals:
            status = "budget_exhausted"
            break
        a0, b0 = stack.pop()
        pops += 1
        if (b0 - a0) < floor:
            status = "width_floor"
            break
        c0 = 0.5 * (a0 + b0)
        try:
            v0, vl, vr, ne = trio(a0, c0, b0)
        except PanelError:
            if 0.5 * (b0 - a0) < floor:
                status = "panel_failure"
                break
            stack.append((c0, b0))
            stack.append((a0, c0))
            continue
        panels += 3
        fevals += ne
        if accepted_pair_update(v0, vl, vr, eps):
            val += v0
        else:
            stack.append((c0, b0))
            stack.append((a0, c0))
    return QuadResult(value=val, intervals_used=panels, fevals=fevals, status=status)


def adaptive_integrate(integrand: Integrand, a: float, b: float,
                       config: AdaptiveConfig | None = None) -> QuadResult:
    """Adaptively evaluate the integral of f * kernel(g) over [a, b]."""
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    if config is None:
        config = AdaptiveConfig()
    grid = chebyshev.grid(config.k)

    def trio(a0, c0, b0):
        return panel_trio(integrand, a0, c0, b0, grid, config.solver,
                          config.threshold_policy, config.nudge)

    return _run_worklist(trio, a, b, config.eps, config.max_intervals,
                         config.min_width_factor)
