"""Implicit time steppers for the one-dimensional tempered diffusion problems.

Three schemes share the spatial machinery of :mod:`tempfrac.operators`:

* ``solve_left``  - backward Euler for  u_t = K D_left u + f  with zero trace
  at the left boundary,
* ``solve_right`` - its mirror for the right-sided operator with zero trace at
  the right boundary,
* ``solve_two_sided`` - Lie splitting for  u_t = K (D_left + D_right) u + f
  with homogeneous boundaries: one implicit half with the right-sided
  operator after an explicit half with the left-sided one, the source applied
  half-and-half at the midpoint time.

Each run factors its time-independent system matrix once and rebuilds only
the boundary vector per step.  Any non-finite value, or a sup-norm beyond
1e30, aborts with :class:`BlowupError` carrying the failing step index; that
is the diagnostic the stability experiments rely on, so overflow is never
masked.  Runs share no mutable state and may execute concurrently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .calculus import TemperedParams, tempered_weights
from .operators import Grid1D, TimeGrid, apply_compact, assemble_B, assemble_H, assemble_P

__all__ = ["ProblemSpec1D", "Solution1D", "BlowupError", "solve_left", "solve_right", "solve_two_sided"]

_BLOWUP_LIMIT = 1e30


class BlowupError(RuntimeError):
    """Numerical blowup detected while stepping; carries the step index."""

    def __init__(self, step, detail=""):
        self.step = step
        super().__init__(f"solution blew up at step {step}{': ' + detail if detail else ''}")


@dataclass(frozen=True)
class ProblemSpec1D:
    """One initial-boundary value problem on grid x time.

    ``initial`` maps x to u(x, 0); ``boundary_left`` / ``boundary_right`` map
    t to the traces at x = a and x = b; ``source`` maps (x, t) to f and must
    accept a vector of nodes.  ``side`` selects the scheme.
    """

    grid: Grid1D
    time: TimeGrid
    params: TemperedParams
    side: str
    initial: Callable
    boundary_left: Callable
    boundary_right: Callable
    source: Callable


@dataclass(frozen=True)
class Solution1D:
    """Nodal values at the final time (boundary nodes included), plus optional history."""

    grid: Grid1D
    time: TimeGrid
    values: np.ndarray
    history: Optional[np.ndarray] = None


def _require_zero_trace(fn, which, T):
    for t in (0.0, 0.5 * T, T):
        if abs(fn(t)) > 1e-12:
            raise ValueError(
                f"the {which} boundary trace must vanish identically for this scheme"
            )


def _warn_corner_mismatch(spec):
    u0 = spec.initial
    for x, fn, name in (
        (spec.grid.a, spec.boundary_left, "left"),
        (spec.grid.b, spec.boundary_right, "right"),
    ):
        if abs(float(u0(x)) - float(fn(0.0))) > 1e-10:
            warnings.warn(
                f"initial data and {name} boundary trace disagree at the corner",
                RuntimeWarning,
                stacklevel=3,
            )


def _check_finite(U, step):
    if not np.all(np.isfinite(U)):
        raise BlowupError(step, "non-finite values")
    m = np.max(np.abs(U))
    if m > _BLOWUP_LIMIT:
        raise BlowupError(step, f"sup-norm {m:.3e}")


def _with_boundaries(spec, interior, t):
    full = np.empty(spec.grid.M + 1)
    full[0] = spec.boundary_left(t)
    full[-1] = spec.boundary_right(t)
    full[1:-1] = interior
    return full


def _march_one_sided(spec, side, store_history):
    grid, time, params = spec.grid, spec.time, spec.params
    tau = time.tau
    nodes = grid.nodes()
    B = assemble_B(side, grid, params.lam).to_dense()
    P = assemble_P(side, params, grid, tau)
    weights = tempered_weights(params, grid.h, grid.M)
    lu = lu_factor(B - P)

    bl, br = spec.boundary_left, spec.boundary_right
    U = np.asarray(spec.initial(nodes[1:-1]), dtype=float)
    history = [
        _with_boundaries(spec, U, 0.0)
    ] if store_history else None
    trace_a_n, trace_b_n = bl(0.0), br(0.0)
    for n in range(time.N):
        t1 = (n + 1) * tau
        trace_a, trace_b = bl(t1), br(t1)
        f_all = np.asarray(spec.source(nodes, t1), dtype=float)
        H = assemble_H(
            side, params, grid, tau,
            (trace_a_n, trace_a), (trace_b_n, trace_b),
            f_all[0], f_all[-1], weights,
        )
        rhs = B @ U + tau * (B @ f_all[1:-1]) + H
        U = lu_solve(lu, rhs, check_finite=False)
        _check_finite(U, n + 1)
        trace_a_n, trace_b_n = trace_a, trace_b
        if store_history:
            history.append(_with_boundaries(spec, U, t1))

    values = _with_boundaries(spec, U, time.T)
    return Solution1D(
        grid=grid, time=time, values=values,
        history=np.asarray(history) if store_history else None,
    )


def solve_left(spec, store_history=False):
    """Backward-Euler run of the left-sided scheme; requires u(a, t) = 0."""
    if spec.side != "left":
        raise ValueError(f"spec.side is {spec.side!r}, expected 'left'")
    _require_zero_trace(spec.boundary_left, "left", spec.time.T)
    _warn_corner_mismatch(spec)
    return _march_one_sided(spec, "left", store_history)


def solve_right(spec, store_history=False):
    """Backward-Euler run of the right-sided scheme; requires u(b, t) = 0."""
    if spec.side != "right":
        raise ValueError(f"spec.side is {spec.side!r}, expected 'right'")
    _require_zero_trace(spec.boundary_right, "right", spec.time.T)
    _warn_corner_mismatch(spec)
    return _march_one_sided(spec, "right", store_history)


def solve_two_sided(spec, store_history=False):
    """Lie-splitting run for the two-sided problem with homogeneous boundaries.

    Per step, with P assembled without the tau factor:

        B_l U*      = (B_l + tau P_l) U^n + (tau/2) B_l f^{n+1/2}
        (B_r - tau P_r) U^{n+1} = B_r U* + (tau/2) B_r f^{n+1/2}

    The compact-filtered source includes its boundary-node samples; dropping
    them costs an order of accuracy.
    """
    if spec.side != "two_sided":
        raise ValueError(f"spec.side is {spec.side!r}, expected 'two_sided'")
    _require_zero_trace(spec.boundary_left, "left", spec.time.T)
    _require_zero_trace(spec.boundary_right, "right", spec.time.T)
    _warn_corner_mismatch(spec)

    grid, time, params = spec.grid, spec.time, spec.params
    tau, lam = time.tau, params.lam
    nodes = grid.nodes()
    Bl = assemble_B("left", grid, lam).to_dense()
    Br = Bl.T
    Pl = assemble_P("left", params, grid, tau, include_tau=False)
    Pr = Pl.T
    lu_star = lu_factor(Bl)
    lu_step = lu_factor(Br - tau * Pr)
    A1 = Bl + tau * Pl

    U = np.asarray(spec.initial(nodes[1:-1]), dtype=float)
    history = [_with_boundaries(spec, U, 0.0)] if store_history else None
    for n in range(time.N):
        t_mid = (n + 0.5) * tau
        f_all = np.asarray(spec.source(nodes, t_mid), dtype=float)
        src_l = apply_compact("left", lam, grid.h, f_all)
        src_r = apply_compact("right", lam, grid.h, f_all)
        U_star = lu_solve(lu_star, A1 @ U + 0.5 * tau * src_l, check_finite=False)
        U = lu_solve(lu_step, Br @ U_star + 0.5 * tau * src_r, check_finite=False)
        _check_finite(U, n + 1)
        if store_history:
            history.append(_with_boundaries(spec, U, (n + 1) * tau))

    values = _with_boundaries(spec, U, time.T)
    return Solution1D(
        grid=grid, time=time, values=values,
        history=np.asarray(history) if store_history else None,
    )
