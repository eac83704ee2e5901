"""Deterministic fixed-step integration and uniform trajectory sampling.

States and outputs are recorded on the regular partition t_i = i*T/N for
i = 1..N (the initial point t = 0 is not part of the sample set).  The
integrator is the classical fourth-order Runge-Kutta scheme with the
input evaluated at the stage times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .signals import Signal, impulse, zero
from .systems import ControlSystem


class DivergenceError(RuntimeError):
    """A non-finite state component was produced during integration."""

    def __init__(self, time: float):
        super().__init__(f"state diverged (non-finite component) at t = {time:.6g} s")
        self.time = time


class StepError(ValueError):
    """The step h does not evenly partition the sample interval T/N."""


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled trajectory.

    times    -- (N,) sample instants i*T/N, i = 1..N
    states   -- (N, n) states at the sample instants
    outputs  -- (N, p) outputs at the sample instants
    inputs   -- (N, m) input values at the sample instants, when recorded
    """

    times: np.ndarray
    states: np.ndarray
    outputs: np.ndarray
    inputs: Optional[np.ndarray] = None


def substeps(T: float, N: int, h: float) -> int:
    """Number of integration substeps per sample interval.

    Requires h to divide T/N evenly (to within 1e-9 relative); raises
    StepError otherwise.
    """
    if T <= 0:
        raise ValueError(f"horizon T must be positive, got {T}")
    if N < 2:
        raise ValueError(f"need at least 2 samples, got N={N}")
    if h <= 0:
        raise ValueError(f"step h must be positive, got {h}")
    dt = T / N
    k = dt / h
    ki = int(round(k))
    if ki < 1 or abs(k - ki) > 1e-9 * max(1.0, k):
        raise StepError(
            f"step h={h:.6g} does not evenly divide the sample interval "
            f"T/N={dt:.6g} ({k:.6g} substeps)"
        )
    return ki


def effective_step(T: float, N: int, h: float) -> float:
    """Largest step <= h that evenly partitions the sample interval T/N.

    The pipeline defaults (T=5, N=800, h=1e-3) do not divide evenly, so
    sampling stages derive their actual integration step through this
    helper; ``integrate`` itself insists on exact divisibility.
    """
    if T <= 0 or N < 2 or h <= 0:
        raise ValueError("need T > 0, N >= 2, h > 0")
    dt = T / N
    k = dt / h
    ki = int(round(k))
    if ki >= 1 and abs(k - ki) <= 1e-9 * max(1.0, k):
        return dt / ki
    return dt / math.ceil(k)


def integrate(
    sys: ControlSystem,
    x0,
    u: Signal,
    T: float,
    N: int,
    h: float,
    record_inputs: bool = False,
) -> Trajectory:
    """Integrate ``sys`` from ``x0`` under input ``u`` over [0, T].

    Classical RK4 with fixed step h; h must divide T/N evenly.  Stage
    times are derived from an integer step counter, so repeated calls are
    bit-identical.  Raises DivergenceError as soon as a sampled state has
    a non-finite component.
    """
    nsub = substeps(T, N, h)
    dt = (T / N) / nsub
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    if x.shape != (sys.n,):
        raise ValueError(f"x0 must have dimension {sys.n}, got shape {x.shape}")
    f = sys.dynamics
    times = np.zeros(N)
    states = np.zeros((N, sys.n))
    outputs = np.zeros((N, sys.p))
    inputs = np.zeros((N, sys.m)) if record_inputs else None
    step = 0
    for i in range(N):
        for _ in range(nsub):
            t = step * dt
            u0 = np.atleast_1d(np.asarray(u(t), dtype=float))
            k1 = f(x, u0)
            um = np.atleast_1d(np.asarray(u(t + 0.5 * dt), dtype=float))
            k2 = f(x + 0.5 * dt * k1, um)
            k3 = f(x + 0.5 * dt * k2, um)
            u1 = np.atleast_1d(np.asarray(u(t + dt), dtype=float))
            k4 = f(x + dt * k3, u1)
            x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            step += 1
        t_i = step * dt
        if not np.all(np.isfinite(x)):
            raise DivergenceError(t_i)
        times[i] = t_i
        states[i] = x
        outputs[i] = sys.output(x)
        if record_inputs:
            inputs[i] = np.atleast_1d(np.asarray(u(t_i), dtype=float))
    return Trajectory(times, states, outputs, inputs)


def impulse_responses(sys: ControlSystem, T: float, N: int, h: float) -> List[Trajectory]:
    """Responses to a unit-area pulse on each input channel, from x0 = 0.

    The pulse width equals the effective integration step, the standard
    numerical surrogate for a Dirac impulse.
    """
    heff = effective_step(T, N, h)
    out = []
    for i in range(1, sys.m + 1):
        out.append(integrate(sys, np.zeros(sys.n), impulse(i, heff, sys.m), T, N, heff))
    return out


def output_responses(sys: ControlSystem, T: float, N: int, h: float) -> List[Trajectory]:
    """Unforced responses from each unit initial condition x0 = e_i."""
    heff = effective_step(T, N, h)
    u = zero(sys.m)
    out = []
    for i in range(sys.n):
        x0 = np.zeros(sys.n)
        x0[i] = 1.0
        out.append(integrate(sys, x0, u, T, N, heff))
    return out


def trajectory_csv(traj: Trajectory) -> str:
    """Render a trajectory as CSV with header t,x1..xn,y1..yp."""
    n = traj.states.shape[1]
    p = traj.outputs.shape[1]
    header = ",".join(["t"] + [f"x{i+1}" for i in range(n)] + [f"y{i+1}" for i in range(p)])
    lines = [header]
    for t, x, y in zip(traj.times, traj.states, traj.outputs):
        row = [t] + list(x) + list(y)
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"
