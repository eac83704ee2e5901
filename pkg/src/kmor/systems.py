"""Control system definitions and the built-in benchmark systems.

A system is a pair of maps (dynamics, output) for

    xdot = f(x, u),   y = h(x)

with state dimension ``n``, input dimension ``m`` and output dimension
``p``.  All built-in systems have an equilibrium at the origin:
f(0, 0) = 0 and h(0) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class ControlSystem:
    """Continuous-time control system ``xdot = f(x, u), y = h(x)``.

    ``dynamics`` and ``output`` accept array-likes (scalars are fine for
    one-dimensional states/inputs) and return 1-D float arrays.  Instances
    are immutable and safe to evaluate from multiple threads.
    """

    name: str
    n: int
    m: int
    p: int
    dynamics: Callable[[np.ndarray, np.ndarray], np.ndarray]
    output: Callable[[np.ndarray], np.ndarray]


def _as_state(x, n):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (n,):
        raise ValueError(f"expected state of dimension {n}, got shape {x.shape}")
    return x


def _as_input(u, m):
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.shape != (m,):
        raise ValueError(f"expected input of dimension {m}, got shape {u.shape}")
    return u


def system_2d() -> ControlSystem:
    """Two-state polynomial SISO benchmark.

    The cubic system

        x1dot = -3 x1^3 + x1^2 x2 + 2 x1 x2^2 - x2^3
        x2dot =  2 x1^3 - 10 x1^2 x2 + 10 x1 x2^2 - 3 x2^3 - u
        y     =  2 x1 - x2

    which, in the variables z1 = 2 x1 - x2 and z2 = x1 - x2, decouples into
    z1dot = -z1^3 + u, z2dot = -z1^2 z2 - z2^3 + u with y = z1.  Its
    input-output behaviour therefore equals that of ``system_2d_reference``.
    """

    def f(x, u):
        x = _as_state(x, 2)
        u = _as_input(u, 1)
        x1, x2 = x
        return np.array([
            -3.0 * x1**3 + x1**2 * x2 + 2.0 * x1 * x2**2 - x2**3,
            2.0 * x1**3 - 10.0 * x1**2 * x2 + 10.0 * x1 * x2**2 - 3.0 * x2**3 - u[0],
        ])

    def h(x):
        x = _as_state(x, 2)
        return np.array([2.0 * x[0] - x[1]])

    return ControlSystem("2d", 2, 1, 1, f, h)


def system_2d_reference() -> ControlSystem:
    """One-state reference ``zdot = -z^3 + u, y = z``.

    The exact input-output equivalent of ``system_2d``; used to judge how
    well a learned one-state reduction recovers the analytic reduction.
    """

    def f(x, u):
        x = _as_state(x, 1)
        u = _as_input(u, 1)
        return np.array([-x[0]**3 + u[0]])

    def h(x):
        x = _as_state(x, 1)
        return np.array([x[0]])

    return ControlSystem("2d-reference", 1, 1, 1, f, h)


def system_7d() -> ControlSystem:
    """Seven-state polynomial SISO benchmark."""

    def f(x, u):
        x = _as_state(x, 7)
        u = _as_input(u, 1)
        x1, x2, x3, x4, x5, x6, x7 = x
        v = u[0]
        return np.array([
            -x1**3 + v,
            -x2**3 - x1**2 * x2 + 3.0 * x1 * x2**2 - v,
            -x3**3 + x5 + v,
            -x4**3 + x1 - x2 + x3 + 2.0 * v,
            x1 * x2 * x3 - x5**3 + v,
            x5 - x6**3 - x5**3 + 2.0 * v,
            -2.0 * x6**3 + 2.0 * x5 - x7 - x5**3 + 4.0 * v,
        ])

    def h(x):
        x = _as_state(x, 7)
        x1, x2, x3, x4, x5, x6, x7 = x
        return np.array([x1 - x2**2 + x3 + x4 * x3 + x5 - 2.0 * x6 + 2.0 * x7])

    return ControlSystem("7d", 7, 1, 1, f, h)


def linear_system(A, B, C, name: str = "linear") -> ControlSystem:
    """Wrap matrices (A, B, C) as ``xdot = A x + B u, y = C x``.

    Parameters
    ----------
    A, B, C : array-like
        State, input and output matrices.  Scalars are treated as 1x1.
        A must be Hurwitz (all eigenvalues with strictly negative real
        part); the oracle checks in this package rely on stability.

    Raises
    ------
    ValueError
        If A is not square, not Hurwitz, or the dimensions of B and C are
        inconsistent with A.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    if B.ndim < 2:
        B = B.reshape(A.shape[0], -1)
    if C.ndim < 2:
        C = C.reshape(-1, A.shape[0])
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got {A.shape}")
    n = A.shape[0]
    if B.shape[0] != n:
        raise ValueError(f"B must have {n} rows, got {B.shape}")
    if C.shape[1] != n:
        raise ValueError(f"C must have {n} columns, got {C.shape}")
    eig = np.linalg.eigvals(A)
    if eig.real.max() >= 0.0:
        raise ValueError(
            f"A is not Hurwitz: max real part of eigenvalues is {eig.real.max():.6g}"
        )
    m = B.shape[1]
    p = C.shape[0]

    def f(x, u):
        x = _as_state(x, n)
        u = _as_input(u, m)
        return A @ x + B @ u

    def h(x):
        x = _as_state(x, n)
        return C @ x

    return ControlSystem(name, n, m, p, f, h)
