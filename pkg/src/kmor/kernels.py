"""Mercer kernels with analytic gradients, Gram and cross-Gram assembly.

Three families are provided:

    linear       K(x, y) = <x, y>
    polynomial   K(x, y) = (1 + <x, y>)^d
    gaussian     K(x, y) = exp(-gamma * ||x - y||^2)

The gaussian scale may be left unset (``gamma=None``) and resolved later
from data: gamma defaults to the reciprocal of the mean squared distance
over all unordered distinct pairs of the training points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


def _as_points(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError(f"expected a non-empty (k, n) point array, got shape {P.shape}")
    return P


class Kernel:
    """Symmetric positive-definite kernel on R^n x R^n."""

    def eval(self, x, y) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if x.shape != y.shape:
            raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
        return float(self.pairwise(x[None, :], y[None, :])[0, 0])

    __call__ = eval

    def pairwise(self, X, Y) -> np.ndarray:
        """Matrix of K(X_i, Y_j)."""
        raise NotImplementedError

    def grad_x(self, x, y) -> np.ndarray:
        """Gradient of K with respect to its first argument, as a (n,) array."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if x.shape != y.shape:
            raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
        return self.grad_stack(x, y[None, :])[0]

    def grad_stack(self, x, Y) -> np.ndarray:
        """Rows dK(x, Y_mu)/dx, shape (M, n)."""
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearKernel(Kernel):
    def pairwise(self, X, Y):
        X, Y = _as_points(X), _as_points(Y)
        return X @ Y.T

    def grad_stack(self, x, Y):
        Y = _as_points(Y)
        return Y.copy()

    def descriptor(self):
        return {"family": "linear"}


@dataclass(frozen=True)
class PolynomialKernel(Kernel):
    degree: int = 3

    def __post_init__(self):
        if self.degree < 1 or self.degree != int(self.degree):
            raise ValueError(f"polynomial degree must be a positive integer, got {self.degree}")

    def pairwise(self, X, Y):
        X, Y = _as_points(X), _as_points(Y)
        return (1.0 + X @ Y.T) ** self.degree

    def grad_stack(self, x, Y):
        Y = _as_points(Y)
        x = np.asarray(x, dtype=float).reshape(Y.shape[1])
        base = (1.0 + Y @ x) ** (self.degree - 1)
        return self.degree * base[:, None] * Y

    def descriptor(self):
        return {"family": "polynomial", "degree": int(self.degree)}


@dataclass(frozen=True)
class GaussianKernel(Kernel):
    gamma: Optional[float] = None

    def _gamma(self) -> float:
        if self.gamma is None:
            raise ValueError(
                "gaussian kernel scale is unresolved; call resolve() with training points"
            )
        return self.gamma

    def pairwise(self, X, Y):
        g = self._gamma()
        X, Y = _as_points(X), _as_points(Y)
        d2 = (X * X).sum(1)[:, None] + (Y * Y).sum(1)[None, :] - 2.0 * (X @ Y.T)
        return np.exp(-g * np.maximum(d2, 0.0))

    def grad_stack(self, x, Y):
        g = self._gamma()
        Y = _as_points(Y)
        x = np.asarray(x, dtype=float).reshape(Y.shape[1])
        k = self.pairwise(x[None, :], Y)[0]
        return -2.0 * g * (x[None, :] - Y) * k[:, None]

    def resolve(self, points) -> "GaussianKernel":
        """Fix the scale from data if it is unset."""
        if self.gamma is not None:
            return self
        return GaussianKernel(auto_gamma(points))

    def descriptor(self):
        return {"family": "gaussian", "gamma": self.gamma}


def auto_gamma(points) -> float:
    """Reciprocal of the mean squared pairwise distance of the points.

    The mean runs over all unordered distinct pairs.
    """
    P = _as_points(points)
    if P.shape[0] < 2:
        raise ValueError("need at least two points to set the gaussian scale")
    sq = (P * P).sum(1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (P @ P.T)
    iu = np.triu_indices(P.shape[0], 1)
    mean = float(np.maximum(d2[iu], 0.0).mean())
    if mean <= 0.0:
        raise ValueError("all points coincide; gaussian scale is undefined")
    return 1.0 / mean


def resolve_kernel(kernel: Kernel, points) -> Kernel:
    """Return a kernel with any data-dependent scale fixed."""
    if isinstance(kernel, GaussianKernel):
        return kernel.resolve(points)
    return kernel


def gram(kernel: Kernel, points) -> np.ndarray:
    """Gram matrix K(p_i, p_j), exactly symmetric by mirroring the upper triangle."""
    P = _as_points(points)
    G = kernel.pairwise(P, P)
    upper = np.triu(G)
    return upper + np.triu(G, 1).T


def cross_gram(kernel: Kernel, rows, cols) -> np.ndarray:
    """Cross-Gram matrix with entry (mu, nu) = K(rows_mu, cols_nu)."""
    R, C = _as_points(rows), _as_points(cols)
    if R.shape[1] != C.shape[1]:
        raise ValueError(f"dimension mismatch: {R.shape[1]} vs {C.shape[1]}")
    return kernel.pairwise(R, C)


def parse_kernel(text: str) -> Kernel:
    """Parse ``linear``, ``poly:D``, ``gauss:GAMMA`` or ``gauss:auto``."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "linear" and len(parts) == 1:
            return LinearKernel()
        if kind == "poly" and len(parts) == 2:
            return PolynomialKernel(int(parts[1]))
        if kind == "gauss" and len(parts) == 2:
            if parts[1].lower() == "auto":
                return GaussianKernel(None)
            return GaussianKernel(float(parts[1]))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed kernel spec {text!r}") from exc
    raise ValueError(
        f"unknown kernel {text!r}; expected linear, poly:D, gauss:GAMMA or gauss:auto"
    )


def kernel_from_descriptor(desc: dict) -> Kernel:
    family = desc.get("family")
    if family == "linear":
        return LinearKernel()
    if family == "polynomial":
        return PolynomialKernel(int(desc["degree"]))
    if family == "gaussian":
        g = desc.get("gamma")
        return GaussianKernel(None if g is None else float(g))
    raise ValueError(f"unknown kernel descriptor {desc!r}")
