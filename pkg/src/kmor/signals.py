"""Excitation and test input signals.

Signals are immutable callables of time.  Vector-valued signals return a
1-D array; scalar signals (square, sine) return a float and are broadcast
to single-input systems by the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np


class Signal:
    """Pure function of time; repeated evaluation is bit-identical."""

    def __call__(self, t: float):
        raise NotImplementedError


@dataclass(frozen=True)
class Impulse(Signal):
    """Rectangular unit-area pulse on input channel ``channel``.

    u(t) = e_channel / width on the interval (0, width], zero elsewhere,
    so the integral of u over [0, width] is exactly e_channel.  The
    support is taken open at t = 0 and closed at t = width so that the
    classical Runge-Kutta stage weights (1,2,2,1)/6 integrate the pulse
    to unit area when width equals one integration step: the stages at
    t = width/2 and t = width carry combined weight 5/6 within the pulse
    step and the first stage of the following step carries the remaining
    1/6.  A support of [0, width) loses 1/6 of the injected area at any
    step size.
    """

    channel: int
    width: float
    m: int

    def __post_init__(self):
        if not (1 <= self.channel <= self.m):
            raise ValueError(f"channel {self.channel} out of range 1..{self.m}")
        if self.width <= 0:
            raise ValueError(f"impulse width must be positive, got {self.width}")

    def __call__(self, t: float):
        u = np.zeros(self.m)
        if 0.0 < t <= self.width:
            u[self.channel - 1] = 1.0 / self.width
        return u


@dataclass(frozen=True)
class Square(Signal):
    """Square wave at 50% duty: amplitude * sq(2*pi*freq*t + phase).

    sq(theta) is +1 where sin(theta) >= 0 and -1 otherwise, i.e. the wave
    starts at +amplitude for phase = 0.
    """

    freq: float
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if self.freq <= 0:
            raise ValueError(f"square wave frequency must be positive, got {self.freq}")

    def __call__(self, t: float):
        s = math.sin(2.0 * math.pi * self.freq * t + self.phase)
        return self.amplitude if s >= 0.0 else -self.amplitude


@dataclass(frozen=True)
class Sine(Signal):
    freq: float
    amplitude: float
    phase: float = 0.0

    def __call__(self, t: float):
        return self.amplitude * math.sin(2.0 * math.pi * self.freq * t + self.phase)


@dataclass(frozen=True)
class Zero(Signal):
    """Identically zero input of dimension ``m``."""

    m: int = 1

    def __call__(self, t: float):
        return np.zeros(self.m)


@dataclass(frozen=True)
class Sum(Signal):
    """Pointwise sum of signals (all scalar or all of equal dimension)."""

    parts: Tuple[Signal, ...] = field(default_factory=tuple)

    def __call__(self, t: float):
        vals = [p(t) for p in self.parts]
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out


def impulse(channel: int, width: float, m: int) -> Impulse:
    return Impulse(channel, width, m)


def square(freq: float, amplitude: float, phase: float = 0.0) -> Square:
    return Square(freq, amplitude, phase)


def sine(freq: float, amplitude: float, phase: float = 0.0) -> Sine:
    return Sine(freq, amplitude, phase)


def zero(m: int = 1) -> Zero:
    return Zero(m)


def test_input() -> Signal:
    """Comparison input u(t) = (sin(2*pi*3 t) + sq(2*pi*5 t - pi/2)) / 4.

    Deliberately different from the square waves used for training; the
    amplitude is bounded by 0.5.
    """
    return Sum((Sine(3.0, 0.25), Square(5.0, 0.25, -math.pi / 2.0)))


def parse_signal(text: str, m: int = 1, impulse_width: float = 1e-3) -> Signal:
    """Parse a signal description.

    Accepted forms: ``impulse:CH``, ``square:FREQ:AMP``, ``test``, ``zero``.
    ``m`` is the input dimension of the target system and ``impulse_width``
    the pulse width used for the impulse form.
    """
    parts = text.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "impulse":
            if len(parts) != 2:
                raise ValueError
            return Impulse(int(parts[1]), impulse_width, m)
        if kind == "square":
            if len(parts) != 3:
                raise ValueError
            return Square(float(parts[1]), float(parts[2]))
        if kind == "test":
            return test_input()
        if kind == "zero":
            return Zero(m)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"malformed signal spec {text!r}") from exc
    raise ValueError(
        f"unknown signal {text!r}; expected impulse:CH, square:FREQ:AMP, test or zero"
    )
