"""Deterministic, splittable random streams.

The generator is counter-based: the k-th raw word of a stream is a bit-mix of
(seed, stream_id, k), so any draw can be produced without generating its
predecessors and any parallel schedule sees the same values.  The mix is the
SplitMix64 finalizer (Stafford variant 13) applied to a per-stream base offset
plus counter * golden-gamma.

Conventions, fixed for reproducibility:

* uniforms are ``((word >> 11) + 0.5) * 2**-53`` -- open interval (0, 1);
* one Gaussian consumes two counter slots (Box-Muller, cosine branch);
* one stable variate consumes two counter slots (Chambers-Mallows-Stuck);
* Poisson event times consume one slot per exponential inter-arrival,
  including the final draw that overshoots the horizon.

Streams are cheap value objects.  A single instance must not be shared by
concurrent callers; derive one substream per worker instead.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, SizeError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_U64 = np.uint64
_GOLDEN_U = _U64(_GOLDEN)
_MIX_A_U = _U64(_MIX_A)
_MIX_B_U = _U64(_MIX_B)


def _mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int, mod 2**64."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _MIX_A_U
    z = (z ^ (z >> _U64(27))) * _MIX_B_U
    return z ^ (z >> _U64(31))


def _check_u64(value: int, name: str) -> int:
    if not 0 <= int(value) <= _MASK64:
        raise DomainError(f"{name} must be a 64-bit unsigned integer, got {value}")
    return int(value)


def derive_seed(seed: int, *salts: int) -> int:
    """Derive a child seed by hash-chaining salts onto a parent seed.

    Used to give independent sub-experiments (figures, generations) their own
    seed without coordinating stream ids.
    """
    h = _mix64(_check_u64(seed, "seed") + _GOLDEN)
    for salt in salts:
        h = _mix64(h ^ ((int(salt) + _GOLDEN) & _MASK64))
    return h


class RngStream:
    """One deterministic stream, identified by (seed, stream_id).

    ``counter`` is the index of the next raw word; samplers advance it.
    Re-creating the stream replays the identical sequence.
    """

    __slots__ = ("seed", "stream_id", "counter", "_base")

    def __init__(self, seed: int, stream_id: int, counter: int = 0):
        self.seed = _check_u64(seed, "seed")
        self.stream_id = _check_u64(stream_id, "stream_id")
        self.counter = _check_u64(counter, "counter")
        base = _mix64(self.seed + _GOLDEN)
        self._base = _mix64(base ^ ((self.stream_id + _GOLDEN) & _MASK64))

    def copy(self) -> "RngStream":
        return RngStream(self.seed, self.stream_id, self.counter)

    def __repr__(self) -> str:
        return (f"RngStream(seed={self.seed}, stream_id={self.stream_id}, "
                f"counter={self.counter})")

    def _words(self, n: int) -> np.ndarray:
        """Next n raw 64-bit words; advances the counter by n."""
        ctr = np.arange(self.counter, self.counter + n, dtype=np.uint64)
        self.counter += n
        return _mix64_array(_U64(self._base) + ctr * _GOLDEN_U)

    def uniforms(self, n: int) -> np.ndarray:
        """n uniforms on the open interval (0, 1); one counter slot each."""
        if n < 0:
            raise SizeError(f"sample count must be >= 0, got {n}")
        w = self._words(n)
        return ((w >> _U64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def substream(seed: int, stream_id: int) -> RngStream:
    """Stream at counter 0; a pure function of (seed, stream_id)."""
    return RngStream(seed, stream_id)


def sample_gaussian(stream: RngStream, n: int) -> np.ndarray:
    """n independent standard-normal variates (Box-Muller, cosine branch)."""
    u = stream.uniforms(2 * _checked_count(n))
    return np.sqrt(-2.0 * np.log(u[0::2])) * np.cos(2.0 * np.pi * u[1::2])


def sample_stable(stream: RngStream, alpha: float, beta: float, n: int) -> np.ndarray:
    """n standard stable variates (unit scale, zero location shift).

    Chambers-Mallows-Stuck construction in the one-parameterization: the
    alpha = 1 case uses its closed form, every other alpha the general
    formula.  alpha = 2 reduces to Normal(0, 2); alpha = 1, beta = 0 is
    standard Cauchy.
    """
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    if not -1.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [-1, 1], got {beta}")
    u = stream.uniforms(2 * _checked_count(n))
    angle = np.pi * (u[0::2] - 0.5)          # uniform on (-pi/2, pi/2)
    expo = -np.log(u[1::2])                  # exponential(1)
    if alpha == 1.0:
        half_pi = 0.5 * np.pi
        t1 = (half_pi + beta * angle) * np.tan(angle)
        if beta == 0.0:
            return (2.0 / np.pi) * t1
        t2 = beta * np.log((half_pi * expo * np.cos(angle)) / (half_pi + beta * angle))
        return (2.0 / np.pi) * (t1 - t2)
    skew = beta * math.tan(0.5 * np.pi * alpha)
    shift = math.atan(skew) / alpha
    scale = (1.0 + skew * skew) ** (0.5 / alpha)
    num = np.sin(alpha * (angle + shift))
    den = np.cos(angle) ** (1.0 / alpha)
    tail = (np.cos(angle - alpha * (angle + shift)) / expo) ** ((1.0 - alpha) / alpha)
    return scale * num / den * tail


def sample_poisson_events(stream: RngStream, rate: float, horizon: float) -> np.ndarray:
    """Sorted event times in (0, horizon] with exponential inter-arrivals."""
    if rate < 0.0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    if horizon <= 0.0:
        raise DomainError(f"horizon must be > 0, got {horizon}")
    if rate == 0.0:
        return np.empty(0, dtype=np.float64)
    times: list[np.ndarray] = []
    elapsed = 0.0
    # Expected count is rate * horizon; draw in blocks until we overshoot.
    block = max(16, int(rate * horizon * 1.5) + 1)
    while True:
        gaps = -np.log(stream.uniforms(block)) / rate
        arrival = elapsed + np.cumsum(gaps)
        over = np.nonzero(arrival > horizon)[0]
        if over.size:
            consumed = int(over[0]) + 1
            stream.counter -= block - consumed  # hand back unused slots
            times.append(arrival[: over[0]])
            break
        times.append(arrival)
        elapsed = float(arrival[-1])
    return np.concatenate(times) if len(times) > 1 else times[0]


def _checked_count(n: int) -> int:
    if n < 0:
        raise SizeError(f"sample count must be >= 0, got {n}")
    return int(n)
