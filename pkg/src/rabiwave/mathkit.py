"""Self-contained numerical kernels.

Bessel functions of the first kind (ascending power series, adequate for
the small arguments this solver ever sees), the midpoint
finite-difference stencil, a cyclic Jacobi eigensolver for small
symmetric matrices, and a radix-2 FFT with a one-sided amplitude
spectrum wrapper.

All routines are pure and accept numpy arrays where it makes sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BESSEL_MAX_ORDER = 4
BESSEL_MAX_ARG = 10.0

_FACTORIAL = [math.factorial(n) for n in range(BESSEL_MAX_ORDER + 1)]


def bessel_j(n, x):
    """Bessel function of the first kind J_n(x), ascending power series.

    Supports integer orders 0..4 and |x| <= 10, where the series
    converges to ~1e-15 absolute in at most a few dozen terms.  Accepts
    scalars or arrays in ``x``.
    """
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= BESSEL_MAX_ORDER:
        raise ValueError(f"bessel_j order must be an integer in [0, {BESSEL_MAX_ORDER}], got {n!r}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > BESSEL_MAX_ARG):
        raise ValueError(f"bessel_j argument out of supported range |x| <= {BESSEL_MAX_ARG}")
    half = 0.5 * x_arr
    # J_n(x) = sum_m (-1)^m / (m! (m+n)!) (x/2)^(2m+n)
    term = half**n / _FACTORIAL[n]
    total = term.copy()
    q = -(half * half)
    for m in range(1, 60):
        term = term * q / (m * (m + n))
        total += term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1e-30)):
            break
    if np.ndim(x) == 0:
        return float(total)
    return total


def bessel_j1_prime(x):
    """First derivative of J_1: J_1'(x) = (J_0(x) - J_2(x)) / 2."""
    return 0.5 * (bessel_j(0, x) - bessel_j(2, x))


def bessel_j1_second(x):
    """Second derivative of J_1: J_1''(x) = (J_3(x) - 3 J_1(x)) / 4."""
    return 0.25 * (bessel_j(3, x) - 3.0 * bessel_j(1, x))


def second_derivative_midpoint(f_prev, f_curr, f_next, dt):
    """Three-point (midpoint) second derivative: (f- - 2 f0 + f+) / dt^2.

    Exact for quadratics; O(dt^2) otherwise.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    return (f_prev - 2.0 * f_curr + f_next) / (dt * dt)


def first_derivative_midpoint(f_prev, f_next, dt):
    """Centered first derivative over the same three-level stencil."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    return (f_next - f_prev) / (2.0 * dt)


def eigh_symmetric(m, tol=1e-14, max_sweeps=50):
    """Eigendecomposition of a small real symmetric matrix by cyclic Jacobi.

    Parameters
    ----------
    m : (n, n) array_like, n <= 16
        Real symmetric matrix (symmetry checked to 1e-12 relative).

    Returns
    -------
    (eigenvalues, eigenvectors)
        Eigenvalues ascending; eigenvectors as orthonormal columns, so
        ``m @ v[:, k] == w[k] * v[:, k]``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > 16:
        raise ValueError("eigh_symmetric is meant for small matrices (n <= 16)")
    scale = np.max(np.abs(a)) or 1.0
    if np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                cos = 1.0 / math.hypot(t, 1.0)
                sin = t * cos
                rot = np.array([[cos, sin], [-sin, cos]])
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _next_pow2(n):
    p = 1
    while p < n:
        p <<= 1
    return p


def fft_radix2(x):
    """Iterative radix-2 decimation-in-time FFT (unnormalized, forward).

    ``len(x)`` must be a power of two.  Returns the complex transform.
    """
    x = np.asarray(x, dtype=complex)
    n = x.size
    if n == 0 or n & (n - 1):
        raise ValueError("fft_radix2 requires a power-of-two length")
    levels = n.bit_length() - 1
    # bit-reversal permutation
    idx = np.arange(n)
    rev = np.zeros(n, dtype=int)
    for _ in range(levels):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    out = x[rev]
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(-1, size)
        odd = blocks[:, half:] * tw
        even = blocks[:, :half].copy()
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        size *= 2
    return out


@dataclass(frozen=True)
class Spectrum:
    """One-sided amplitude spectrum on a uniform frequency axis.

    ``amplitudes[k]`` follows the single-sided convention
    ``2 |X_k| / n`` for interior bins and ``|X_k| / n`` for the DC and
    Nyquist bins, where ``n`` is the *unpadded* sample count, so an
    on-bin unit sinusoid reports amplitude 1.
    """

    frequencies: np.ndarray  # Hz, strictly increasing, uniform
    amplitudes: np.ndarray   # non-negative magnitudes
    df: float                # bin width (Hz)

    def __post_init__(self):
        if self.frequencies.shape != self.amplitudes.shape:
            raise ValueError("frequency and amplitude arrays must match")
        if self.frequencies.size >= 2:
            steps = np.diff(self.frequencies)
            if np.any(steps <= 0) or np.max(np.abs(steps - self.df)) > 1e-9 * self.df:
                raise ValueError("frequency axis must increase uniformly by df")


def dft(samples, dt, min_size=None):
    """One-sided amplitude spectrum of a real time series.

    The series is zero-padded to a power of two (at least ``min_size``
    when given); the bin width 1/(n_pad * dt) is reported accordingly.

    Requires at least 8 samples and dt > 0.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size < 8:
        raise ValueError("dft needs a 1-D series of at least 8 samples")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    n = x.size
    n_pad = _next_pow2(n)
    if min_size is not None:
        n_pad = max(n_pad, _next_pow2(min_size))
    padded = np.zeros(n_pad)
    padded[:n] = x
    spec = fft_radix2(padded)[: n_pad // 2 + 1]
    amps = np.abs(spec) / n
    amps[1:-1] *= 2.0
    df = 1.0 / (n_pad * dt)
    return Spectrum(frequencies=df * np.arange(n_pad // 2 + 1), amplitudes=amps, df=df)
