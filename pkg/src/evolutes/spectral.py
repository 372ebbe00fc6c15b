"""Trigonometric interpolation on the uniform periodic grid t_j = 2 pi j / N.

Sample arrays have the grid on axis 0 (shape ``(N,)`` or ``(N, d)``).  For even
``N`` the Nyquist mode is kept as a pure cosine, so odd derivatives of it
vanish on the grid and the interpolant is real everywhere.
"""

from __future__ import annotations

import numpy as np


def grid(n: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


def _multiplier(n: int, order: int) -> np.ndarray:
    k = np.arange(n // 2 + 1)
    mult = (1j * k) ** order
    if order % 2 == 1 and n % 2 == 0:
        mult[-1] = 0.0
    return mult


def _bcast(a: np.ndarray, ndim: int) -> np.ndarray:
    return a.reshape(a.shape + (1,) * (ndim - 1))


# Coefficients below this fraction of the largest one are rounding noise; they
# are dropped before differentiating so that k^m does not amplify them.
NOISE_FLOOR = 1e-15


def _denoise(F: np.ndarray) -> np.ndarray:
    mag = np.abs(F)
    return np.where(mag < NOISE_FLOOR * mag.max(axis=0, keepdims=True), 0.0, F)


def derivative(values, order: int = 1) -> np.ndarray:
    """Spectral derivative of periodic samples, returned on the same grid."""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    if order == 0:
        return values.copy()
    F = _denoise(np.fft.rfft(values, axis=0))
    F *= _bcast(_multiplier(n, order), values.ndim)
    return np.fft.irfft(F, n=n, axis=0)


def refine(values, factor: int, order: int = 0) -> np.ndarray:
    """Evaluate the interpolant (or a derivative) on the grid of size factor*N."""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    m = factor * n
    F = np.fft.rfft(values, axis=0)
    if order:
        F = _denoise(F)
    if n % 2 == 0:
        F[-1] = F[-1] / 2.0
    G = np.zeros((m // 2 + 1,) + values.shape[1:], dtype=complex)
    G[: n // 2 + 1] = F
    k = np.arange(m // 2 + 1)
    mult = (1j * k) ** order
    G *= _bcast(mult, values.ndim)
    return np.fft.irfft(G, n=m, axis=0) * factor


class Interpolant:
    """Fourier interpolant of periodic samples, evaluable at arbitrary t."""

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        self.n = values.shape[0]
        self.shape = values.shape[1:]
        self.coeffs = np.fft.rfft(values, axis=0)
        w = np.full(self.n // 2 + 1, 2.0)
        w[0] = 1.0
        if self.n % 2 == 0:
            w[-1] = 1.0
        self._weights = w / self.n

    def __call__(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1)
        k = np.arange(self.n // 2 + 1)
        coeffs = _denoise(self.coeffs) if order else self.coeffs
        scaled = coeffs * _bcast(self._weights * (1j * k) ** order, self.coeffs.ndim)
        out = np.empty((flat.size,) + self.shape)
        # chunked to bound the size of the exponential matrix
        for lo in range(0, flat.size, 2048):
            E = np.exp(1j * np.outer(flat[lo : lo + 2048], k))
            out[lo : lo + 2048] = np.real(np.tensordot(E, scaled, axes=(1, 0)))
        return out.reshape(t.shape + self.shape)

    def derivative(self, order: int = 1) -> "Interpolant":
        g = Interpolant.__new__(Interpolant)
        g.n, g.shape, g._weights = self.n, self.shape, self._weights
        g.coeffs = self.coeffs * _bcast(_multiplier(self.n, order), self.coeffs.ndim)
        return g

    def integral(self, t):
        """Integral from 0 to t of the interpolant (exact for the trig polynomial)."""
        t = np.asarray(t, dtype=float)
        k = np.arange(self.n // 2 + 1)
        mean = np.real(self.coeffs[0]) / self.n
        inv = np.zeros(k.size, dtype=complex)
        inv[1:] = 1.0 / (1j * k[1:])
        g = Interpolant.__new__(Interpolant)
        g.n, g.shape, g._weights = self.n, self.shape, self._weights
        g.coeffs = self.coeffs * _bcast(inv, self.coeffs.ndim)
        return np.multiply.outer(t, mean) + g(t) - g(0.0)


def tail_ratio(values) -> float:
    """Energy of the top quartile of modes relative to the total energy."""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    F = np.fft.rfft(values, axis=0)
    energy = np.abs(F) ** 2
    if energy.ndim > 1:
        energy = energy.sum(axis=tuple(range(1, energy.ndim)))
    energy[1:-1] *= 2.0
    total = energy.sum()
    if total == 0:
        return 0.0
    return float(energy[int(np.ceil(0.375 * n)) :].sum() / total)
