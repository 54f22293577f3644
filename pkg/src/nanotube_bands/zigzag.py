"""Scalar Jacobi channels of the zigzag tube.

The tube Hamiltonian splits over circumferential momenta into N doubly
infinite tridiagonal chains.  Channel k has hopping ``2 exp(-i pi k/N) c_k``
on every second bond (the other bonds are 1) and on-site energies
``t * v[i]``.  A diagonal gauge strips the hopping phases without touching
the spectrum, leaving the nonnegative coefficients stored here.

Bond indexing: ``a[i]`` couples chain sites i and i+1 (0-based); bonds with
even i are the unit bonds inside a dimer, bonds with odd i carry ``2|c_k|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FLAT_CHANNEL_TOL, ZigzagModel


@dataclass(frozen=True)
class ScalarPeriodicJacobi:
    """2p-periodic scalar Jacobi coefficients for one zigzag channel.

    a : nonnegative off-diagonals, length 2p (a[2p-1] is the wrap-around bond)
    v : diagonal, length 2p, already scaled by the coupling t
    c_k : signed channel constant cos(b + pi*k/N), kept for reporting
    """

    p: int
    a: np.ndarray
    v: np.ndarray
    c_k: float | None = None

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if a.shape != (2 * self.p,) or v.shape != (2 * self.p,):
            raise ValueError(f"need 2p = {2 * self.p} off-diagonals and diagonals")
        a.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)

    @property
    def is_flat(self) -> bool:
        return bool(np.min(self.a) < FLAT_CHANNEL_TOL)


def channel_offdiagonals(model: ZigzagModel, k: int) -> np.ndarray:
    """Complex pre-gauge bond amplitudes of channel k over one period 2p."""
    p = model.potential.p
    c_k = model.channel_constant(k)
    amp = 2.0 * np.exp(-1j * np.pi * k / model.N) * c_k
    bonds = np.ones(2 * p, dtype=complex)
    bonds[1::2] = amp
    return bonds


def gauge_reduce(offdiag, diag, c_k: float | None = None) -> ScalarPeriodicJacobi:
    """Replace complex off-diagonals by their moduli (spectrum preserving).

    The diagonal unitary u_n = prod conj(a_j/|a_j|) conjugates the chain with
    complex bonds into the chain with |bonds|; zero bonds are left alone.
    """
    a = np.abs(np.asarray(offdiag, dtype=complex))
    v = np.asarray(diag, dtype=float)
    if a.shape != v.shape or a.ndim != 1 or a.size % 2 != 0:
        raise ValueError("off-diagonal and diagonal must be 1-d arrays of equal even length")
    p = a.size // 2
    if c_k is None and p >= 1:
        evens = a[1::2]
        if np.allclose(a[0::2], 1.0, atol=1e-12) and np.allclose(evens, evens[0], atol=1e-12):
            c_k = float(evens[0] / 2.0)
    return ScalarPeriodicJacobi(p=p, a=a, v=v, c_k=c_k)


def decompose_zigzag(model: ZigzagModel) -> list[ScalarPeriodicJacobi]:
    """All N gauge-reduced channels, k = 1..N."""
    p = model.potential.p
    diag = model.t * model.potential.period_values()
    channels = []
    for k in range(1, model.N + 1):
        channels.append(gauge_reduce(channel_offdiagonals(model, k), diag, c_k=model.channel_constant(k)))
    return channels


def channel_symmetry_map(N: int, b: float, k: int) -> dict[str, tuple[int, float]]:
    """Channel identifications: shifting b by pi/N advances k, flipping b mirrors k.

    Returns the partner (k', b') such that channel k at the transformed field
    equals channel k' at field b' = b.
    """
    if not 1 <= k <= N:
        raise ValueError(f"channel index k must lie in 1..{N}, got {k}")
    shift_k = k % N + 1
    reflect_k = (N - k) % N
    if reflect_k == 0:
        reflect_k = N
    return {"shift": (shift_k, b), "reflect": (reflect_k, b)}
