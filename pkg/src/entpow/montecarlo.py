"""Seeded Monte Carlo ground truth for EP and EPD.

Haar-random product states are pushed through the operator and the mean and
standard deviation of the output linearized entropy estimate EP and EPD.
The random stream is counter-based: sample ``i`` always reads the same fixed
Philox blocks keyed by the seed, so estimates are reproducible bit-for-bit,
independent of chunking, and disjoint index ranges can be drawn in parallel.
Normals come from Box-Muller on the 53-bit uniforms of the counter stream,
which keeps the mapping branch-free and portable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import EpEpdResult
from .linalg import PureState, assert_unitary

__all__ = [
    "SamplerConfig",
    "McEstimate",
    "sample_haar_state",
    "haar_unitary",
    "estimate_ep_epd",
    "entropy_samples",
]

_INV_2_53 = float(2.0**-53)


@dataclass(frozen=True)
class SamplerConfig:
    """Reproducible sampling plan: identical configs give identical estimates."""

    seed: int
    samples: int
    dims: tuple[int, int]

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("need at least 2 samples for a deviation estimate")
        d1, d2 = self.dims
        if d1 < 1 or d2 < 1:
            raise ValueError(f"invalid dims {self.dims}")


@dataclass(frozen=True)
class McEstimate:
    """Sample mean/deviation of the output entanglement with standard errors.

    ``std`` uses the unbiased (n-1) estimator; ``se_std`` is the asymptotic
    normal approximation ``std / sqrt(2(n-1))``, adequate for the bounded
    entropy distribution at the sample counts used here.
    """

    mean: float
    std: float
    se_mean: float
    se_std: float
    n: int

    def as_result(self) -> EpEpdResult:
        return EpEpdResult(
            ep=self.mean,
            epd=self.std,
            method="monte-carlo",
            stderr=max(self.se_mean, self.se_std),
        )


def sample_haar_state(d: int, rng: np.random.Generator) -> PureState:
    """One Haar-random pure state on C^d: normalized complex Gaussian vector."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(z / np.linalg.norm(z), (d,))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def _blocks_per_sample(d1: int, d2: int) -> int:
    words = 2 * (d1 + d2)
    return -(-words // 4)


def _product_batch(seed: int, start: int, count: int, d1: int, d2: int):
    """Haar product states for sample indices [start, start+count).

    Sample ``i`` consumes exactly its own Philox blocks, so any partition of
    the index range yields the identical states.
    """
    bps = _blocks_per_sample(d1, d2)
    bg = np.random.Philox(key=seed, counter=start * bps)
    raw = bg.random_raw(count * bps * 4).reshape(count, bps * 4)
    words = raw[:, : 2 * (d1 + d2)]
    u1 = ((words[:, 0::2] >> np.uint64(11)) + np.uint64(1)).astype(float) * _INV_2_53
    u2 = (words[:, 1::2] >> np.uint64(11)).astype(float) * _INV_2_53
    # Box-Muller pair per complex amplitude: radius from u1, phase from u2.
    amps = np.sqrt(-2.0 * np.log(u1)) * np.exp(2j * np.pi * u2)
    psi1 = amps[:, :d1]
    psi2 = amps[:, d1:]
    psi1 = psi1 / np.linalg.norm(psi1, axis=1, keepdims=True)
    psi2 = psi2 / np.linalg.norm(psi2, axis=1, keepdims=True)
    return psi1, psi2


def entropy_samples(u: np.ndarray, cfg: SamplerConfig, chunk: int = 65536) -> np.ndarray:
    """Output linearized entropies of all sampled product inputs, in index order."""
    d1, d2 = cfg.dims
    u = np.asarray(u, dtype=complex)
    if u.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"operator shape {u.shape} != dims product {d1 * d2}")
    assert_unitary(u, name="input operator")
    out = np.empty(cfg.samples, dtype=float)
    for start in range(0, cfg.samples, chunk):
        count = min(chunk, cfg.samples - start)
        psi1, psi2 = _product_batch(cfg.seed, start, count, d1, d2)
        prod = (psi1[:, :, None] * psi2[:, None, :]).reshape(count, d1 * d2)
        mapped = prod @ u.T
        m = mapped.reshape(count, d1, d2)
        gram = np.einsum("nij,nkj->nik", m, np.conj(m))
        purity = np.real(np.einsum("nik,nik->n", gram, np.conj(gram)))
        # Entropy is nonnegative; product outputs can round to purity > 1.
        out[start : start + count] = np.maximum(1.0 - purity, 0.0)
    return out


def estimate_ep_epd(u: np.ndarray, cfg: SamplerConfig) -> McEstimate:
    """Monte Carlo estimate of EP (mean) and EPD (deviation) for one operator.

    Deterministic for a fixed config: the result is a pure function of
    ``(u, cfg)``.
    """
    values = entropy_samples(u, cfg)
    n = cfg.samples
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1))
    return McEstimate(
        mean=mean,
        std=std,
        se_mean=std / np.sqrt(n),
        se_std=std / np.sqrt(2.0 * (n - 1)),
        n=n,
    )
