"""Cross-validation suite for the exact engine, the closed forms, and the
Monte Carlo oracle.

Each criterion function returns a list of :class:`CheckLine` comparing a
computed value against an independent expectation at a pinned tolerance.
``run`` executes the quick set (closed-form benchmarks, vanishing cases,
ratio constants, landscape bounds) or the full set (adding the dense/cycle
oracle equivalence, Monte Carlo concordance, the controlled-shift parity
study, and the randomized property suites).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import engine, gates, montecarlo
from .linalg import dagger, kron
from .permutations import (
    Permutation,
    identity,
    realize,
    realize_sum,
    realized_trace,
    sym_projector,
)

__all__ = ["CheckLine", "QUICK_CRITERIA", "FULL_CRITERIA", "run"]

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class CheckLine:
    """One expected-vs-computed comparison at an absolute tolerance."""

    criterion: str
    name: str
    expected: float
    computed: float
    tol: float

    @property
    def delta(self) -> float:
        return abs(self.computed - self.expected)

    @property
    def passed(self) -> bool:
        return self.delta <= self.tol


def _table2_gates() -> list[tuple[str, np.ndarray, float, float]]:
    sqrt5 = math.sqrt(5.0)
    return [
        ("cnot", gates.build("cnot"), 2.0 / 9.0, 2.0 * math.sqrt(11.0) / 45.0),
        ("b-gate", gates.build("kak", b1=math.pi / 4, b2=math.pi / 8, b3=0.0),
         2.0 / 9.0, math.sqrt(7.0 / 5.0) / 9.0),
        ("sqrt-swap", gates.build("swap_alpha", alpha=0.5), 1.0 / 6.0, 1.0 / (3.0 * sqrt5)),
        ("f4", gates.build("f4"), 1.0 / 9.0, math.sqrt(11.0) / 45.0),
    ]


def criterion_table2() -> list[CheckLine]:
    """Benchmark two-qubit gates on both exact paths (budget: < 5 s)."""
    lines = []
    for name, u, ep_ref, epd_ref in _table2_gates():
        lines.append(CheckLine("1-table2", f"{name} ep", ep_ref, engine.ep_exact(u, 2, 2), 1e-9))
        lines.append(CheckLine(
            "1-table2", f"{name} epd dense", epd_ref, engine.epd_exact_dense(u, 2, 2), 1e-9))
        lines.append(CheckLine(
            "1-table2", f"{name} epd cycle", epd_ref, engine.epd_exact_cycle(u, 2, 2), 1e-9))
    return lines


def criterion_eta_ratios() -> list[CheckLine]:
    """Deviation-to-power ratios from engine values over 20-point sweeps."""
    dev_cu = 0.0
    for theta in np.linspace(0.2, 2 * math.pi - 0.2, 20):
        u = gates.build("cu", theta=float(theta), alpha=0.0, beta=0.0, delta=0.0)
        eta = engine.epd_exact_dense(u, 2, 2) / engine.ep_exact(u, 2, 2)
        dev_cu = max(dev_cu, abs(eta - gates.ETA_CU))
    dev_sa = 0.0
    for alpha in np.linspace(0.05, 0.95, 20):
        u = gates.build("swap_alpha", alpha=float(alpha))
        eta = engine.epd_exact_dense(u, 2, 2) / engine.ep_exact(u, 2, 2)
        dev_sa = max(dev_sa, abs(eta - gates.ETA_SWAP_ALPHA))
    dev_is = 0.0
    for theta in np.linspace(0.2, math.pi, 20):
        u = gates.build("iswap", theta=float(theta), phi=0.4)
        eta = engine.epd_exact_dense(u, 2, 2) / engine.ep_exact(u, 2, 2)
        dev_is = max(dev_is, abs(eta - gates.iswap_eta(float(theta))))
    return [
        CheckLine("2-ratios", "cu eta vs sqrt(11)/5", 0.0, dev_cu, 1e-9),
        CheckLine("2-ratios", "swap_alpha eta vs 2 sqrt(5)/5", 0.0, dev_sa, 1e-9),
        CheckLine("2-ratios", "iswap eta vs theta formula", 0.0, dev_is, 1e-9),
    ]


def criterion_vanishing(seed: int = DEFAULT_SEED) -> list[CheckLine]:
    """Identity, swap, and product unitaries must have zero EP and EPD."""
    rng = np.random.default_rng(seed)
    worst_ep = 0.0
    worst_epd = 0.0
    cases: list[tuple[np.ndarray, int, int]] = []
    for d in (2, 3, 4):
        cases.append((np.eye(d * d, dtype=complex), d, d))
        cases.append((gates.build("swap", d=d), d, d))
    for k in range(10):
        d1, d2 = (2, 2) if k % 2 == 0 else (2, 3)
        u = kron(montecarlo.haar_unitary(d1, rng), montecarlo.haar_unitary(d2, rng))
        cases.append((u, d1, d2))
    for u, d1, d2 in cases:
        worst_ep = max(worst_ep, engine.ep_exact(u, d1, d2))
        worst_epd = max(worst_epd, engine.epd_exact_cycle(u, d1, d2))
    return [
        CheckLine("3-vanishing", "max ep over non-entangling set", 0.0, worst_ep, 1e-10),
        CheckLine("3-vanishing", "max epd over non-entangling set", 0.0, worst_epd, 1e-10),
    ]


def _catalog_two_qubit() -> list[tuple[str, np.ndarray]]:
    return [
        ("cnot", gates.build("cnot")),
        ("cp(2.2)", gates.build("cp", theta=2.2)),
        ("cu(1.3,0.5,0.7,0.2)", gates.build("cu", theta=1.3, alpha=0.5, beta=0.7, delta=0.2)),
        ("swap_alpha(0.3)", gates.build("swap_alpha", alpha=0.3)),
        ("swap_alpha(0.5)", gates.build("swap_alpha", alpha=0.5)),
        ("iswap(2.5,0.7)", gates.build("iswap", theta=2.5, phi=0.7)),
        ("kak(0.55,0.2,0.1)", gates.build("kak", b1=0.55, b2=0.2, b3=0.1)),
        ("swap", gates.build("swap", d=2)),
        ("gcx(2)", gates.build("gcx", d=2)),
        ("f4", gates.build("f4")),
    ]


def criterion_oracle_equivalence(seed: int = DEFAULT_SEED, n_random: int = 25) -> list[CheckLine]:
    """Cycle-reduction EPD against the dense 4-copy oracle (budget: < 60 s)."""
    rng = np.random.default_rng(seed)
    dev_random = 0.0
    for _ in range(n_random):
        u = montecarlo.haar_unitary(4, rng)
        dev_random = max(
            dev_random,
            abs(engine.epd_exact_cycle(u, 2, 2) - engine.epd_exact_dense(u, 2, 2)),
        )
    dev_catalog = 0.0
    for _, u in _catalog_two_qubit():
        dev_catalog = max(
            dev_catalog,
            abs(engine.epd_exact_cycle(u, 2, 2) - engine.epd_exact_dense(u, 2, 2)),
        )
    return [
        CheckLine("4-oracle", f"max |cycle - dense| over {n_random} random SU(4)",
                  0.0, dev_random, 1e-9),
        CheckLine("4-oracle", "max |cycle - dense| over catalog", 0.0, dev_catalog, 1e-9),
    ]


def criterion_mc_concordance(seed: int = DEFAULT_SEED, samples: int = 100_000) -> list[CheckLine]:
    """Monte Carlo estimates within 4 standard errors of engine values (< 60 s)."""
    gcx3 = gates.build("gcx", d=3)
    targets = [
        ("cnot", gates.build("cnot"), 2, 2),
        ("sqrt-swap", gates.build("swap_alpha", alpha=0.5), 2, 2),
        ("iswap(pi/2,0)", gates.build("iswap", theta=math.pi / 2, phi=0.0), 2, 2),
        ("gcx(3)", gcx3, 3, 3),
    ]
    lines = []
    for name, u, d1, d2 in targets:
        ep = engine.ep_exact(u, d1, d2)
        if d1 * d2 <= engine.DENSE_FOUR_COPY_LIMIT:
            epd = engine.epd_exact_dense(u, d1, d2)
        else:
            epd = engine.epd_exact_cycle(u, d1, d2)
        est = montecarlo.estimate_ep_epd(
            u, montecarlo.SamplerConfig(seed=seed, samples=samples, dims=(d1, d2)))
        lines.append(CheckLine(
            "5-montecarlo", f"{name} ep pull (se units)",
            0.0, abs(est.mean - ep) / est.se_mean, 4.0))
        lines.append(CheckLine(
            "5-montecarlo", f"{name} epd pull (se units)",
            0.0, abs(est.std - epd) / est.se_std, 4.0))
    return lines


def criterion_gcx_family(max_d: int = 6) -> list[CheckLine]:
    """Controlled-shift EP law and the even/odd deviation branches (< 5 min).

    The scaled squared deviation q(d) = epd^2 (d+1)^4 (d+2)^2 (d+3)^2 must
    follow the even-d polynomial 8d^5+34d^4+8d^3-38d^2-4d, with odd d shifted
    down by exactly 2d(d+1)^2.
    """
    lines = []
    for d in range(2, max_d + 1):
        u = gates.build("gcx", d=d)
        ep = engine.ep_exact(u, d, d)
        epd = engine.epd_exact_cycle(u, d, d)
        lines.append(CheckLine(
            "6-gcx", f"d={d} ep vs d(d-1)/(d+1)^2", d * (d - 1) / (d + 1) ** 2, ep, 1e-9))
        if d == 2:
            lines.append(CheckLine(
                "6-gcx", "d=2 epd^2 vs 44/2025", 44.0 / 2025.0, epd**2, 1e-9))
        scale = (d + 1) ** 4 * (d + 2) ** 2 * (d + 3) ** 2
        q = epd**2 * scale
        branch = 8 * d**5 + 34 * d**4 + 8 * d**3 - 38 * d**2 - 4 * d
        if d % 2 == 1:
            branch -= 2 * d * (d + 1) ** 2
        parity = "odd" if d % 2 else "even"
        lines.append(CheckLine(
            "6-gcx", f"d={d} scaled epd^2 vs {parity} branch", float(branch), q, 1e-6))
        lines.append(CheckLine(
            "6-gcx", f"d={d} closed form epd", math.sqrt(gates.gcx_epd_squared(d)), epd, 1e-9))
    return lines


def criterion_kak_landscape(resolution: int = 21) -> list[CheckLine]:
    """Landscape bounds and maxima locations on the canonical cube."""
    scan = gates.kak_scan(resolution)
    ep, epd = scan["ep"], scan["epd"]
    ep_max_ref = 2.0 / 9.0
    epd_max_ref = 1.0 / (3.0 * math.sqrt(5.0))
    both = np.sum((ep > ep_max_ref - 1e-6) & (epd > epd_max_ref - 1e-6))
    corner = (scan["b1"] == scan["b1"].max()) & (scan["b2"] == 0.0) & (scan["b3"] == 0.0)
    center = np.full(3, math.pi / 8)
    at_center = (
        np.isclose(scan["b1"], center[0]) & np.isclose(scan["b2"], center[1])
        & np.isclose(scan["b3"], center[2])
    )
    lines = [
        CheckLine("7-landscape", "max ep attained", ep_max_ref, float(ep.max()), 1e-9),
        CheckLine("7-landscape", "max epd attained", epd_max_ref, float(epd.max()), 1e-9),
        CheckLine("7-landscape", "ep bound excess", 0.0, float(max(ep.max() - ep_max_ref, 0.0)), 1e-9),
        CheckLine("7-landscape", "epd bound excess", 0.0,
                  float(max(epd.max() - epd_max_ref, 0.0)), 1e-9),
        CheckLine("7-landscape", "points attaining both maxima", 0.0, float(both), 0.5),
        CheckLine("7-landscape", "ep max at (pi/4,0,0)", ep_max_ref,
                  float(ep[corner][0]) if corner.any() else -1.0, 1e-9),
    ]
    if at_center.any():
        lines.append(CheckLine(
            "7-landscape", "epd max at (pi/8,pi/8,pi/8)", epd_max_ref,
            float(epd[at_center][0]), 1e-9))
    return lines


def criterion_property_suites(seed: int = DEFAULT_SEED, cases: int = 200) -> list[CheckLine]:
    """Randomized structural identities; any failure is a defect."""
    rng = np.random.default_rng(seed)

    failures_group = 0
    for _ in range(cases):
        kappa = int(rng.integers(3, 7))
        d = int(rng.integers(2, 4)) if kappa <= 5 else 2
        dims = (d,) * kappa
        p = Permutation(rng.permutation(kappa) + 1)
        q = Permutation(rng.permutation(kappa) + 1)
        vp, vq = realize(p, dims), realize(q, dims)
        ok = np.allclose(vp @ vq, realize(p.compose(q), dims), atol=1e-12)
        ok &= np.allclose(dagger(vp), realize(p.inverse(), dims), atol=1e-12)
        ok &= np.allclose(realize(identity(kappa), dims), np.eye(d**kappa), atol=1e-12)
        failures_group += 0 if ok else 1

    failures_proj = 0
    for _ in range(cases):
        kappa = int(rng.integers(2, 7))
        # Symbolic products scale as (|X|!)^2 terms; cap the support size.
        size = int(rng.integers(2, min(kappa, 4) + 1))
        support = list(rng.choice(np.arange(1, kappa + 1), size=size, replace=False))
        plus = sym_projector(support, kappa, +1)
        minus = sym_projector(support, kappa, -1)
        ok = (plus * plus) == plus
        ok &= (minus * minus) == minus
        ok &= (plus * minus).is_zero()
        failures_proj += 0 if ok else 1

    failures_trace = 0
    for d in (2, 3):
        for kappa in (2, 3, 4):
            sym = sym_projector(range(1, kappa + 1), kappa)
            if realized_trace(sym, (d,) * kappa) != math.comb(d + kappa - 1, kappa):
                failures_trace += 1

    failures_cycle = 0
    for _ in range(cases):
        kappa = int(rng.integers(2, 6))
        d = int(rng.integers(2, 4))
        factors = [
            rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for _ in range(kappa)
        ]
        p = Permutation(rng.permutation(kappa) + 1)
        big = factors[0]
        for f in factors[1:]:
            big = kron(big, f)
        dense = np.trace(big @ realize(p, (d,) * kappa))
        fast = engine.cycle_trace(factors, p)
        if abs(dense - fast) > 1e-9 * max(1.0, abs(dense)):
            failures_cycle += 1

    return [
        CheckLine("8-properties", f"group-law failures / {cases}", 0.0, float(failures_group), 0.5),
        CheckLine("8-properties", f"projector-algebra failures / {cases}",
                  0.0, float(failures_proj), 0.5),
        CheckLine("8-properties", "symmetric-subspace trace failures",
                  0.0, float(failures_trace), 0.5),
        CheckLine("8-properties", f"cycle-trace failures / {cases}",
                  0.0, float(failures_cycle), 0.5),
    ]


QUICK_CRITERIA = (
    criterion_table2,
    criterion_eta_ratios,
    criterion_vanishing,
    criterion_kak_landscape,
)

FULL_CRITERIA = QUICK_CRITERIA + (
    criterion_oracle_equivalence,
    criterion_mc_concordance,
    criterion_gcx_family,
    criterion_property_suites,
)


def run(level: str = "quick", seed: int = DEFAULT_SEED) -> tuple[list[CheckLine], dict[str, float]]:
    """Execute the chosen criteria set; returns all lines and per-criterion times."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    criteria = QUICK_CRITERIA if level == "quick" else FULL_CRITERIA
    lines: list[CheckLine] = []
    timings: dict[str, float] = {}
    for fn in criteria:
        t0 = time.perf_counter()
        label = fn.__name__.removeprefix("criterion_")
        try:
            if fn in (criterion_vanishing, criterion_oracle_equivalence,
                      criterion_mc_concordance, criterion_property_suites):
                block = fn(seed=seed)
            else:
                block = fn()
        except Exception as exc:  # a crashing criterion is a failed criterion
            block = [CheckLine(label, f"raised {type(exc).__name__}: {exc}",
                               0.0, math.inf, 0.0)]
        elapsed = time.perf_counter() - t0
        lines.extend(block)
        if block:
            timings[block[0].criterion] = elapsed
    return lines, timings
