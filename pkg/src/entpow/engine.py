"""Exact computation of entangling power (EP) and its deviation (EPD).

Three mutually validating routes are implemented:

* a dense 2-copy trace for EP, together with an operator-entanglement
  assembly of the same number evaluated through small tensor networks;
* a dense 4-copy evaluation of the EPD variance term, feasible only for
  ``d1*d2 <= 4`` and kept as the oracle;
* a cycle-reduction path for EPD that never materializes 8-copy operators:
  each required trace ``Tr(U^x4 V(s) U†^x4 V(t))`` is wired as a closed
  network of eight 4-leg tensors and contracted pairwise.

The 4-copy variance term is a sum of 576 permutation traces per trace word.
Terms are grouped into equivalence classes under simultaneous relabelling of
the four copies and under inversion (which conjugates the trace), so each
class is evaluated once with an exact integer multiplicity; the dense oracle
guards this reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _all_perms

import numpy as np

from .linalg import PureState, assert_unitary, contract_network, kron
from .moments import moment_constants, omega
from .permutations import (
    Permutation,
    from_cycles,
    identity,
    realize_sum,
    sym_projector,
    transposition,
)

__all__ = [
    "EpEpdResult",
    "TraceTerm",
    "linear_entropy",
    "ep_exact",
    "operator_entanglement",
    "ep_from_operator_entanglement",
    "epd_exact_dense",
    "epd_exact_cycle",
    "copy_trace",
    "cycle_trace",
    "check_zero_ep_conditions",
    "ep_epd",
    "f_trace_terms",
    "f_sum",
    "DENSE_FOUR_COPY_LIMIT",
    "CYCLE_PATH_LIMIT",
    "RADICAND_CLAMP",
]

# Memory ceilings: a dense 4-copy operator needs (d1*d2)^4 entries and the
# cycle path materializes (d1*d2)^2 matrices for the mean term.
DENSE_FOUR_COPY_LIMIT = 4
CYCLE_PATH_LIMIT = 64

# Variance radicands more negative than this indicate a bug, not roundoff.
RADICAND_CLAMP = 1e-9

# Below this entangling power the deviation vanishes identically (the two are
# zero together); skipping the 4-copy subtraction avoids returning its
# sqrt-amplified cancellation noise (~1e-8) for exactly non-entangling gates.
ZERO_EP_TOL = 1e-12


@dataclass(frozen=True)
class EpEpdResult:
    """EP/EPD pair with the method that produced it.

    ``stderr`` is zero for exact methods; for Monte Carlo estimates it is the
    larger of the two standard errors (mean and deviation).
    """

    ep: float
    epd: float
    method: str
    stderr: float = 0.0

    def __post_init__(self):
        if self.method not in ("exact-dense", "exact-cycle", "closed-form", "monte-carlo"):
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.ep < -1e-9 or self.epd < -1e-9 or self.stderr < 0:
            raise ValueError(f"negative entries in {self!r}")

    @property
    def eta(self) -> float:
        """EPD-to-EP ratio; undefined when EP vanishes."""
        if self.ep <= 0.0:
            raise ZeroDivisionError("eta is undefined at zero entangling power")
        return self.epd / self.ep


@dataclass(frozen=True)
class TraceTerm:
    """One canonical term ``coefficient * Tr(U^x4 V(sigma) U†^x4 V(tau))``."""

    sigma: Permutation
    tau: Permutation
    coefficient: Fraction


def linear_entropy(state: PureState | np.ndarray, dims=None, subsystem: int = 1) -> float:
    """Linearized entanglement entropy ``1 - Tr(rho_j^2)`` of a bipartite pure state.

    ``subsystem`` selects which reduced state is used (1 or 2); the value is
    the same either way.  Raises if the state is not normalized.
    """
    if isinstance(state, PureState):
        vec, dims = state.vector, state.dims
    else:
        if dims is None:
            raise ValueError("dims required when passing a bare vector")
        vec = np.asarray(state, dtype=complex).reshape(-1)
    d1, d2 = (int(d) for d in dims)
    if vec.size != d1 * d2:
        raise ValueError(f"vector length {vec.size} != {d1}*{d2}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state is not normalized: |psi| = {norm}")
    if subsystem not in (1, 2):
        raise ValueError("subsystem must be 1 or 2")
    m = vec.reshape(d1, d2)
    if subsystem == 2:
        m = m.T
    g = m @ np.conj(m).T
    purity = float(np.real(np.sum(g * np.conj(g))))
    return 1.0 - purity


# ---------------------------------------------------------------------------
# 2-copy machinery: EP and operator entanglement
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _two_copy_projectors(d1: int, d2: int):
    dims = (d1, d2, d1, d2)
    p13_plus = realize_sum(sym_projector([1, 3], 4, +1), dims)
    p24_plus = realize_sum(sym_projector([2, 4], 4, +1), dims)
    p13_minus = realize_sum(sym_projector([1, 3], 4, -1), dims)
    return p13_plus @ p24_plus, p13_minus


def ep_exact(u: np.ndarray, d1: int, d2: int) -> float:
    """Entangling power by the dense 2-copy permutation trace.

    Evaluates ``2 (2!)^2 C_d1 C_d2 Tr(U^x2 P+13 P+24 U†^x2 P-13)`` on the
    (d1*d2)^2-dimensional doubled space.
    """
    u = np.asarray(u, dtype=complex)
    d1, d2 = int(d1), int(d2)
    if d1 * d2 > CYCLE_PATH_LIMIT:
        raise ValueError(f"d1*d2 = {d1 * d2} exceeds the dense 2-copy limit {CYCLE_PATH_LIMIT}")
    assert_unitary(u, name="input operator")
    if u.shape[0] != d1 * d2:
        raise ValueError(f"operator dimension {u.shape[0]} != d1*d2 = {d1 * d2}")
    c1, _ = moment_constants(d1)
    c2, _ = moment_constants(d2)
    plus, minus = _two_copy_projectors(d1, d2)
    u2 = kron(u, u)
    tr = np.trace(u2 @ plus @ np.conj(u2).T @ minus)
    value = float(Fraction(8) * c1 * c2) * float(np.real(tr))
    if value < -1e-10:
        raise RuntimeError(f"entangling power evaluated to {value:.3e} < 0")
    return max(value, 0.0)


def copy_trace(
    u: np.ndarray, d1: int, d2: int, sigma: Permutation, tau: Permutation, copies: int
) -> complex:
    """``Tr(U^x copies V(sigma) U†^x copies V(tau))`` without big operators.

    Each copy of ``U`` is treated as a 4-leg tensor with legs
    (d1, d2; d1, d2); ``sigma`` and ``tau`` rewire the 2*copies single-
    subsystem legs.  Both permutations must map odd positions to odd and even
    to even so that leg dimensions match.
    """
    u = np.asarray(u, dtype=complex)
    wires = 2 * copies
    if sigma.kappa != wires or tau.kappa != wires:
        raise ValueError(f"permutations must act on {wires} positions")

    def wire_dim(w: int) -> int:
        return d1 if w % 2 == 1 else d2

    sig_inv = sigma.inverse()
    tau_inv = tau.inverse()
    uc = np.conj(u)
    nodes = []
    for k in range(1, copies + 1):
        row, col = 2 * k - 1, 2 * k
        nodes.append((
            u,
            [(("a", row), wire_dim(row)), (("a", col), wire_dim(col))],
            [(("c", sig_inv(row)), wire_dim(sig_inv(row))),
             (("c", sig_inv(col)), wire_dim(sig_inv(col)))],
        ))
        nodes.append((
            uc,
            [(("a", tau_inv(row)), wire_dim(tau_inv(row))),
             (("a", tau_inv(col)), wire_dim(tau_inv(col)))],
            [(("c", row), wire_dim(row)), (("c", col), wire_dim(col))],
        ))
    return contract_network(nodes)


def operator_entanglement(u: np.ndarray, d1: int, d2: int) -> tuple[float, float]:
    """Linear operator entanglement entropies ``(E, E~)`` of a unitary.

    ``E  = 1 - Tr(U^x2 T13 U†^x2 T13) / (d1 d2)^2`` and ``E~`` uses ``T24``
    in place of the first ``T13``.  For equal local dimensions,
    ``E~(U) = E(U S)`` with ``S`` the swap.
    """
    u = np.asarray(u, dtype=complex)
    assert_unitary(u, name="input operator")
    t13 = transposition(1, 3, 4)
    t24 = transposition(2, 4, 4)
    norm = (d1 * d2) ** 2
    e_val = 1.0 - np.real(copy_trace(u, d1, d2, t13, t13, copies=2)) / norm
    et_val = 1.0 - np.real(copy_trace(u, d1, d2, t24, t13, copies=2)) / norm
    return float(e_val), float(et_val)


def ep_from_operator_entanglement(u: np.ndarray, d1: int, d2: int) -> float:
    """EP assembled from the operator entanglement entropies.

    ``ep = d1 d2 / ((d1+1)(d2+1)) * (E + E~ + 1/(d1 d2) - 1)``; agrees with
    :func:`ep_exact` to full precision and serves as its cross-check.
    """
    e_val, et_val = operator_entanglement(u, d1, d2)
    front = (d1 * d2) / ((d1 + 1) * (d2 + 1))
    return float(front * (e_val + et_val + 1.0 / (d1 * d2) - 1.0))


# ---------------------------------------------------------------------------
# 4-copy machinery: EPD
# ---------------------------------------------------------------------------


def _sqrt_variance(variance: float) -> float:
    if variance < -RADICAND_CLAMP:
        raise RuntimeError(
            f"EPD variance is {variance:.3e} < -{RADICAND_CLAMP:.0e}; "
            "internal inconsistency between the 4-copy and 2-copy terms"
        )
    return float(np.sqrt(max(variance, 0.0)))


@lru_cache(maxsize=8)
def _four_copy_ops(d1: int, d2: int):
    dims8 = (d1, d2) * 4
    om = omega(4, d1, d2).realize()
    p13_minus = realize_sum(sym_projector([1, 3], 8, -1), dims8)
    p57_minus = realize_sum(sym_projector([5, 7], 8, -1), dims8)
    return om, p13_minus @ p57_minus


def epd_exact_dense(u: np.ndarray, d1: int, d2: int) -> float:
    """EPD by literal dense evaluation on the 4-copy space.

    Materializes the fourth-moment state on (d1*d2)^4 dimensions, so it is
    only feasible for ``d1*d2 <= 4``; use :func:`epd_exact_cycle` beyond
    that.  This path is the oracle for the cycle reduction.  Returns exactly
    0 when the entangling power vanishes (the two vanish together).
    """
    u = np.asarray(u, dtype=complex)
    d1, d2 = int(d1), int(d2)
    if d1 * d2 > DENSE_FOUR_COPY_LIMIT:
        raise ValueError(
            f"dense 4-copy evaluation needs d1*d2 <= {DENSE_FOUR_COPY_LIMIT}, "
            f"got {d1 * d2}; use the cycle path (epd_exact_cycle)"
        )
    assert_unitary(u, name="input operator")
    ep = ep_exact(u, d1, d2)
    if ep <= ZERO_EP_TOL:
        return 0.0
    om, minus_pair = _four_copy_ops(d1, d2)
    u4 = kron(kron(u, u), kron(u, u))
    second_moment = 4.0 * float(
        np.real(np.trace(u4 @ om @ np.conj(u4).T @ minus_pair))
    )
    return _sqrt_variance(second_moment - ep * ep)


def _copy_relabeling(rho: Permutation) -> Permutation:
    """Lift a permutation of the 4 copies to the 8 single-subsystem wires."""
    img = [0] * 8
    for k in range(1, 5):
        img[2 * k - 2] = 2 * rho(k) - 1
        img[2 * k - 1] = 2 * rho(k)
    return Permutation(img)


def _odd_even_permutations() -> list[Permutation]:
    """All ``nu1 o nu2`` with nu1 permuting {1,3,5,7} and nu2 permuting {2,4,6,8}."""
    odd = (1, 3, 5, 7)
    even = (2, 4, 6, 8)
    out = []
    for a in _all_perms(odd):
        for b in _all_perms(even):
            img = [0] * 8
            for src, dst in zip(odd, a):
                img[src - 1] = dst
            for src, dst in zip(even, b):
                img[src - 1] = dst
            out.append(Permutation(img))
    return out


_TAU_WORDS: dict[str, Permutation] = {
    "id": identity(8),
    "(13)": from_cycles("(13)", 8),
    "(13)(57)": from_cycles("(13)(57)", 8),
}


@lru_cache(maxsize=None)
def f_trace_terms(tau_key: str) -> tuple[TraceTerm, ...]:
    """Canonical term list for one trace word, with exact multiplicities.

    The 576 permutations ``nu1 o nu2`` are grouped under (i) simultaneous
    conjugation by copy relabellings that stabilize ``tau`` and (ii)
    inversion, which complex-conjugates the trace; summing
    ``coefficient * Re(trace)`` over the returned terms reproduces the full
    sum exactly.
    """
    tau = _TAU_WORDS[tau_key]
    liftings = [_copy_relabeling(Permutation(img)) for img in _all_perms((1, 2, 3, 4))]
    stabilizer = [r for r in liftings if r.compose(tau).compose(r.inverse()) == tau]
    classes: dict[tuple[int, ...], int] = {}
    for sigma in _odd_even_permutations():
        candidates = []
        for base in (sigma, sigma.inverse()):
            for r in stabilizer:
                candidates.append(r.compose(base).compose(r.inverse()).image)
        key = min(candidates)
        classes[key] = classes.get(key, 0) + 1
    return tuple(
        TraceTerm(sigma=Permutation(key), tau=tau, coefficient=Fraction(mult))
        for key, mult in sorted(classes.items())
    )


def f_sum(u: np.ndarray, d1: int, d2: int, tau_key: str, dedupe: bool = True) -> float:
    """The 576-term permutation-trace sum for one trace word.

    With ``dedupe=False`` every term is contracted individually (the slow
    reference used to validate the class reduction).
    """
    if tau_key not in _TAU_WORDS:
        raise ValueError(f"unknown trace word {tau_key!r}")
    tau = _TAU_WORDS[tau_key]
    if dedupe:
        total = 0.0
        for term in f_trace_terms(tau_key):
            val = copy_trace(u, d1, d2, term.sigma, tau, copies=4)
            total += float(term.coefficient) * float(np.real(val))
        return total
    total_c = 0.0 + 0.0j
    for sigma in _odd_even_permutations():
        total_c += copy_trace(u, d1, d2, sigma, tau, copies=4)
    return float(np.real(total_c))


def epd_exact_cycle(u: np.ndarray, d1: int, d2: int) -> float:
    """EPD via the cycle-reduction trace sums; no 8-copy operator is built.

    Computes ``sqrt(D_d1 D_d2 (F_id - 2 F_(13) + F_(13)(57)) - ep^2)`` where
    each F is a sum of 4-copy permutation traces contracted as tensor
    networks.  Agrees with :func:`epd_exact_dense` wherever both run, and
    returns exactly 0 when the entangling power vanishes.
    """
    u = np.asarray(u, dtype=complex)
    d1, d2 = int(d1), int(d2)
    if d1 * d2 > CYCLE_PATH_LIMIT:
        raise ValueError(f"d1*d2 = {d1 * d2} exceeds the cycle-path limit {CYCLE_PATH_LIMIT}")
    assert_unitary(u, name="input operator")
    ep = ep_exact(u, d1, d2)
    if ep <= ZERO_EP_TOL:
        return 0.0
    _, dd1 = moment_constants(d1)
    _, dd2 = moment_constants(d2)
    f_id = f_sum(u, d1, d2, "id")
    f_13 = f_sum(u, d1, d2, "(13)")
    f_1357 = f_sum(u, d1, d2, "(13)(57)")
    second_moment = float(dd1 * dd2) * (f_id - 2.0 * f_13 + f_1357)
    return _sqrt_variance(second_moment - ep * ep)


def cycle_trace(factors: list[np.ndarray], p: Permutation) -> complex:
    """``Tr((A_1 x ... x A_k) V(p))`` as a product over the cycles of ``p``.

    Each cycle contributes the trace of the ordered product of its factors
    walked backwards from the cycle's smallest element; fixed points
    contribute plain traces.  All factors must be square with one common
    dimension.
    """
    mats = [np.asarray(a, dtype=complex) for a in factors]
    if len(mats) != p.kappa:
        raise ValueError(f"{len(mats)} factors but permutation acts on {p.kappa}")
    shapes = {m.shape for m in mats}
    if len(shapes) != 1 or any(m.ndim != 2 or m.shape[0] != m.shape[1] for m in mats):
        raise ValueError(f"factors must share one square shape, got {shapes}")
    value = complex(1)
    for cyc in p.cycles(include_fixed=True):
        order = [cyc[0]] + list(reversed(cyc[1:]))
        prod = mats[order[0] - 1]
        for idx in order[1:]:
            prod = prod @ mats[idx - 1]
        value *= np.trace(prod)
    return complex(value)


# ---------------------------------------------------------------------------
# Structure checks and the method dispatcher
# ---------------------------------------------------------------------------


def check_zero_ep_conditions(u: np.ndarray, d1: int, d2: int, tol: float = 1e-10) -> dict:
    """Zero-EP commutation criteria for a bipartite unitary.

    Returns the max-norms of ``[U^x2, P+13]`` and ``[U^x2, P+13 P+24]``, the
    booleans saying whether each vanishes at ``tol``, and whether EP itself
    vanishes.  Either commutation implies zero EP; the implication is
    asserted here.
    """
    u = np.asarray(u, dtype=complex)
    assert_unitary(u, name="input operator")
    dims = (d1, d2, d1, d2)
    p13_plus = realize_sum(sym_projector([1, 3], 4, +1), dims)
    p24_plus = realize_sum(sym_projector([2, 4], 4, +1), dims)
    u2 = kron(u, u)
    comm_i = float(np.max(np.abs(u2 @ p13_plus - p13_plus @ u2)))
    pp = p13_plus @ p24_plus
    comm_ii = float(np.max(np.abs(u2 @ pp - pp @ u2)))
    ep = ep_exact(u, d1, d2)
    result = {
        "condition_i": comm_i <= tol,
        "condition_ii": comm_ii <= tol,
        "commutator_i": comm_i,
        "commutator_ii": comm_ii,
        "ep": ep,
        "ep_zero": ep <= tol,
    }
    if (result["condition_i"] or result["condition_ii"]) and not result["ep_zero"]:
        raise RuntimeError(f"zero-EP criterion violated: {result}")
    return result


def ep_epd(u: np.ndarray, d1: int, d2: int, method: str = "auto") -> EpEpdResult:
    """EP and EPD of a unitary by the requested exact route.

    ``method`` is ``"dense"``, ``"cycle"``, or ``"auto"`` (dense when the
    4-copy space fits, cycle otherwise).  Monte Carlo estimation lives in
    :mod:`entpow.montecarlo`; closed forms in :mod:`entpow.gates`.
    """
    if method == "auto":
        method = "dense" if d1 * d2 <= DENSE_FOUR_COPY_LIMIT else "cycle"
    if method == "dense":
        return EpEpdResult(ep_exact(u, d1, d2), epd_exact_dense(u, d1, d2), "exact-dense")
    if method == "cycle":
        return EpEpdResult(ep_exact(u, d1, d2), epd_exact_cycle(u, d1, d2), "exact-cycle")
    raise ValueError(f"unknown method {method!r}")
