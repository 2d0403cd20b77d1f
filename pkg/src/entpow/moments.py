"""Haar-average building blocks for product-state input ensembles.

The k-fold average of a Haar-random pure state is the normalized symmetric
projector; for a product of two independent Haar states the 2nd and 4th
moment operators are weighted products of partial symmetrizers acting on the
odd / even positions of the copy space.  Prefactors are kept as exact
rationals until a final scalar is assembled, because the variance formula
subtracts two nearly equal quantities for weakly entangling operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .linalg import SubsystemLayout
from .permutations import GroupSum, realize_sum, realized_trace, sym_projector

__all__ = [
    "moment_constants",
    "pure_state_haar_average",
    "MomentState",
    "omega",
]

ODD_POSITIONS = {2: (1, 3), 4: (1, 3, 5, 7)}
EVEN_POSITIONS = {2: (2, 4), 4: (2, 4, 6, 8)}


def moment_constants(d: int) -> tuple[Fraction, Fraction]:
    """Second- and fourth-moment normalization constants for dimension d.

    Returns ``(C_d, D_d)`` with ``C_d = 1/(d(d+1))`` and
    ``D_d = 1/(d(d+1)(d+2)(d+3))``, both exact.
    """
    d = int(d)
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    c = Fraction(1, d * (d + 1))
    dd = Fraction(1, d * (d + 1) * (d + 2) * (d + 3))
    return c, dd


def pure_state_haar_average(d: int, kappa: int) -> tuple[GroupSum, Fraction]:
    """Average of ``|psi><psi|^(x kappa)`` over Haar-random ``|psi>`` in C^d.

    Returns ``(P_sym, 1/binom(d+kappa-1, kappa))``: the full symmetrizer over
    S_kappa and the exact normalization making the realized matrix unit-trace.
    """
    d = int(d)
    kappa = int(kappa)
    if d < 1 or kappa < 1:
        raise ValueError("need d >= 1 and kappa >= 1")
    proj = sym_projector(range(1, kappa + 1), kappa)
    return proj, Fraction(1, comb(d + kappa - 1, kappa))


@dataclass(frozen=True)
class MomentState:
    """Ensemble-averaged copies of a random product state, in symbolic form.

    ``prefactor * sum`` realizes to a positive semidefinite unit-trace matrix
    on the alternating layout; ``order`` is the number of copies of the
    bipartite state (2 or 4).  Order 4 on anything beyond two qubits should
    never be realized densely; it exists to feed the trace engine.
    """

    order: int
    prefactor: Fraction
    sum: GroupSum
    layout: SubsystemLayout

    def realize(self) -> np.ndarray:
        """Dense matrix on (d1*d2)^order dimensions. Feasible for small dims only."""
        if self.layout.size > 4096:
            raise ValueError(
                f"refusing to realize a {self.layout.size}-dimensional moment state "
                "densely; consume the symbolic sum through the trace engine instead"
            )
        return float(self.prefactor) * realize_sum(self.sum, self.layout)

    def trace(self) -> Fraction:
        """Exact trace of the realized matrix (always 1 by construction)."""
        return self.prefactor * realized_trace(self.sum, self.layout)


def omega(order: int, d1: int, d2: int) -> MomentState:
    """Moment state of a Haar-random product input on C^d1 (x) C^d2.

    Order 2 is ``(2!)^2 C_d1 C_d2 P+_13 P+_24`` on positions 1..4; order 4 is
    ``(4!)^2 D_d1 D_d2 P+_1357 P+_2468`` on positions 1..8.  Odd positions
    carry d1, even positions carry d2.
    """
    if order not in (2, 4):
        raise ValueError(f"order must be 2 or 4, got {order}")
    c1, dd1 = moment_constants(d1)
    c2, dd2 = moment_constants(d2)
    kappa = 2 * order
    odd = sym_projector(ODD_POSITIONS[order], kappa)
    even = sym_projector(EVEN_POSITIONS[order], kappa)
    if order == 2:
        prefactor = Fraction(4) * c1 * c2
    else:
        prefactor = Fraction(576) * dd1 * dd2
    return MomentState(
        order=order,
        prefactor=prefactor,
        sum=odd * even,
        layout=SubsystemLayout.bipartite_copies(d1, d2, order),
    )
