"""Tour of the machinery underneath the exact engine.

The engine never diagonalizes anything: both EP and EPD reduce to traces of
permutation operators sandwiched between tensor powers of the gate.  This
script shows the building blocks one layer at a time: permutation algebra,
projector sums, moment states, the cycle-trace factorization, and finally a
single 4-copy trace term contracted as a tensor network.
"""

import numpy as np

from entpow import (
    GroupSum,
    build,
    from_cycles,
    moment_constants,
    omega,
    realize,
    sym_projector,
)
from entpow.engine import copy_trace, cycle_trace, f_trace_terms
from entpow.linalg import dagger, kron
from entpow.permutations import realized_trace

rng = np.random.default_rng(0)


def main():
    # Permutations act on wire labels 1..k; composition matches operator order.
    p = from_cycles("(13)(57)", 8)
    print(f"word (13)(57): sign {p.sign()}, cycles {p.cycles()}")

    # Projector algebra is exact: rational coefficients, symbolic products.
    plus = sym_projector([1, 3], 4, +1)
    minus = sym_projector([1, 3], 4, -1)
    print(f"symmetrizer idempotent: {(plus * plus) == plus}")
    print(f"orthogonal to antisymmetrizer: {(plus * minus).is_zero()}")

    # Moment states are weighted projector products with exact prefactors;
    # their unit trace never touches floating point.
    state = omega(2, 2, 3)
    print(f"second-moment state: exact trace {state.trace()}, "
          f"{len(state.sum)} permutation terms, prefactor {state.prefactor}")
    c2, d2 = moment_constants(2)
    print(f"moment constants at d=2: C = {c2}, D = {d2}")

    # Trace of (A1 x ... x Ak) V(p) factorizes over the cycles of p.
    mats = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(4)]
    p4 = from_cycles("(124)", 4)
    dense = np.trace(
        kron(kron(mats[0], mats[1]), kron(mats[2], mats[3])) @ realize(p4, (3,) * 4)
    )
    fast = cycle_trace(mats, p4)
    print(f"\ncycle-trace factorization vs dense 81-dim trace: "
          f"|delta| = {abs(dense - fast):.2e}")

    # One 4-copy trace term, contracted as an 8-tensor network: this is the
    # unit of work of the deviation engine, evaluated without ever building
    # the (d1*d2)^4-dimensional operators.
    u = build("cnot")
    sigma = from_cycles("(1357)(2468)", 8)
    tau = from_cycles("(13)(57)", 8)
    dense8 = np.trace(
        kron(kron(u, u), kron(u, u))
        @ realize(sigma, (2, 2) * 4)
        @ dagger(kron(kron(u, u), kron(u, u)))
        @ realize(tau, (2, 2) * 4)
    )
    network = copy_trace(u, 2, 2, sigma, tau, copies=4)
    print(f"network trace vs dense 256-dim trace: |delta| = {abs(dense8 - network):.2e}")

    # The full deviation sums 576 such terms per trace word; conjugation and
    # inversion symmetries compress them to a few canonical classes.
    for word in ("id", "(13)", "(13)(57)"):
        terms = f_trace_terms(word)
        total = sum(int(t.coefficient) for t in terms)
        print(f"trace word {word:9s}: {total} raw terms in {len(terms)} classes")

    # Antisymmetrizing more copies than a qubit has levels kills the trace.
    anti = sym_projector([1, 3, 5, 7], 8, -1)
    print(f"\n4-copy antisymmetrizer trace on qubits: "
          f"{realized_trace(anti, (2,) * 8)} (no antisymmetric room at d=2)")
    print(f"identity sum sanity: {GroupSum.unit(4) == sym_projector([2], 4)}")


if __name__ == "__main__":
    main()
