"""Dense complex linear algebra and multi-subsystem index machinery.

Everything here is a pure function of immutable inputs.  Matrices are plain
``numpy.ndarray`` objects in row-major order; a multi-subsystem space is
described by the ordered tuple of local dimensions, with position 1 owning
the most significant digit of the basis index (standard Kronecker order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

__all__ = [
    "UNITARITY_TOL",
    "SCALAR_TOL",
    "SubsystemLayout",
    "PureState",
    "dagger",
    "kron",
    "unitarity_defect",
    "assert_unitary",
    "partial_trace",
    "contract_network",
    "load_matrix",
    "save_matrix",
]

UNITARITY_TOL = 1e-10
SCALAR_TOL = 1e-10

Leg = tuple[Hashable, int]


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered local dimensions of a multi-subsystem tensor space."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        object.__setattr__(self, "dims", tuple(int(d) for d in dims))
        if any(d < 1 for d in self.dims):
            raise ValueError(f"local dimensions must be >= 1: {self.dims}")

    def __iter__(self):
        return iter(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        n = 1
        for d in self.dims:
            n *= d
        return n

    @classmethod
    def bipartite_copies(cls, d1: int, d2: int, copies: int) -> "SubsystemLayout":
        """Alternating layout (d1, d2, d1, d2, ...) for a copies-fold bipartite
        space: odd positions carry d1, even positions carry d2."""
        return cls((d1, d2) * copies)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector together with its subsystem layout."""

    vector: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, vector: Iterable[complex], dims: Iterable[int]):
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        dims = tuple(int(d) for d in dims)
        n = 1
        for d in dims:
            n *= d
        if vec.size != n:
            raise ValueError(f"vector length {vec.size} != product of dims {dims}")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state is not normalized: |psi| = {norm}")
        object.__setattr__(self, "vector", vec)
        object.__setattr__(self, "dims", dims)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor owns the most significant digit."""
    return np.kron(np.asarray(a), np.asarray(b))


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm of U†U - 1."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    n = u.shape[0]
    return float(np.max(np.abs(dagger(u) @ u - np.eye(n))))


def assert_unitary(u: np.ndarray, tol: float = UNITARITY_TOL, name: str = "matrix") -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        raise ValueError(f"{name} is not unitary: max-norm defect {defect:.3e} > {tol:.1e}")


def _as_dims(dims: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(d) for d in dims)


def partial_trace(m: np.ndarray, dims: Iterable[int], keep: Iterable[int]) -> np.ndarray:
    """Reduced operator on the kept subsystems (1-based positions).

    Parameters
    ----------
    m : square matrix on the full space described by ``dims``.
    dims : local dimension of each subsystem.
    keep : positions to retain, in 1..len(dims); the rest are traced out.

    The trace is preserved: ``Tr(result) == Tr(m)``.
    """
    dims = _as_dims(dims)
    k = len(dims)
    keep_list = sorted(set(int(i) for i in keep))
    if not keep_list:
        raise ValueError("keep must name at least one subsystem")
    if keep_list[0] < 1 or keep_list[-1] > k:
        raise ValueError(f"keep positions {keep_list} outside 1..{k}")
    m = np.asarray(m, dtype=complex)
    n = int(np.prod(dims))
    if m.shape != (n, n):
        raise ValueError(f"matrix shape {m.shape} != ({n}, {n}) from dims {dims}")
    t = m.reshape(dims + dims)
    row_labels = list(range(k))
    col_labels = [k + i if (i + 1) in keep_list else i for i in range(k)]
    out_labels = [i - 1 for i in keep_list] + [k + i - 1 for i in keep_list]
    reduced = np.einsum(t, row_labels + col_labels, out_labels)
    nk = int(np.prod([dims[i - 1] for i in keep_list]))
    return reduced.reshape(nk, nk)


class _Node:
    __slots__ = ("tensor", "labels")

    def __init__(self, tensor: np.ndarray, labels: list[Hashable]):
        self.tensor = tensor
        self.labels = labels

    @property
    def size(self) -> int:
        return self.tensor.size


def _ingest(matrix: np.ndarray, out_legs: Sequence[Leg], in_legs: Sequence[Leg]) -> _Node:
    out_dims = [int(d) for _, d in out_legs]
    in_dims = [int(d) for _, d in in_legs]
    m = np.asarray(matrix, dtype=complex)
    rows = int(np.prod(out_dims)) if out_dims else 1
    cols = int(np.prod(in_dims)) if in_dims else 1
    if m.ndim != 2 or m.shape != (rows, cols):
        raise ValueError(
            f"matrix shape {m.shape} incompatible with legs "
            f"(rows {rows} from {out_legs}, cols {cols} from {in_legs})"
        )
    tensor = m.reshape(out_dims + in_dims)
    labels = [lab for lab, _ in out_legs] + [lab for lab, _ in in_legs]
    node = _Node(tensor, labels)
    return _self_trace(node)


def _self_trace(node: _Node) -> _Node:
    # Contract any label appearing twice on the same node.
    while True:
        seen: dict[Hashable, int] = {}
        dup = None
        for ax, lab in enumerate(node.labels):
            if lab in seen:
                dup = (seen[lab], ax)
                break
            seen[lab] = ax
        if dup is None:
            return node
        a1, a2 = dup
        node.tensor = np.trace(node.tensor, axis1=a1, axis2=a2)
        node.labels = [lab for ax, lab in enumerate(node.labels) if ax not in (a1, a2)]


def _contract_pair(a: _Node, b: _Node) -> _Node:
    shared = [lab for lab in a.labels if lab in b.labels]
    ax_a = [a.labels.index(lab) for lab in shared]
    ax_b = [b.labels.index(lab) for lab in shared]
    tensor = np.tensordot(a.tensor, b.tensor, axes=(ax_a, ax_b))
    labels = [lab for lab in a.labels if lab not in shared] + [
        lab for lab in b.labels if lab not in shared
    ]
    return _Node(tensor, labels)


def contract_network(
    nodes: Iterable[tuple[np.ndarray, Sequence[Leg], Sequence[Leg]]],
) -> complex:
    """Fully contract a closed tensor network of matrices with labelled legs.

    Each node is ``(matrix, out_legs, in_legs)`` where a leg is a
    ``(label, dimension)`` pair; the matrix row (column) dimension must equal
    the product of its output (input) leg dimensions.  Every label must occur
    exactly twice in the whole network with matching dimensions.  Contraction
    is greedy pairwise, always picking the pair whose result is smallest, so
    the order is deterministic; the value is independent of node order.
    """
    pool = [_ingest(m, o, i) for m, o, i in nodes]
    if not pool:
        raise ValueError("empty network")

    counts: dict[Hashable, list[int]] = {}
    for node in pool:
        for ax, lab in enumerate(node.labels):
            counts.setdefault(lab, []).append(node.tensor.shape[ax])
    for lab, dims_seen in counts.items():
        if len(dims_seen) != 2:
            raise ValueError(f"leg label {lab!r} occurs {len(dims_seen)} time(s), expected 2")
        if dims_seen[0] != dims_seen[1]:
            raise ValueError(f"leg label {lab!r} has mismatched dimensions {dims_seen}")

    while len(pool) > 1:
        best = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                if not set(pool[i].labels) & set(pool[j].labels):
                    continue
                shared = {lab for lab in pool[i].labels if lab in pool[j].labels}
                result_size = 1
                for node in (pool[i], pool[j]):
                    for ax, lab in enumerate(node.labels):
                        if lab not in shared:
                            result_size *= node.tensor.shape[ax]
                if best is None or result_size < best[0]:
                    best = (result_size, i, j)
        if best is None:
            # Disconnected components; all must already be scalars.
            if all(n.tensor.ndim == 0 for n in pool):
                break
            raise ValueError("network is not closed: disconnected non-scalar parts remain")
        _, i, j = best
        merged = _self_trace(_contract_pair(pool[i], pool[j]))
        pool = [n for k, n in enumerate(pool) if k not in (i, j)] + [merged]

    value = complex(1)
    for node in pool:
        if node.tensor.ndim != 0:
            raise ValueError(f"network left open legs {node.labels}")
        value *= complex(node.tensor)
    return value


def load_matrix(path: str | Path) -> tuple[np.ndarray, tuple[int, int]]:
    """Read a matrix file: JSON ``{"dims": [d1, d2], "re": [[..]], "im": [[..]]}``.

    ``dims`` is mandatory (the bipartition is not deducible from the matrix
    size alone) and its product must equal the matrix dimension.  ``im`` may
    be omitted for a real matrix.
    """
    with open(path) as fh:
        doc = json.load(fh)
    for key in ("dims", "re"):
        if key not in doc:
            raise ValueError(f"matrix file {path}: missing required field {key!r}")
    dims = doc["dims"]
    if (not isinstance(dims, list)) or len(dims) != 2:
        raise ValueError(f"matrix file {path}: dims must be a [d1, d2] pair, got {dims!r}")
    d1, d2 = (int(d) for d in dims)
    if d1 < 1 or d2 < 1:
        raise ValueError(f"matrix file {path}: dims must be positive, got {dims!r}")
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError(f"matrix file {path}: re shape {re.shape} != im shape {im.shape}")
    if re.ndim != 2 or re.shape[0] != re.shape[1]:
        raise ValueError(f"matrix file {path}: expected a square matrix, got shape {re.shape}")
    if re.shape[0] != d1 * d2:
        raise ValueError(
            f"matrix file {path}: dims {d1}x{d2} imply dimension {d1 * d2}, "
            f"matrix has dimension {re.shape[0]}"
        )
    return re + 1j * im, (d1, d2)


def save_matrix(path: str | Path, u: np.ndarray, dims: tuple[int, int]) -> None:
    """Write a matrix in the JSON interchange format used by :func:`load_matrix`."""
    u = np.asarray(u, dtype=complex)
    d1, d2 = (int(d) for d in dims)
    if u.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"matrix shape {u.shape} inconsistent with dims ({d1}, {d2})")
    doc = {
        "dims": [d1, d2],
        "re": np.real(u).tolist(),
        "im": np.imag(u).tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
