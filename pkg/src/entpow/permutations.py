"""Symmetric-group machinery: permutations, formal weighted sums, and their
realization as operators permuting tensor factors.

Positions (wires) are labelled 1..kappa throughout, matching cycle notation
like ``"(13)(57)"``.  A permutation ``p`` acts on positions; its operator
realization moves the content of position ``w`` to position ``p(w)``, i.e.

    V(p) |j_1 ... j_kappa> = |j_{p^-1(1)} ... j_{p^-1(kappa)}>

so that ``realize(compose(p, q), dims) == realize(p, dims) @ realize(q, dims)``.
Formal sums of permutations with exact rational coefficients represent
(anti)symmetrizing projectors without committing to a Hilbert-space dimension.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import permutations as _all_perms
from typing import Iterable, Iterator, Mapping

import numpy as np

__all__ = [
    "Permutation",
    "GroupSum",
    "identity",
    "transposition",
    "from_cycles",
    "sym_projector",
    "realize",
    "realize_sum",
    "realized_trace",
]


class Permutation:
    """Element of S_kappa stored in one-line image form (1-based).

    ``image[i]`` is p(i+1); the ground-set size kappa is carried explicitly so
    embeddings of smaller symmetric groups are always fixed-point padded.
    """

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        img = tuple(int(x) for x in image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a bijection of 1..{len(img)}: {img}")
        object.__setattr__(self, "image", img)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def kappa(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, kappa={self.kappa})"

    def compose(self, other: "Permutation") -> "Permutation":
        """Functional composition self∘other: apply ``other`` first."""
        if other.kappa != self.kappa:
            raise ValueError("ground-set sizes differ")
        return Permutation(tuple(self.image[j - 1] for j in other.image))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.kappa
        for i, j in enumerate(self.image, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its smallest element,
        listed in increasing order of that element."""
        seen = [False] * self.kappa
        out: list[tuple[int, ...]] = []
        for start in range(1, self.kappa + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        """Number of cycles including fixed points."""
        return len(self.cycles(include_fixed=True))

    def sign(self) -> int:
        return -1 if (self.kappa - self.cycle_count()) % 2 else 1

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.kappa + 1))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def identity(kappa: int) -> Permutation:
    return Permutation(range(1, kappa + 1))


def transposition(i: int, j: int, kappa: int) -> Permutation:
    if not (1 <= i <= kappa and 1 <= j <= kappa) or i == j:
        raise ValueError(f"invalid transposition ({i} {j}) on 1..{kappa}")
    img = list(range(1, kappa + 1))
    img[i - 1], img[j - 1] = j, i
    return Permutation(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def from_cycles(text: str, kappa: int) -> Permutation:
    """Parse cycle notation such as ``"(13)(57)"`` or ``"(1 3 5)"``.

    Single-digit entries may be juxtaposed; multi-digit entries must be
    separated by spaces or commas.  Cycles must be disjoint.
    """
    stripped = text.replace(" ", "")
    if stripped in ("", "()", "id", "e"):
        return identity(kappa)
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    img = list(range(1, kappa + 1))
    touched: set[int] = set()
    for grp in _CYCLE_RE.findall(text):
        if "," in grp or " " in grp:
            entries = [e for e in re.split(r"[,\s]+", grp.strip()) if e]
        else:
            entries = list(grp.strip())
        cyc = [int(e) for e in entries]
        if len(cyc) < 1:
            continue
        if any(not 1 <= v <= kappa for v in cyc):
            raise ValueError(f"cycle entry out of range 1..{kappa}: {grp!r}")
        if touched.intersection(cyc) or len(set(cyc)) != len(cyc):
            raise ValueError(f"cycles are not disjoint in {text!r}")
        touched.update(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return Permutation(img)


class GroupSum:
    """Formal sum ``sum_p coeff(p) * p`` over a common ground set.

    Coefficients are exact :class:`fractions.Fraction` values (every projector
    used here has coefficients ±1/n!), so symbolic identities like projector
    idempotence hold exactly; floating point enters only at realization.
    """

    __slots__ = ("terms", "kappa")

    def __init__(self, terms: Mapping[Permutation, Fraction], kappa: int | None = None):
        clean: dict[Permutation, Fraction] = {}
        for p, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if kappa is None:
                kappa = p.kappa
            elif p.kappa != kappa:
                raise ValueError("mixed ground-set sizes in one sum")
            clean[p] = clean.get(p, Fraction(0)) + c
        if kappa is None:
            raise ValueError("empty sum needs an explicit kappa")
        self.terms = {p: c for p, c in clean.items() if c != 0}
        self.kappa = kappa

    @classmethod
    def unit(cls, kappa: int) -> "GroupSum":
        return cls({identity(kappa): Fraction(1)}, kappa)

    def __iter__(self) -> Iterator[tuple[Permutation, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSum)
            and self.kappa == other.kappa
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        parts = [f"{c}*{p.cycle_string()}" for p, c in sorted(
            self.terms.items(), key=lambda t: t[0].image)]
        return "GroupSum(" + " + ".join(parts or ["0"]) + f", kappa={self.kappa})"

    def __add__(self, other: "GroupSum") -> "GroupSum":
        if other.kappa != self.kappa:
            raise ValueError("ground-set sizes differ")
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, Fraction(0)) + c
        return GroupSum(merged, self.kappa)

    def __sub__(self, other: "GroupSum") -> "GroupSum":
        return self + other.scale(Fraction(-1))

    def scale(self, factor: Fraction) -> "GroupSum":
        factor = Fraction(factor)
        return GroupSum({p: c * factor for p, c in self.terms.items()}, self.kappa)

    def __mul__(self, other: "GroupSum") -> "GroupSum":
        """Bilinear convolution under group composition."""
        if other.kappa != self.kappa:
            raise ValueError("ground-set sizes differ")
        out: dict[Permutation, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                pq = p.compose(q)
                out[pq] = out.get(pq, Fraction(0)) + a * b
        return GroupSum(out, self.kappa)

    def is_zero(self) -> bool:
        return not self.terms


def sym_projector(positions: Iterable[int], kappa: int, sign: int = +1) -> GroupSum:
    """Symmetrizer (sign=+1) or antisymmetrizer (sign=-1) over ``positions``,
    embedded in S_kappa with all other positions fixed.

    Returns ``(1/|X|!) sum_{p in S_X} sgn(p)^s p`` with s=0 for +1, s=1 for -1.
    Idempotent under :meth:`GroupSum.__mul__`; the two signs on the same
    support multiply to zero.
    """
    pos = sorted(set(int(x) for x in positions))
    if not pos:
        raise ValueError("empty position set")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if pos[0] < 1 or pos[-1] > kappa:
        raise ValueError(f"positions {pos} outside 1..{kappa}")
    n = len(pos)
    weight = Fraction(1, math.factorial(n))
    terms: dict[Permutation, Fraction] = {}
    for assignment in _all_perms(pos):
        img = list(range(1, kappa + 1))
        for src, dst in zip(pos, assignment):
            img[src - 1] = dst
        p = Permutation(img)
        coeff = weight if sign == +1 else weight * p.sign()
        terms[p] = coeff
    return GroupSum(terms, kappa)


def _digit_weights(dims: tuple[int, ...]) -> np.ndarray:
    # Position 1 owns the most significant digit (Kronecker convention).
    w = np.ones(len(dims), dtype=np.int64)
    for i in range(len(dims) - 2, -1, -1):
        w[i] = w[i + 1] * dims[i + 1]
    return w


def _check_cycle_dims(p: Permutation, dims: tuple[int, ...]) -> None:
    for cyc in p.cycles():
        sizes = {dims[w - 1] for w in cyc}
        if len(sizes) > 1:
            raise ValueError(
                f"cycle {cyc} mixes local dimensions {sorted(sizes)}; "
                "permuting unequal-dimension positions is undefined"
            )


def realize(p: Permutation, dims: Iterable[int]) -> np.ndarray:
    """Dense matrix of the operator permuting tensor factors by ``p``.

    ``dims`` lists the local dimension of each position; every cycle of ``p``
    must stay within positions of one dimension.  The result is a 0/1 unitary
    with ``V |j_1..j_k> = |j_{p^-1(1)} .. j_{p^-1(k)}>``.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != p.kappa:
        raise ValueError(f"layout has {len(dims)} positions, permutation acts on {p.kappa}")
    if any(d < 1 for d in dims):
        raise ValueError("local dimensions must be >= 1")
    _check_cycle_dims(p, dims)
    n = int(np.prod(dims))
    weights = _digit_weights(dims)
    cols = np.arange(n)
    digits = [(cols // weights[i]) % dims[i] for i in range(len(dims))]
    pinv = p.inverse()
    rows = np.zeros(n, dtype=np.int64)
    for w in range(1, len(dims) + 1):
        rows += weights[w - 1] * digits[pinv(w) - 1]
    mat = np.zeros((n, n), dtype=complex)
    mat[rows, cols] = 1.0
    return mat


def realize_sum(s: GroupSum, dims: Iterable[int]) -> np.ndarray:
    """Dense matrix of a formal sum: sum of coeff * realize(p)."""
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    out = np.zeros((n, n), dtype=complex)
    for p, c in s:
        out += float(c) * realize(p, dims)
    return out


def realized_trace(s: GroupSum, dims: Iterable[int]) -> Fraction:
    """Exact trace of ``realize_sum(s, dims)`` without realizing it.

    Each permutation contributes the product, over its cycles (fixed points
    included), of the local dimension carried by that cycle.
    """
    dims = tuple(int(d) for d in dims)
    total = Fraction(0)
    for p, c in s:
        _check_cycle_dims(p, dims)
        tr = 1
        for cyc in p.cycles(include_fixed=True):
            tr *= dims[cyc[0] - 1]
        total += c * tr
    return total
