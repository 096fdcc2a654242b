"""Persistence pairing by GF(2) column reduction, barcodes, Betti curves.

The reduction is the standard left-to-right algorithm: each column
repeatedly absorbs (by symmetric difference) the earlier reduced column
sharing its lowest nonzero row, until the column empties or its low is
unique. A surviving column with low i pairs (i, j): the feature born with
simplex i dies when simplex j enters. Empty columns that never appear as
a pair's low row stay unpaired and become infinite bars. The pairing is a
property of the matrix, not of the reduction order, so the default
dimension-by-dimension "twist" schedule (which clears columns known to
reduce to zero and skips most of the work) produces the identical pairing
as the plain schedule; the test suite checks this bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError
from .homology import BoundaryMatrix, build_boundary_matrix
from .vr import Filtration

__all__ = [
    "PersistenceInterval",
    "Barcode",
    "Pairing",
    "reduce",
    "intervals",
    "betti_curve",
    "write_barcode_csv",
    "read_barcode_csv",
]


@dataclass(frozen=True, order=True)
class PersistenceInterval:
    """Homological feature of dimension ``dim`` alive on [birth, death).

    death is math.inf for features that outlive the filtration. A feature
    must exist before it can die: birth <= death always.
    """

    dim: int
    birth: float
    death: float

    def __post_init__(self):
        if self.dim < 0:
            raise InputError(f"dimension must be nonnegative, got {self.dim}")
        if not self.birth <= self.death:
            raise InputError(
                f"interval must satisfy birth <= death, got [{self.birth}, {self.death}]"
            )

    @property
    def length(self) -> float:
        return self.death - self.birth

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class Barcode:
    """Multiset of persistence intervals plus the scale range and length
    threshold they were produced under."""

    intervals: tuple
    eps_max: float
    min_length: float = 0.0

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def max_dim(self) -> int:
        return max((iv.dim for iv in self.intervals), default=0)

    def by_dim(self) -> dict[int, list[PersistenceInterval]]:
        out: dict[int, list[PersistenceInterval]] = {}
        for iv in self.intervals:
            out.setdefault(iv.dim, []).append(iv)
        return out


@dataclass(frozen=True)
class Pairing:
    """Reduction outcome: (birth index, death index) pairs and the indices
    left unpaired. pairs + unpaired exactly partition the column set."""

    pairs: tuple
    unpaired: tuple


def _reduce_columns(order, columns, low_owner, reduced, cleared, pairs):
    """Reduce the given columns in index order against shared state."""
    for j in order:
        if j in cleared:
            continue
        col = set(columns[j])
        while col:
            low = max(col)
            owner = low_owner.get(low)
            if owner is None:
                break
            col ^= reduced[owner]
        if col:
            low = max(col)
            low_owner[low] = j
            reduced[j] = col
            pairs.append((low, j))
            cleared.add(low)


def reduce(bm: BoundaryMatrix, strategy: str = "twist") -> Pairing:
    """Compute the persistence pairing of a boundary matrix.

    strategy "twist" processes dimensions from the top down and clears the
    birth column of every pair as soon as the pair is found (that column
    is guaranteed to reduce to zero, so reducing it would be wasted work).
    strategy "left-to-right" is the textbook schedule. Both return the
    same pairing.
    """
    if strategy not in ("twist", "left-to-right"):
        raise InputError(f"unknown reduction strategy {strategy!r}")
    n = bm.n_columns
    low_owner: dict[int, int] = {}
    reduced: dict[int, set] = {}
    cleared: set[int] = set()
    pairs: list[tuple[int, int]] = []
    if strategy == "left-to-right":
        # plain schedule never clears, so pass a throwaway set
        _reduce_columns(range(n), bm.columns, low_owner, reduced, set(), pairs)
    else:
        by_dim: dict[int, list[int]] = {}
        for j, d in enumerate(bm.dims):
            by_dim.setdefault(d, []).append(j)
        for d in sorted(by_dim, reverse=True):
            _reduce_columns(by_dim[d], bm.columns, low_owner, reduced, cleared, pairs)
    paired = set()
    for i, j in pairs:
        paired.add(i)
        paired.add(j)
    unpaired = tuple(i for i in range(n) if i not in paired)
    pairs.sort()
    return Pairing(pairs=tuple(pairs), unpaired=unpaired)


def intervals(
    f: Filtration, min_length: float = 0.0, keep_zero: bool = False
) -> Barcode:
    """Persistence barcode of a filtration.

    Pair (i, j) becomes an interval of dimension dim(simplex i) over
    [birth(i), birth(j)); unpaired indices become infinite bars. Zero
    length intervals are artifacts of simplices entering at the same scale
    and are dropped unless ``keep_zero``; finite intervals of length
    <= min_length are dropped; infinite bars are always kept.
    """
    if min_length < 0.0:
        raise InputError(f"min_length must be nonnegative, got {min_length}")
    bm = build_boundary_matrix(f)
    pairing = reduce(bm)
    out = []
    for i, j in pairing.pairs:
        birth = bm.births[i]
        death = bm.births[j]
        length = death - birth
        if length == 0.0:
            if not keep_zero:
                continue
        elif length <= min_length:
            continue
        out.append(PersistenceInterval(dim=bm.dims[i], birth=birth, death=death))
    for i in pairing.unpaired:
        out.append(
            PersistenceInterval(dim=bm.dims[i], birth=bm.births[i], death=math.inf)
        )
    out.sort()
    return Barcode(intervals=tuple(out), eps_max=f.eps_max, min_length=min_length)


def betti_curve(b: Barcode, eps: float, max_k: int | None = None) -> list[int]:
    """Counts of intervals alive at eps (birth <= eps < death), per
    dimension 0..max_k. max_k defaults to the largest dimension present."""
    if eps < 0.0:
        raise InputError(f"eps must be nonnegative, got {eps}")
    if max_k is None:
        max_k = b.max_dim
    counts = [0] * (max_k + 1)
    for iv in b.intervals:
        if iv.dim <= max_k and iv.birth <= eps < iv.death:
            counts[iv.dim] += 1
    return counts


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else format(x, ".9g")


def write_barcode_csv(b: Barcode, path) -> None:
    """CSV with header dim,birth,death; infinite deaths serialize as
    ``inf``; 9 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write("dim,birth,death\n")
        for iv in b.intervals:
            fh.write(f"{iv.dim},{_fmt(iv.birth)},{_fmt(iv.death)}\n")


def read_barcode_csv(path) -> Barcode:
    """Inverse of write_barcode_csv. The scale range is not stored in the
    file, so eps_max is recovered as the largest finite value present."""
    ivs = []
    top = 0.0
    with open(path, "r", newline="") as fh:
        header = fh.readline().strip()
        if header != "dim,birth,death":
            raise InputError(f"{path}: expected header dim,birth,death, got {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise InputError(f"{path}:{lineno}: expected 3 fields")
            try:
                dim = int(parts[0])
                birth = float(parts[1])
                death = math.inf if parts[2] == "inf" else float(parts[2])
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from exc
            ivs.append(PersistenceInterval(dim=dim, birth=birth, death=death))
            top = max(top, birth, death if not math.isinf(death) else 0.0)
    return Barcode(intervals=tuple(ivs), eps_max=top, min_length=0.0)
