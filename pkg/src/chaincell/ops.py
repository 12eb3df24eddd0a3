"""Constructions on complexes and chain maps: shift, sum, cone, tensor, hom.

Sign and ordering conventions are fixed so outputs are reproducible
byte for byte:

* shift by i multiplies every differential by (-1)^i;
* the cone differential is [[d_Y, f], [0, -d_X]] with the Y block first;
* tensor summands are ordered lexicographically in (i, j), i ascending;
* the hom differential out of degree n is f |-> d_Y f + (-1)^(n-1) f d_X,
  which makes the boundary of a degree-1 element an honest chain map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .complexes import (
    ChainComplex,
    ModuleDescriptor,
    empty,
    make_complex,
    require_valid,
)
from .errors import DomainError, UsageError
from .linalg import MatrixR
from .ring import RingSpec


@dataclass
class ChainMap:
    """Degreewise matrices target.rank(n) x source.rank(n) commuting with d."""

    source: ChainComplex
    target: ChainComplex
    mats: tuple

    def mat(self, n: int) -> MatrixR:
        if 0 <= n < len(self.mats):
            return self.mats[n]
        return linalg.zeros(self.source.ring, self.target.rank(n), self.source.rank(n))

    @property
    def degrees(self) -> int:
        return max(len(self.source.ranks), len(self.target.ranks))


def is_chain_map(f: ChainMap) -> Optional[str]:
    """None when f commutes with the differentials; else a diagnostic."""
    if f.source.ring != f.target.ring:
        return "source and target rings differ"
    for n in range(f.degrees):
        m = f.mat(n)
        if (m.rows, m.cols) != (f.target.rank(n), f.source.rank(n)):
            return (
                f"degree {n}: matrix shape {m.rows}x{m.cols}, expected "
                f"{f.target.rank(n)}x{f.source.rank(n)}"
            )
    for n in range(1, f.degrees + 1):
        lhs = linalg.matmul(f.target.d(n), f.mat(n))
        rhs = linalg.matmul(f.mat(n - 1), f.source.d(n))
        if lhs != rhs:
            return f"degree {n}: d_target*f_{n} != f_{n - 1}*d_source"
    return None


def make_chain_map(source, target, mats, check: bool = True) -> ChainMap:
    f = ChainMap(source, target, tuple(mats))
    if check:
        problem = is_chain_map(f)
        if problem is not None:
            raise UsageError(f"not a chain map: {problem}")
    return f


def identity_map(X: ChainComplex) -> ChainMap:
    mats = [linalg.identity(X.ring, r) for r in X.ranks]
    return ChainMap(X, X, tuple(mats))


def zero_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    if X.ring != Y.ring:
        raise UsageError("ring mismatch in zero_map")
    n = max(len(X.ranks), len(Y.ranks))
    mats = [linalg.zeros(X.ring, Y.rank(k), X.rank(k)) for k in range(n)]
    return ChainMap(X, Y, tuple(mats))


def compose(f: ChainMap, g: ChainMap) -> ChainMap:
    """f after g; requires f.source == g.target."""
    if f.source != g.target:
        raise UsageError("compose: f.source != g.target")
    n = max(len(g.source.ranks), len(f.target.ranks))
    mats = [linalg.matmul(f.mat(k), g.mat(k)) for k in range(n)]
    return ChainMap(g.source, f.target, tuple(mats))


# ---------------------------------------------------------------------------
# shift


def shift(X: ChainComplex, i: int) -> ChainComplex:
    """Suspension: degrees move up by i, differentials pick up (-1)^i."""
    if i < 0:
        raise DomainError("shift amount must be >= 0")
    if i == 0 or X.is_empty():
        return X
    ranks = [0] * i + list(X.ranks)
    diffs = []
    for n in range(1, len(ranks)):
        if n <= i:
            diffs.append(linalg.zeros(X.ring, ranks[n - 1], ranks[n]))
        else:
            d = X.d(n - i)
            diffs.append(linalg.neg(d) if i % 2 else d)
    return ChainComplex(X.ring, tuple(ranks), tuple(diffs))


def desuspend(X: ChainComplex, i: int) -> ChainComplex:
    """Inverse of shift for complexes empty below degree i."""
    if i < 0:
        raise DomainError("desuspension amount must be >= 0")
    if i == 0 or X.is_empty():
        return X
    if any(X.rank(n) for n in range(i)):
        raise UsageError(f"complex has nonzero rank below degree {i}")
    ranks = list(X.ranks[i:])
    diffs = []
    for n in range(1, len(ranks)):
        d = X.d(n + i)
        diffs.append(linalg.neg(d) if i % 2 else d)
    return make_complex(X.ring, ranks, diffs, check=False)


# ---------------------------------------------------------------------------
# direct sum


def _block_diag(ring: RingSpec, mats) -> MatrixR:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        data[r : r + m.rows, c : c + m.cols] = m.data
        r += m.rows
        c += m.cols
    return MatrixR(ring, data)


def direct_sum_all(ring: RingSpec, complexes) -> ChainComplex:
    complexes = list(complexes)
    for X in complexes:
        if X.ring != ring:
            raise UsageError(f"ring mismatch in direct sum: {X.ring} vs {ring}")
    n_degrees = max((len(X.ranks) for X in complexes), default=0)
    ranks = [sum(X.rank(n) for X in complexes) for n in range(n_degrees)]
    diffs = [
        _block_diag(ring, [X.d(n) for X in complexes])
        for n in range(1, n_degrees)
    ]
    return make_complex(ring, ranks, diffs, check=False)


def direct_sum(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    if X.ring != Y.ring:
        raise UsageError("ring mismatch in direct sum")
    return direct_sum_all(X.ring, [X, Y])


# ---------------------------------------------------------------------------
# cone


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: C_n = Y_n (+) X_{n-1}, d = [[d_Y, f], [0, -d_X]]."""
    problem = is_chain_map(f)
    if problem is not None:
        raise UsageError(f"cone of a non-chain-map: {problem}")
    X, Y = f.source, f.target
    ring = X.ring
    n_degrees = max(len(Y.ranks), len(X.ranks) + 1)
    ranks = [Y.rank(n) + X.rank(n - 1) for n in range(n_degrees)]
    diffs = []
    for n in range(1, n_degrees):
        grid = [
            [Y.d(n), f.mat(n - 1)],
            [linalg.zeros(ring, X.rank(n - 2), Y.rank(n)), linalg.neg(X.d(n - 1))],
        ]
        diffs.append(linalg.block(ring, grid))
    return make_complex(ring, ranks, diffs, check=False)


def cone_inclusion(f: ChainMap) -> ChainMap:
    """The canonical map Y -> C(f); its cokernel is shift(X, 1) on the nose."""
    X, Y = f.source, f.target
    C = cone(f)
    mats = []
    for n in range(max(len(Y.ranks), len(C.ranks))):
        data = np.zeros((C.rank(n), Y.rank(n)), dtype=np.int64)
        data[: Y.rank(n), :] = np.eye(Y.rank(n), dtype=np.int64)
        mats.append(MatrixR(Y.ring, data))
    return ChainMap(Y, C, tuple(mats))


# ---------------------------------------------------------------------------
# tensor product


def _tensor_blocks(X: ChainComplex, Y: ChainComplex, n: int):
    """(i, j) summands of degree n, lexicographic with i ascending."""
    return [
        (i, n - i)
        for i in range(max(0, n - Y.top), min(n, X.top) + 1)
        if X.rank(i) and Y.rank(n - i)
    ]


def tensor(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    if X.ring != Y.ring:
        raise UsageError("ring mismatch in tensor")
    ring = X.ring
    if X.is_empty() or Y.is_empty():
        return empty(ring)
    n_degrees = X.top + Y.top + 1
    blocks = [_tensor_blocks(X, Y, n) for n in range(n_degrees)]
    ranks = [sum(X.rank(i) * Y.rank(j) for i, j in bs) for n, bs in enumerate(blocks)]
    diffs = []
    for n in range(1, n_degrees):
        if not blocks[n] or not blocks[n - 1]:
            diffs.append(linalg.zeros(ring, ranks[n - 1], ranks[n]))
            continue
        grid = []
        for it, jt in blocks[n - 1]:
            row = []
            for isrc, jsrc in blocks[n]:
                rows_ = X.rank(it) * Y.rank(jt)
                cols_ = X.rank(isrc) * Y.rank(jsrc)
                if (it, jt) == (isrc - 1, jsrc):
                    m = linalg.kron(X.d(isrc), linalg.identity(ring, Y.rank(jsrc)))
                elif (it, jt) == (isrc, jsrc - 1):
                    m = linalg.kron(linalg.identity(ring, X.rank(isrc)), Y.d(jsrc))
                    if isrc % 2:
                        m = linalg.neg(m)
                else:
                    m = linalg.zeros(ring, rows_, cols_)
                row.append(m)
            grid.append(row)
        diffs.append(linalg.block(ring, grid))
    return make_complex(ring, ranks, diffs, check=False)


# ---------------------------------------------------------------------------
# hom complex


@dataclass
class HomComplex:
    """Hom(X, Y): an honest complex in degrees >= 1, possibly not at 0.

    The degree-0 module (the chain maps X -> Y) need not be free, so it
    is reported as an isomorphism class, with the cardinality of the
    image of d_1 as the only record of the boundary map.  ``full`` is
    the genuine complex including degree 0 whenever the source is
    concentrated in degree 0 (then no commutation constraints arise).
    """

    source: ChainComplex
    target: ChainComplex
    degree0: ModuleDescriptor
    positive: ChainComplex
    d1_image_size: Optional[int]
    full: Optional[ChainComplex]


def _hom_rank(X: ChainComplex, Y: ChainComplex, n: int) -> int:
    return sum(X.rank(i) * Y.rank(i + n) for i in range(X.top + 1))


def _hom_blocks(X: ChainComplex, Y: ChainComplex, n: int):
    return [i for i in range(X.top + 1) if X.rank(i) and Y.rank(i + n)]


def _hom_diff(X: ChainComplex, Y: ChainComplex, n: int) -> MatrixR:
    """Matrix of Hom_n -> Hom_{n-1}, blocks indexed by source degree i."""
    ring = X.ring
    src_blocks = _hom_blocks(X, Y, n)
    tgt_blocks = _hom_blocks(X, Y, n - 1)
    sign_flip = (n - 1) % 2 == 1
    grid = []
    for it in tgt_blocks:
        row = []
        for isrc in src_blocks:
            rows_ = Y.rank(it + n - 1) * X.rank(it)
            cols_ = Y.rank(isrc + n) * X.rank(isrc)
            if it == isrc:
                m = linalg.kron(Y.d(isrc + n), linalg.identity(ring, X.rank(isrc)))
            elif it == isrc + 1:
                m = linalg.kron(
                    linalg.identity(ring, Y.rank(it + n - 1)),
                    linalg.transpose(X.d(it)),
                )
                if sign_flip:
                    m = linalg.neg(m)
            else:
                m = linalg.zeros(ring, rows_, cols_)
            row.append(m)
        grid.append(row)
    if not grid or not src_blocks:
        return linalg.zeros(ring, _hom_rank(X, Y, n - 1), _hom_rank(X, Y, n))
    return linalg.block(ring, grid)


def hom_complex(X: ChainComplex, Y: ChainComplex, guard=None) -> HomComplex:
    if X.ring != Y.ring:
        raise UsageError("ring mismatch in hom")
    require_valid(X)
    require_valid(Y)
    from . import oracle as _oracle

    ring = X.ring
    top = Y.top  # Hom_n vanishes once i + n > Y.top for all i
    pos_ranks = [0] + [_hom_rank(X, Y, n) for n in range(1, max(top + 1, 1))]
    pos_diffs = [linalg.zeros(ring, pos_ranks[0], pos_ranks[1])] if len(pos_ranks) > 1 else []
    for n in range(2, len(pos_ranks)):
        pos_diffs.append(_hom_diff(X, Y, n))
    positive = make_complex(ring, pos_ranks, pos_diffs, check=False)

    guard = guard if guard is not None else _oracle.SizeGuard()
    degree0 = _oracle.chain_map_module(X, Y, guard)
    d1_image_size = _oracle.hom_boundary_image_size(X, Y, guard)

    full = None
    if X.top <= 0:
        a = X.rank(0)
        full_ranks = [a * Y.rank(n) for n in range(len(Y.ranks))]
        full_diffs = [
            linalg.kron(Y.d(n), linalg.identity(ring, a))
            for n in range(1, len(Y.ranks))
        ]
        full = make_complex(ring, full_ranks, full_diffs, check=False)
    return HomComplex(X, Y, degree0, positive, d1_image_size, full)
