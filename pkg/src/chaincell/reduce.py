"""Splitting a perfect complex into contractible disks plus intervals.

``minimize`` repeatedly pivots on unit differential entries: each unit
witnesses an embedded disk, which splits off after clearing its row and
column with invertible operations.  What remains is minimal (all
differential entries in the maximal ideal) and decomposes into interval
summands; ``barcode`` counts them through the composite-rank table
rho(a, b) = rank over k of B_{a+1} ... B_b, where d = r*B on a minimal
complex.  A summand spanning degrees [i, i+j] contributes one to
rho(a, b) exactly when i <= a <= b <= i+j, so inclusion-exclusion on
rho recovers the multiplicities, an exact count equivalent to peeling
off one lowest interval summand at a time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from ._kernels import enc_add, enc_mul, enc_neg
from .complexes import ChainComplex, disk, interval, make_complex, require_valid
from .errors import ChaincellError, UsageError
from .linalg import MatrixR
from .ops import direct_sum_all
from .ring import RingSpec


@dataclass
class MinimizeResult:
    minimal: ChainComplex
    disks: tuple  # degrees, ascending
    certificates: list  # per input degree: (U, Uinv) MatrixR pairs


@dataclass
class Decomposition:
    intervals: Counter  # (i, j) -> multiplicity
    disks: Counter  # degree -> multiplicity
    certificates: Optional[list]
    minimal: Optional[ChainComplex]

    def interval_list(self):
        return sorted(self.intervals.elements())

    def disk_list(self):
        return sorted(self.disks.elements())


class _Workspace:
    """Mutable differentials plus accumulated basis changes per degree.

    Invariant: W[n] == Uinv[n-1] @ d_n(original) @ U[n] throughout.
    """

    def __init__(self, X: ChainComplex):
        self.ring = X.ring
        self.p = X.ring.p
        self.fl = X.ring.flavor_code
        self.n_degrees = len(X.ranks)
        self.W = [None] + [X.d(n).data.copy() for n in range(1, self.n_degrees)]
        self.U = [np.eye(r, dtype=np.int64) for r in X.ranks]
        self.Uinv = [np.eye(r, dtype=np.int64) for r in X.ranks]
        self.live = [list(range(r)) for r in X.ranks]

    # -- encoded helpers ----------------------------------------------------
    def _mul(self, c, arr):
        return enc_mul(np.int64(c), arr, self.p, self.fl)

    def _addmul(self, dst, c, src):
        return enc_add(dst, self._mul(c, src), self.p, self.fl)

    def _neg(self, c):
        return int(enc_neg(np.int64(c), self.p, self.fl))

    def _inv(self, c):
        return self.ring.from_encoded(int(c)).inverse().encoded

    # -- elementary basis changes -------------------------------------------
    def scale_basis(self, n, j, u):
        """Scale basis vector j of degree n by the unit u (column op on W[n])."""
        uinv = self._inv(u)
        if n >= 1:
            self.W[n][:, j] = self._mul(u, self.W[n][:, j])
        self.U[n][:, j] = self._mul(u, self.U[n][:, j])
        self.Uinv[n][j, :] = self._mul(uinv, self.Uinv[n][j, :])
        if n + 1 < self.n_degrees:
            self.W[n + 1][j, :] = self._mul(uinv, self.W[n + 1][j, :])

    def col_addmul(self, n, dst, src, c):
        """Basis change e_dst += c * e_src in degree n (column op on W[n])."""
        neg_c = self._neg(c)
        if n >= 1:
            self.W[n][:, dst] = self._addmul(self.W[n][:, dst], c, self.W[n][:, src])
        self.U[n][:, dst] = self._addmul(self.U[n][:, dst], c, self.U[n][:, src])
        self.Uinv[n][src, :] = self._addmul(self.Uinv[n][src, :], neg_c, self.Uinv[n][dst, :])
        if n + 1 < self.n_degrees:
            self.W[n + 1][src, :] = self._addmul(
                self.W[n + 1][src, :], neg_c, self.W[n + 1][dst, :]
            )

    def row_addmul(self, n, dst, src, c):
        """Row op on W[n]: row dst += c * row src; changes the degree n-1 basis."""
        m = n - 1
        neg_c = self._neg(c)
        self.W[n][dst, :] = self._addmul(self.W[n][dst, :], c, self.W[n][src, :])
        self.Uinv[m][dst, :] = self._addmul(self.Uinv[m][dst, :], c, self.Uinv[m][src, :])
        self.U[m][:, src] = self._addmul(self.U[m][:, src], neg_c, self.U[m][:, dst])
        if m >= 1:
            self.W[m][:, src] = self._addmul(self.W[m][:, src], neg_c, self.W[m][:, dst])

    # -- pivoting -------------------------------------------------------------
    def find_live_unit(self, n):
        """First unit entry of W[n] in live-row-major order."""
        W = self.W[n]
        for i in self.live[n - 1]:
            for j in self.live[n]:
                if W[i, j] % self.p:
                    return i, j
        return None

    def split_disk(self, n, i, j):
        """Clear pivot (i, j) of W[n] and retire the resulting disk pair."""
        W = self.W[n]
        u = int(W[i, j])
        self.scale_basis(n, j, self._inv(u))
        for jj in self.live[n]:
            if jj != j and W[i, jj]:
                self.col_addmul(n, jj, j, self._neg(int(W[i, jj])))
        for ii in self.live[n - 1]:
            if ii != i and W[ii, j]:
                self.row_addmul(n, ii, i, self._neg(int(W[ii, j])))
        if np.any(np.delete(W[i, :], j)) or np.any(np.delete(W[:, j], i)):
            raise ChaincellError("pivot clearing left residue; d*d != 0?")
        if n + 1 < self.n_degrees and np.any(self.W[n + 1][j, :]):
            raise ChaincellError("split disk has an incoming differential")
        if n >= 2 and np.any(self.W[n - 1][:, i]):
            raise ChaincellError("split disk has an outgoing differential")
        self.live[n].remove(j)
        self.live[n - 1].remove(i)


def minimize(X: ChainComplex) -> MinimizeResult:
    """Split off every embedded disk; returns the minimal part plus witnesses.

    Pivot order is fixed (lowest degree, then row-major) so the
    certificates are reproducible.  Each split removes one basis vector
    from two adjacent degrees, so the loop terminates.
    """
    require_valid(X)
    ws = _Workspace(X)
    pairs = []  # (degree, bottom index, top index) in retirement order
    while True:
        hit = None
        for n in range(1, ws.n_degrees):
            found = ws.find_live_unit(n)
            if found is not None:
                hit = (n, found)
                break
        if hit is None:
            break
        n, (i, j) = hit
        ws.split_disk(n, i, j)
        pairs.append((n, i, j))

    pairs.sort(key=lambda t: t[0])  # certificate layout uses ascending disks
    m_ranks = [len(ws.live[n]) for n in range(ws.n_degrees)]
    m_diffs = [
        MatrixR(X.ring, ws.W[n][np.ix_(ws.live[n - 1], ws.live[n])])
        for n in range(1, ws.n_degrees)
    ]
    minimal = make_complex(X.ring, m_ranks, m_diffs, check=False)

    certificates = []
    for m in range(ws.n_degrees):
        order = list(ws.live[m])
        for n, i, j in pairs:
            if n == m:
                order.append(j)
            elif n == m + 1:
                order.append(i)
        perm = np.zeros((X.ranks[m], X.ranks[m]), dtype=np.int64)
        for newpos, old in enumerate(order):
            perm[old, newpos] = 1
        certificates.append(
            (
                MatrixR(X.ring, ws.U[m] @ perm),
                MatrixR(X.ring, perm.T @ ws.Uinv[m]),
            )
        )
    return MinimizeResult(minimal, tuple(n for n, _, _ in pairs), certificates)


def verify_certificates(X: ChainComplex, result: MinimizeResult) -> bool:
    """Conjugating X by the certificates must reproduce minimal (+) disks."""
    block_form = direct_sum_all(
        X.ring, [result.minimal] + [disk(X.ring, n) for n in result.disks]
    )
    if tuple(block_form.ranks) != tuple(X.ranks):
        return False
    for m, (u, uinv) in enumerate(result.certificates):
        if linalg.matmul(u, uinv) != linalg.identity(X.ring, X.ranks[m]):
            return False
    for n in range(1, len(X.ranks)):
        u_prev_inv = result.certificates[n - 1][1]
        u_n = result.certificates[n][0]
        conj = linalg.apply_basis_change(X.d(n), u_prev_inv, u_n)
        if conj != block_form.d(n):
            return False
    return True


# ---------------------------------------------------------------------------
# composite ranks and the barcode


def _require_minimal(M: ChainComplex):
    for n in range(1, len(M.ranks)):
        if linalg.find_unit_pivot(M.d(n)) is not None:
            raise UsageError(f"complex is not minimal: unit entry in d{n}")


def _r_parts(M: ChainComplex):
    """The k-matrices B_n with d_n = r * B_n, for n = 1..top."""
    return [None] + [M.d(n).r_coefficients() for n in range(1, len(M.ranks))]


def composite_rank(M: ChainComplex, a: int, b: int) -> int:
    """rank_k(B_{a+1} @ ... @ B_b); equals ranks[a] when a == b."""
    require_valid(M)
    _require_minimal(M)
    if not (0 <= a <= b <= M.top):
        raise UsageError(f"degrees out of range: ({a}, {b}) for top {M.top}")
    if a == b:
        return M.ranks[a]
    parts = _r_parts(M)
    prod = parts[a + 1]
    for n in range(a + 2, b + 1):
        prod = linalg.matmul_k(prod, parts[n])
    return linalg.rank_k(prod)


def rho_table(M: ChainComplex) -> dict:
    """All composite ranks {(a, b): rho(a, b)} for 0 <= a <= b <= top."""
    require_valid(M)
    _require_minimal(M)
    parts = _r_parts(M)
    table = {}
    for a in range(len(M.ranks)):
        table[(a, a)] = M.ranks[a]
        prod = None
        for b in range(a + 1, len(M.ranks)):
            prod = parts[b] if prod is None else linalg.matmul_k(prod, parts[b])
            table[(a, b)] = linalg.rank_k(prod)
    return table


def barcode(M: ChainComplex) -> Counter:
    """Interval multiplicities of a minimal complex by inclusion-exclusion."""
    table = rho_table(M)
    rho = lambda a, b: table.get((a, b), 0)
    out = Counter()
    for a in range(len(M.ranks)):
        for b in range(a, len(M.ranks)):
            mult = rho(a, b) - rho(a - 1, b) - rho(a, b + 1) + rho(a - 1, b + 1)
            if mult < 0:
                raise ChaincellError(
                    f"negative interval multiplicity at ({a}, {b}); "
                    "minimal complexes always split into intervals"
                )
            if mult:
                out[(a, b - a)] = mult
    return out


def decompose(X: ChainComplex) -> Decomposition:
    """Full structure: disks from minimization, intervals from the barcode.

    Verifies internally that the reconstruction has the same rank vector
    as the input and the same rho table as the minimal part.
    """
    require_valid(X)
    mr = minimize(X)
    intervals = barcode(mr.minimal)
    dec = Decomposition(intervals, Counter(mr.disks), mr.certificates, mr.minimal)

    for n in range(len(X.ranks)):
        covering = sum(m for (i, j), m in intervals.items() if i <= n <= i + j)
        d_here = dec.disks.get(n, 0) + dec.disks.get(n + 1, 0)
        if X.ranks[n] != covering + d_here:
            raise ChaincellError(
                f"rank accounting failed at degree {n}: "
                f"{X.ranks[n]} != {covering} + {d_here}"
            )
    rebuilt_min = direct_sum_all(
        X.ring, [interval(X.ring, i, j) for i, j in dec.interval_list()]
    )
    if rho_table(rebuilt_min) != rho_table(mr.minimal):
        raise ChaincellError("reconstruction differs from input in its rho table")
    return dec


def reconstruct(dec: Decomposition, ring: RingSpec) -> ChainComplex:
    """Direct sum of the named intervals then disks, in sorted order."""
    summands = [interval(ring, i, j) for i, j in dec.interval_list()]
    summands += [disk(ring, n) for n in dec.disk_list()]
    return direct_sum_all(ring, summands)


def bottom_degree(X: ChainComplex) -> Optional[int]:
    """Lowest degree of the minimal model; None when X is contractible."""
    minimal = minimize(X).minimal
    for n, r in enumerate(minimal.ranks):
        if r:
            return n
    return None
