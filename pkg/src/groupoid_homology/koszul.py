"""Chain complexes built from commuting integer endomorphisms.

Given commuting m x m integer matrices S_1 .. S_k acting on Z^m, the
complex has degree-p chain group Z^(C(k,p) * m): one block of m base
coordinates per strictly increasing p-tuple of indices from {1..k},
tuples ordered lexicographically, base coordinate fastest-varying. The
boundary drops one index at a time and applies id - S_i with an
alternating sign. Homology of this complex is what the rest of the
package computes for groupoid presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .abelian import HomologyProfile
from .errors import (
    BrokenComplex,
    DimensionMismatch,
    NoIntegerSolution,
    NonCommuting,
    NotACycle,
)
from .exact_linalg import (
    IntMatrix,
    _obj_zeros,
    cokernel,
    kernel_basis,
    solve_columns,
)


@dataclass(frozen=True)
class KoszulComplex:
    """The assembled complex: endomorphisms plus materialized boundaries.

    boundaries[p - 1] is the degree-p boundary matrix for 1 <= p <= k,
    mapping Z^(C(k,p) * m) -> Z^(C(k,p-1) * m).
    """

    k: int
    m: int
    endos: tuple[IntMatrix, ...]
    boundaries: tuple[IntMatrix, ...]

    def dim(self, p: int) -> int:
        """Rank of the degree-p chain group."""
        if not 0 <= p <= self.k:
            return 0
        return comb(self.k, p) * self.m

    def boundary(self, p: int) -> IntMatrix:
        """Boundary map out of degree p; zero maps close both ends."""
        if 1 <= p <= self.k:
            return self.boundaries[p - 1]
        if p == 0:
            return IntMatrix.zeros(0, self.dim(0))
        if p == self.k + 1:
            return IntMatrix.zeros(self.dim(self.k), 0)
        raise ValueError(f"degree {p} outside 0..{self.k + 1}")


def build(k: int, endos, m: int | None = None) -> KoszulComplex:
    """Assemble the complex for commuting endomorphisms of Z^m.

    The degree-p boundary sends a generator (i_1 < ... < i_p, v) to the
    sum over j of (-1)^(j+1) times (i_1 .. i_p with i_j removed,
    (id - S_{i_j}) v); for p = 1 this is just (id - S_{i_1}) v. The
    composition of consecutive boundaries is verified to vanish before
    returning, so a sign or indexing mistake fails loudly at build time.

    k = 0 is allowed and gives the bare module Z^m with no boundaries;
    m must then be passed explicitly.
    """
    k = int(k)
    endos = tuple(endos)
    if len(endos) != k:
        raise DimensionMismatch(f"expected {k} endomorphisms, got {len(endos)}")
    if k == 0:
        if m is None:
            raise DimensionMismatch("a rank-0 complex needs an explicit rank m")
        return KoszulComplex(0, int(m), (), ())
    m0 = endos[0].rows
    for s in endos:
        if s.rows != s.cols or s.rows != m0:
            raise DimensionMismatch(
                f"endomorphisms must all be square of one size; got {s.shape}"
            )
    if m is not None and int(m) != m0:
        raise DimensionMismatch(f"m={m} disagrees with endomorphism size {m0}")
    for i in range(k):
        for j in range(i + 1, k):
            if endos[i] @ endos[j] != endos[j] @ endos[i]:
                raise NonCommuting(f"endomorphisms {i} and {j} do not commute")

    diffs = [IntMatrix.identity(m0) - s for s in endos]
    neg_diffs = [-d for d in diffs]
    boundaries = []
    for p in range(1, k + 1):
        col_tuples = list(combinations(range(k), p))
        row_index = {t: idx for idx, t in enumerate(combinations(range(k), p - 1))}
        B = _obj_zeros(len(row_index) * m0, len(col_tuples) * m0)
        for ci, t in enumerate(col_tuples):
            for jj, idx in enumerate(t):
                rest = t[:jj] + t[jj + 1:]
                ri = row_index[rest]
                blk = diffs[idx] if jj % 2 == 0 else neg_diffs[idx]
                B[ri * m0:(ri + 1) * m0, ci * m0:(ci + 1) * m0] = blk._a
        boundaries.append(IntMatrix._wrap(B))

    c = KoszulComplex(k, m0, endos, tuple(boundaries))
    for p in range(2, k + 1):
        if not (c.boundary(p - 1) @ c.boundary(p)).is_zero():
            raise BrokenComplex(
                f"boundaries in degrees {p - 1} and {p} do not compose to zero"
            )
    return c


def homology(c: KoszulComplex, notes=()) -> HomologyProfile:
    """Homology groups H_0 .. H_k of the complex, exactly.

    Each degree works in a primitive basis of the kernel lattice: the
    incoming boundary columns are rewritten in that basis (always
    possible since boundaries land in kernels), and H_p is the cokernel
    of the rewritten matrix. The free rank of H_p is then automatically
    (kernel rank) - (image rank).
    """
    groups = []
    for p in range(c.k + 1):
        kb = kernel_basis(c.boundary(p))
        try:
            y = solve_columns(kb, c.boundary(p + 1))
        except NoIntegerSolution as e:
            raise BrokenComplex(
                f"degree-{p + 1} boundary image escapes the degree-{p} kernel"
            ) from e
        groups.append(cokernel(y))
    profile = HomologyProfile(tuple(groups), c.k, tuple(notes))
    if c.k >= 1 and profile.euler_characteristic() != 0:
        raise BrokenComplex("alternating sum of homology free ranks is nonzero")
    return profile


def _as_column_matrix(vectors, n: int) -> IntMatrix:
    cols = []
    for z in vectors:
        z = [int(x) for x in z]
        if len(z) != n:
            raise DimensionMismatch(f"cycle has length {len(z)}, expected {n}")
        cols.append(z)
    arr = np.array(cols, dtype=object).T.copy() if cols else np.empty((n, 0), dtype=object)
    return IntMatrix._wrap(arr)


def verify_shift_identity(c: KoszulComplex, i: int, degree: int, cycles) -> bool:
    """Check that base-shifting cycles by S_i only moves them by boundaries.

    Each element of cycles must be a degree-`degree` cycle z, given as a
    flat integer vector (NotACycle otherwise). The check applies S_i to
    every base block of z and asks whether (id (x) S_i) z - z lies in
    the integer column span of the next boundary; True means it does for
    all of the given cycles. The degree is explicit because different
    degrees can share the same chain rank.
    """
    p = int(degree)
    if not 0 <= p <= c.k:
        raise ValueError(f"degree {p} outside 0..{c.k}")
    if not 0 <= i < c.k:
        raise ValueError(f"endomorphism index {i} outside 0..{c.k - 1}")
    Z = _as_column_matrix(cycles, c.dim(p))
    if Z.cols == 0:
        return True
    bd = c.boundary(p) @ Z
    if not bd.is_zero():
        bad = [j for j in range(Z.cols) if (bd._a[:, j] != 0).any()]
        raise NotACycle(f"input {bad[0]} is not a degree-{p} cycle")
    S = c.endos[i]._a
    m = c.m
    W = np.empty_like(Z._a)
    for b in range(comb(c.k, p)):
        W[b * m:(b + 1) * m, :] = np.dot(S, Z._a[b * m:(b + 1) * m, :])
    shifted_minus_z = IntMatrix._wrap(W - Z._a)
    try:
        solve_columns(c.boundary(p + 1), shifted_minus_z)
        return True
    except NoIntegerSolution:
        return False
