"""Randomized self-check nets shared by the CLI and the acceptance tests.

Every net takes an explicit random.Random so a fixed seed reproduces the
exact same cases on any platform. Failures are hard errors (a property
that must hold was violated); findings are observations queued for human
review (currently only product-versus-composition comparisons).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb

from .abelian import FgAbGroup
from .dr_finite import ZkAction, orbit_oracle, to_koszul
from .exact_linalg import IntMatrix, det, kernel_basis, snf, track_entry_growth
from .kgraph import (
    KGraphSkeleton,
    groupoid_homology,
    kunneth,
    product,
    single_vertex_closed_form,
    validate,
)
from .koszul import build, homology, verify_shift_identity


@dataclass
class NetResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        unit = "pairs" if self.name == "kunneth" else "cases"
        bits = [f"{self.name}: {self.cases} {unit}, {len(self.failures)} failures"]
        if self.name == "kunneth":
            bits.append(f"{len(self.findings)} findings")
        return ", ".join(bits)


DEFAULT_CASES = {
    "snf": 500,
    "complex": 60,
    "single-vertex": 200,
    "kunneth": 50,
    "zk-action": 100,
}


def _random_matrix(rng: random.Random, rows: int, cols: int, lo: int, hi: int) -> IntMatrix:
    return IntMatrix(rows, cols, [rng.randint(lo, hi) for _ in range(rows * cols)])


def _random_permutation(rng: random.Random, n: int) -> list[int]:
    p = list(range(n))
    rng.shuffle(p)
    return p


def _perm_power(p: list[int], e: int) -> tuple[int, ...]:
    q = list(range(len(p)))
    for _ in range(e):
        q = [p[x] for x in q]
    return tuple(q)


def _perm_matrix(p) -> IntMatrix:
    n = len(p)
    entries = [0] * (n * n)
    for y, img in enumerate(p):
        entries[img * n + y] = 1
    return IntMatrix(n, n, entries)


# ---------------------------------------------------------------------------
# Smith normal form properties

def snf_net(rng: random.Random, cases: int = 500, max_dim: int = 50,
            max_entry: int = 100) -> NetResult:
    """u @ a @ v = diag(d), unimodularity, and the divisibility chain."""
    out = NetResult("snf", cases)
    for idx in range(cases):
        rows = rng.randint(1, max_dim)
        cols = rng.randint(1, max_dim)
        a = _random_matrix(rng, rows, cols, -max_entry, max_entry)
        r = snf(a)

        def fail(msg):
            out.failures.append(f"case {idx} ({rows}x{cols}): {msg}")

        if len(r.d) != min(rows, cols):
            fail(f"diagonal has length {len(r.d)}")
            continue
        if any(x < 0 for x in r.d):
            fail("negative invariant factor")
        nz = [x for x in r.d if x]
        if list(r.d[: len(nz)]) != nz:
            fail("zero entries interleave nonzero ones")
        for s, t in zip(nz, nz[1:]):
            if t % s:
                fail(f"divisibility breaks: {s} does not divide {t}")
        if r.rank != len(nz):
            fail(f"rank {r.rank} != {len(nz)} nonzero factors")
        diag = [[r.d[i] if i == j and i < len(r.d) else 0 for j in range(cols)]
                for i in range(rows)]
        if (r.u @ a @ r.v) != IntMatrix.from_rows(diag):
            fail("u @ a @ v is not the diagonal form")
        if abs(det(r.u)) != 1:
            fail(f"u has determinant {det(r.u)}")
        if abs(det(r.v)) != 1:
            fail(f"v has determinant {det(r.v)}")
    return out


# ---------------------------------------------------------------------------
# complexes from random commuting families

def _random_commuting_family(rng: random.Random, k: int, m: int) -> list[IntMatrix]:
    style = rng.choice(["poly", "perm", "diag"])
    if style == "poly":
        # polynomials in one integer matrix commute pairwise
        b = _random_matrix(rng, m, m, -2, 2)
        b2 = b @ b
        ident = IntMatrix.identity(m)
        fam = []
        for _ in range(k):
            c0, c1, c2 = (rng.randint(-2, 2) for _ in range(3))
            fam.append(c0 * ident + c1 * b + c2 * b2)
        return fam
    if style == "perm":
        base = _random_permutation(rng, m)
        return [_perm_matrix(_perm_power(base, rng.randint(0, m))) for _ in range(k)]
    diags = []
    for _ in range(k):
        entries = [0] * (m * m)
        for i in range(m):
            entries[i * m + i] = rng.randint(-3, 3)
        diags.append(IntMatrix(m, m, entries))
    return diags


def complex_net(rng: random.Random, cases: int = 60) -> NetResult:
    """Boundary composition, Euler characteristic, and shift identities.

    For every sampled complex: consecutive boundaries compose to zero;
    the alternating sum of homology free ranks vanishes; and for every
    kernel-basis cycle in every degree and every endomorphism index, the
    shifted cycle differs from the original by a boundary.
    """
    out = NetResult("complex", cases)
    for idx in range(cases):
        k = rng.randint(1, 3)
        m = rng.randint(1, 4)
        fam = _random_commuting_family(rng, k, m)
        c = build(k, fam)
        for p in range(2, k + 1):
            if not (c.boundary(p - 1) @ c.boundary(p)).is_zero():
                out.failures.append(f"case {idx}: boundary composition nonzero at {p}")
        profile = homology(c)
        if profile.euler_characteristic() != 0:
            out.failures.append(f"case {idx}: euler characteristic nonzero")
        for p in range(k + 1):
            kb = kernel_basis(c.boundary(p))
            cycles = [tuple(kb._a[:, j]) for j in range(kb.cols)]
            for i in range(k):
                if not verify_shift_identity(c, i, p, cycles):
                    out.failures.append(
                        f"case {idx}: shift identity fails in degree {p}, index {i}"
                    )
    return out


# ---------------------------------------------------------------------------
# single-vertex closed form against the chain engine

def single_vertex_net(rng: random.Random, cases: int = 200) -> NetResult:
    out = NetResult("single-vertex", cases)
    for idx in range(cases):
        k = rng.randint(1, 4)
        counts = [rng.randint(2, 7) for _ in range(k)]
        closed = single_vertex_closed_form(counts)
        sk = KGraphSkeleton(("v",), tuple(IntMatrix(1, 1, [n]) for n in counts))
        engine = groupoid_homology(sk)
        if closed.groups != engine.groups:
            out.failures.append(
                f"case {idx}: counts {counts}: closed form {closed.describe()} "
                f"vs engine {engine.describe()}"
            )
    return out


# ---------------------------------------------------------------------------
# product skeletons against composed profiles

def _ensure_no_zero_rows(rng: random.Random, rows: list[list[int]], hi: int):
    for row in rows:
        if not any(row):
            row[rng.randrange(len(row))] = rng.randint(1, hi)


def _random_skeleton(rng: random.Random, max_vertices: int = 3,
                     max_entry: int = 3, max_k: int = 2) -> KGraphSkeleton:
    k = rng.randint(1, max_k)
    n = rng.randint(1, max_vertices)
    vertices = tuple(f"v{i}" for i in range(n))
    if k == 1:
        rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)]
        _ensure_no_zero_rows(rng, rows, max_entry)
        return KGraphSkeleton(vertices, (IntMatrix.from_rows(rows),))
    # commuting pair strategies; retry until entries stay within bounds
    shift = IntMatrix(n, n, [1 if (v - w) % n == 1 or n == 1 and v == w else 0
                             for v in range(n) for w in range(n)])
    ident = IntMatrix.identity(n)
    for _ in range(200):
        style = rng.choice(["shift-poly", "equal", "identity", "diag"])
        if style == "shift-poly":
            mats = []
            for _ in range(2):
                acc = IntMatrix.zeros(n, n)
                for e in range(n):
                    coeff = rng.randint(0, max_entry)
                    if coeff:
                        p = ident
                        for _ in range(e):
                            p = p @ shift
                        acc = acc + coeff * p
                mats.append(acc)
        elif style == "equal":
            rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)]
            _ensure_no_zero_rows(rng, rows, max_entry)
            m = IntMatrix.from_rows(rows)
            mats = [m, m]
        elif style == "identity":
            rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)]
            _ensure_no_zero_rows(rng, rows, max_entry)
            mats = [IntMatrix.from_rows(rows), ident]
        else:
            mats = []
            for _ in range(2):
                entries = [0] * (n * n)
                for i in range(n):
                    entries[i * n + i] = rng.randint(1, max_entry)
                mats.append(IntMatrix(n, n, entries))
        sk = KGraphSkeleton(vertices, tuple(mats))
        largest = max(max(abs(x) for x in m.entries) for m in mats)
        if largest <= max_entry and not validate(sk):
            return sk
    # dependable fallback: a one-vertex pair always qualifies
    return KGraphSkeleton(
        ("v",),
        (IntMatrix(1, 1, [rng.randint(1, max_entry)]),
         IntMatrix(1, 1, [rng.randint(1, max_entry)])),
    )


def kunneth_net(rng: random.Random, cases: int = 50) -> NetResult:
    """Direct product homology versus the tensor/Tor composition.

    Disagreements are reported as findings (not failures) so a genuine
    counterexample would surface for review instead of crashing the net.
    """
    out = NetResult("kunneth", cases)
    for idx in range(cases):
        a = _random_skeleton(rng)
        b = _random_skeleton(rng)
        direct = groupoid_homology(product(a, b))
        composed = kunneth(groupoid_homology(a), groupoid_homology(b))
        if direct.groups != composed.groups:
            out.findings.append(
                f"pair {idx}: product of ({len(a.vertices)}v k={a.k}) and "
                f"({len(b.vertices)}v k={b.k}): direct {direct.describe()} "
                f"vs composed {composed.describe()}"
            )
    return out


# ---------------------------------------------------------------------------
# finite actions against the orbit oracle

def zk_net(rng: random.Random, cases: int = 100) -> NetResult:
    out = NetResult("zk-action", cases)
    for idx in range(cases):
        points = rng.randint(1, 12)
        k = rng.randint(1, 3)
        if rng.random() < 0.5:
            base = _random_permutation(rng, points)
            perms = tuple(_perm_power(base, rng.randint(0, points)) for _ in range(k))
        else:
            # disjoint supports: each generator shuffles only its own block
            owner = [rng.randrange(k) for _ in range(points)]
            perms = []
            for i in range(k):
                block = [x for x in range(points) if owner[x] == i]
                images = _random_permutation(rng, len(block))
                p = list(range(points))
                for pos, x in enumerate(block):
                    p[x] = block[images[pos]]
                perms.append(tuple(p))
            perms = tuple(perms)
        action = ZkAction(points, perms)
        direct = homology(to_koszul(action))
        oracle = orbit_oracle(action)
        if direct.groups != oracle.groups:
            out.failures.append(
                f"case {idx}: {points} points, k={k}: engine {direct.describe()} "
                f"vs orbits {oracle.describe()}"
            )
        if any(g.torsion for g in direct.groups):
            out.failures.append(f"case {idx}: torsion in a finite-action profile")
    return out


def point_net() -> NetResult:
    """The one-point action for k <= 5: H_n must be Z^C(k,n)."""
    out = NetResult("point-actions", 6)
    for k in range(6):
        action = ZkAction(1, tuple((0,) for _ in range(k)))
        profile = homology(to_koszul(action))
        expected = tuple(FgAbGroup.free(comb(k, n)) for n in range(k + 1))
        if profile.groups != expected:
            out.failures.append(f"k={k}: got {profile.describe()}")
    return out


# ---------------------------------------------------------------------------
# orchestration

def run_all(seed: int, cases: dict | None = None) -> list[NetResult]:
    counts = dict(DEFAULT_CASES)
    if cases:
        counts.update(cases)
    results = [
        snf_net(random.Random(f"{seed}/snf"), counts["snf"]),
        complex_net(random.Random(f"{seed}/complex"), counts["complex"]),
        single_vertex_net(random.Random(f"{seed}/single-vertex"),
                          counts["single-vertex"]),
        kunneth_net(random.Random(f"{seed}/kunneth"), counts["kunneth"]),
        zk_net(random.Random(f"{seed}/zk-action"), counts["zk-action"]),
        point_net(),
    ]
    return results


# ---------------------------------------------------------------------------
# performance workload

@dataclass
class PerfReport:
    """Timing and entry-growth summary for the reference workload.

    Growth is judged per diagonal reduction: the pipeline feeds exact
    results of one reduction (kernel bases) into the next, so each
    reduction's peak is compared with the entries it was given, which is
    what the pivoting strategy actually controls.
    """

    vertices: int
    k: int
    elapsed_s: float
    peak_bits: int
    worst: tuple[int, int, int, int] | None
    time_budget_s: float = 60.0
    ratio_budget: int = 64

    @property
    def ratio(self) -> float:
        if self.worst is None:
            return 0.0
        return self.worst[3] / self.worst[2]

    @property
    def ok(self) -> bool:
        return self.elapsed_s < self.time_budget_s and self.ratio < self.ratio_budget

    def lines(self) -> list[str]:
        if self.worst is None:
            growth = "perf: no reductions recorded"
        else:
            rows, cols, inp, peak = self.worst
            growth = (f"perf: worst reduction growth {self.ratio:.1f}x "
                      f"(budget {self.ratio_budget}x): {rows}x{cols} matrix, "
                      f"input {inp} bits, peak {peak} bits")
        return [
            f"perf: rank-{self.k} skeleton on {self.vertices} vertices",
            f"perf: homology in {self.elapsed_s:.2f} s (budget {self.time_budget_s:.0f} s)",
            f"perf: peak entry bits {self.peak_bits}",
            growth,
            f"perf: {'PASS' if self.ok else 'FAIL'}",
        ]


def perf_skeleton(seed: int, vertices: int = 100) -> KGraphSkeleton:
    """A deterministic rank-2 skeleton with single-digit entries.

    Both vertex matrices are integer polynomials in the same cyclic
    shift, so they commute, every row has positive entries, and every
    entry is one of the chosen coefficients (at most 9). Powers of the
    shift are written down by index instead of multiplied out.
    """
    rng = random.Random(f"{seed}/perf")
    n = vertices
    mats = []
    for _ in range(2):
        exponents = rng.sample(range(n), 4)
        entries = [0] * (n * n)
        for e in exponents:
            coeff = rng.randint(1, 9)
            for v in range(n):
                entries[v * n + ((v + e) % n)] += coeff
        mats.append(IntMatrix(n, n, entries))
    labels = tuple(f"v{i}" for i in range(n))
    return KGraphSkeleton(labels, tuple(mats))


def perf_workload(seed: int, vertices: int = 100) -> PerfReport:
    """Time the reference homology computation and record entry growth."""
    sk = perf_skeleton(seed, vertices)
    start = time.perf_counter()
    with track_entry_growth() as stats:
        groupoid_homology(sk)
    elapsed = time.perf_counter() - start
    return PerfReport(
        vertices=vertices,
        k=sk.k,
        elapsed_s=elapsed,
        peak_bits=stats.peak_bits,
        worst=stats.worst_reduction(),
    )
