"""Actions of Z^k on a finite set by commuting permutations.

An action is stored as k image arrays: perms[i][x] is where the i-th
generator sends the point x. The transformation groupoid of such an
action is computed through the same chain complex as the graph case,
with the permutation matrices acting on the free module over the points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import TRIVIAL, HomologyProfile, direct_sum
from .errors import DimensionMismatch, NonCommuting, NotBijective
from .exact_linalg import IntMatrix
from .koszul import KoszulComplex, build, homology


@dataclass(frozen=True)
class ZkAction:
    """k self-maps of {0, .., points-1}, intended to commute and be bijective.

    Construction only checks shapes and ranges; bijectivity and
    commutativity are semantic findings reported by validate_action and
    enforced by to_koszul.
    """

    points: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", int(self.points))
        object.__setattr__(
            self, "perms", tuple(tuple(int(v) for v in p) for p in self.perms)
        )
        if self.points < 0:
            raise DimensionMismatch(f"negative point count {self.points}")
        for i, p in enumerate(self.perms):
            if len(p) != self.points:
                raise DimensionMismatch(
                    f"permutation {i} has {len(p)} images for {self.points} points"
                )
            for v in p:
                if not 0 <= v < self.points:
                    raise DimensionMismatch(
                        f"permutation {i} maps to {v}, outside 0..{self.points - 1}"
                    )

    @property
    def k(self) -> int:
        return len(self.perms)


def _bijectivity_finding(i: int, p: tuple[int, ...], points: int) -> str | None:
    if sorted(p) == list(range(points)):
        return None
    missing = sorted(set(range(points)) - set(p))[0]
    return (
        f"permutations[{i}] is not a bijection: value {missing} is never hit "
        "(a self-map of a finite set is bijective exactly when it is surjective)"
    )


def _commutation_finding(a: "ZkAction", i: int, j: int) -> str | None:
    pi, pj = a.perms[i], a.perms[j]
    for x in range(a.points):
        if pi[pj[x]] != pj[pi[x]]:
            return (
                f"permutations[{i}] and permutations[{j}] do not commute: "
                f"they disagree on point {x}"
            )
    return None


def validate_action(a: ZkAction) -> list[str]:
    """Semantic findings: non-bijective maps, then non-commuting pairs."""
    findings = []
    bad = set()
    for i, p in enumerate(a.perms):
        f = _bijectivity_finding(i, p, a.points)
        if f:
            findings.append(f)
            bad.add(i)
    for i in range(a.k):
        for j in range(i + 1, a.k):
            if i in bad or j in bad:
                continue
            f = _commutation_finding(a, i, j)
            if f:
                findings.append(f)
    return findings


def _perm_matrix(p: tuple[int, ...], n: int) -> IntMatrix:
    entries = [0] * (n * n)
    for y, img in enumerate(p):
        entries[img * n + y] = 1
    return IntMatrix(n, n, entries)


def to_koszul(a: ZkAction) -> KoszulComplex:
    """Chain complex of the action: permutation matrices as endomorphisms.

    Column y of the i-th endomorphism carries a single 1 in row
    perms[i][y], matching how a point mass at y is pushed forward.
    """
    for i, p in enumerate(a.perms):
        f = _bijectivity_finding(i, p, a.points)
        if f:
            raise NotBijective(f)
    for i in range(a.k):
        for j in range(i + 1, a.k):
            f = _commutation_finding(a, i, j)
            if f:
                raise NonCommuting(f)
    endos = [_perm_matrix(p, a.points) for p in a.perms]
    return build(a.k, endos, m=a.points)


def orbit_count(a: ZkAction) -> int:
    """Number of orbits of the generated group on the points."""
    parent = list(range(a.points))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in a.perms:
        for x in range(a.points):
            rx, ry = find(x), find(p[x])
            if rx != ry:
                parent[rx] = ry
    return sum(1 for x in range(a.points) if find(x) == x)


def orbit_oracle(a: ZkAction) -> HomologyProfile:
    """Homology predicted from the orbit decomposition alone.

    The action restricted to one orbit is transitive, so its stabilizers
    are finite-index subgroups of Z^k and the orbit contributes exactly
    what a one-point system with the trivial action contributes. That
    one-point profile is computed here by the same chain engine, and the
    total is the direct sum over orbits. This is a route to the answer
    that never looks at which permutation sends which point where, only
    at the orbit partition, which makes it a useful cross-check.
    """
    point = build(a.k, [IntMatrix.identity(1)] * a.k, m=1)
    per_orbit = homology(point)
    n_orbits = orbit_count(a)
    groups = []
    for g in per_orbit.groups:
        acc = TRIVIAL
        for _ in range(n_orbits):
            acc = direct_sum(acc, g)
        groups.append(acc)
    return HomologyProfile(
        tuple(groups),
        a.k,
        (f"orbit decomposition: {n_orbits} orbits on {a.points} points",),
    )
