"""Cantor-Bendixson rank of finitely presented, weakly closed point clouds.

A cloud is a finite set of isolated points plus finitely many towers.  A
tower of depth ``k`` around a limit ``w`` with squared radii
``rho2[0..k-1]`` is the set of points

    w + sum_{l < len(s)} rho_l * u_{s[:l+1]}        (s a word of length <= k)

where the ``u`` are fresh orthonormal directions, orthogonal to every
coordinate vector.  The points with ``len(s) = k`` are isolated and each
point with ``len(s) < k`` is the weak limit of its children, so the set is
weakly closed and every distance can be written down exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hilbert import (PermRep, Vec, check_eta_fixed, double_coset_count, elements_moving)
from .structures import Structure

MAX_DEPTH = 8


class WindowTooSmall(ValueError):
    pass


def _frac_vec(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class Family:
    limit: tuple[Fraction, ...]
    rho2: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "limit", _frac_vec(self.limit))
        object.__setattr__(self, "rho2", _frac_vec(self.rho2))
        if any(r <= 0 for r in self.rho2):
            raise ValueError("squared radii must be positive")
        if len(self.rho2) > MAX_DEPTH:
            raise ValueError(f"tower depth {len(self.rho2)} exceeds {MAX_DEPTH}")

    @property
    def depth(self) -> int:
        return len(self.rho2)

    def radius2(self, lo: int, hi: int) -> Fraction:
        """Squared distance from a level-``lo`` point to a descendant at level ``hi``."""
        return sum(self.rho2[lo:hi], Fraction(0))

    def internal_distances(self) -> set[Fraction]:
        k = self.depth
        out = {Fraction(0)}
        for i, j in itertools.combinations(range(k + 1), 2):
            out.add(self.radius2(i, j))
        # two points whose words first differ at level p
        for p in range(k):
            for i in range(p + 1, k + 1):
                for j in range(p + 1, k + 1):
                    out.add(self.radius2(p, i) + self.radius2(p, j))
        return out


@dataclass
class PointCloud:
    isolated: list[tuple[Fraction, ...]] = field(default_factory=list)
    families: list[Family] = field(default_factory=list)

    def __post_init__(self):
        self.isolated = [_frac_vec(v) for v in self.isolated]
        self.families = [f if isinstance(f, Family) else Family(*f) for f in self.families]
        dims = {len(v) for v in self.isolated} | {len(f.limit) for f in self.families}
        if len(dims) > 1:
            raise ValueError(f"points of different dimensions: {sorted(dims)}")
        # an isolated point sitting on a tower's limit is that limit
        limits = {f.limit for f in self.families}
        self.isolated = sorted({v for v in self.isolated if v not in limits})

    @classmethod
    def from_json(cls, doc: dict) -> "PointCloud":
        fams = []
        for f in doc.get("families", []):
            rho2 = f["rho2"]
            if not isinstance(rho2, list):
                rho2 = [rho2] * int(f.get("depth", 1))
            fams.append(Family(tuple(Fraction(x) for x in f["limit"]), tuple(Fraction(r) for r in rho2)))
        return cls([tuple(Fraction(x) for x in v) for v in doc.get("isolated", [])], fams)

    def to_json(self) -> dict:
        s = lambda x: f"{x.numerator}/{x.denominator}"
        return {"isolated": [[s(x) for x in v] for v in self.isolated],
                "families": [{"limit": [s(x) for x in f.limit], "rho2": [s(r) for r in f.rho2],
                              "depth": f.depth} for f in self.families]}

    def is_empty(self) -> bool:
        return not self.isolated and not self.families

    def _anchors(self) -> list[tuple[tuple[Fraction, ...], Family | None]]:
        return [(v, None) for v in self.isolated] + [(f.limit, f) for f in self.families]


def _dist2(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(u, v)), Fraction(0))


def distance_set(Z: PointCloud) -> set[Fraction]:
    """All squared distances ``|xi - eta|^2`` for ``xi, eta`` in the cloud."""
    if Z.is_empty():
        return set()
    out = {Fraction(0)}
    for f in Z.families:
        out |= f.internal_distances()
    anchors = Z._anchors()
    for (a, fa), (b, fb) in itertools.combinations(anchors, 2):
        base = _dist2(a, b)
        ra = [fa.radius2(0, i) for i in range(fa.depth + 1)] if fa else [Fraction(0)]
        rb = [fb.radius2(0, j) for j in range(fb.depth + 1)] if fb else [Fraction(0)]
        for x in ra:
            for y in rb:
                out.add(base + x + y)
    return out


def cb_derivative(Z: PointCloud) -> PointCloud:
    """Remove the isolated points: the deepest level of every tower goes."""
    fams = [Family(f.limit, f.rho2[:-1]) for f in Z.families if f.depth > 0]
    return PointCloud([], fams)


def cb_rank(Z: PointCloud) -> int:
    """Number of derivatives needed to empty the cloud, checked against ``|D(Z)|``."""
    rank = 0
    D = distance_set(Z)
    while not Z.is_empty():
        Z = cb_derivative(Z)
        rank += 1
    if rank > len(D):
        raise AssertionError(f"rank {rank} exceeds |D(Z)| = {len(D)}")
    return rank


# --- generators and isometries ------------------------------------------------------

def tower(depth: int, rho2: Sequence | None = None, dim: int = 1) -> PointCloud:
    """A single tower of the given depth around the origin."""
    if rho2 is None:
        rho2 = [Fraction(1, 2 ** l) for l in range(depth)]
    return PointCloud([], [Family(tuple([Fraction(0)] * dim), tuple(rho2))])


def random_cloud(rng: random.Random, dim: int = 3, max_points: int = 4, max_families: int = 3,
                 max_depth: int = 4) -> PointCloud:
    def vec():
        return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim))

    isolated = [vec() for _ in range(rng.randint(0, max_points))]
    fams = [Family(vec(), tuple(Fraction(rng.randint(1, 9), rng.randint(1, 4))
                                for _ in range(rng.randint(0, max_depth))))
            for _ in range(rng.randint(0 if isolated else 1, max_families))]
    return PointCloud(isolated, fams)


def signed_permutation(perm: Sequence[int], signs: Sequence[int]):
    def apply(v):
        return tuple(signs[i] * v[perm[i]] for i in range(len(v)))
    return apply


def givens(i: int, j: int, cos: Fraction = Fraction(3, 5), sin: Fraction = Fraction(4, 5)):
    """Rotation in the ``(i, j)`` plane by an angle with rational sine and cosine."""
    def apply(v):
        v = list(v)
        v[i], v[j] = cos * v[i] - sin * v[j], sin * v[i] + cos * v[j]
        return tuple(v)
    return apply


def apply_isometry(Z: PointCloud, iso) -> PointCloud:
    return PointCloud([iso(v) for v in Z.isolated], [Family(iso(f.limit), f.rho2) for f in Z.families])


def random_isometry(rng: random.Random, dim: int):
    perm = list(range(dim))
    rng.shuffle(perm)
    sp = signed_permutation(perm, [rng.choice((-1, 1)) for _ in range(dim)])
    if dim < 2:
        return sp
    i, j = rng.sample(range(dim), 2)
    rot = givens(i, j)
    return lambda v: rot(sp(v))


# --- ambits ---------------------------------------------------------------------------

@dataclass
class AmbitResult:
    rank: int
    coset_bound: int
    holds: bool
    cloud: PointCloud
    orbit_points: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "coset_bound": self.coset_bound, "holds": self.holds,
                "orbit_points_in_window": self.orbit_points, "cloud": self.cloud.to_json()}


def ambit_rank_bound(S: Structure, rep: PermRep, eta: Vec, c: Sequence[int], window: int) -> AmbitResult:
    """CB rank of the orbit closure of ``eta`` against ``|V\\G/V|``, ``V`` the stabilizer of ``c``.

    ``eta`` must be a multiple of one basis vector.  Its orbit is then an
    orthonormal-up-to-scale set, so the closure is a depth-1 tower around 0
    unless the orbit is a single point.
    """
    if len(eta.support) != 1:
        raise ValueError("ambit presentation needs eta to be a multiple of a basis vector")
    (key, coeff), = eta.coords.items()
    sample = elements_moving(S, tuple(c), window)
    check_eta_fixed(rep, eta, c, sample)
    orbit = {rep.act(g, key) for g in sample}
    # the census of inner products between orbit points is {0, coeff^2}
    if len(orbit) == 1:
        if rep.points(key):
            raise WindowTooSmall(f"only one orbit point of {key!r} inside a window of {window}")
        cloud = PointCloud([(Fraction(coeff),)], [])
    else:
        cloud = PointCloud([], [Family((Fraction(0),), (Fraction(coeff) ** 2,))])
    rank = cb_rank(cloud)
    bound = double_coset_count(S, c)
    return AmbitResult(rank, bound, rank <= bound, cloud, len(orbit))
