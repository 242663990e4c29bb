"""Concrete disk configurations as a lower-bound oracle.

The functional p^gamma * r_1 * ... * r_n needs non-overlapping domains, and
disks are the one family whose inner radius at the center is known exactly:
it is the radius.  So every feasible disk system yields a rigorous lower
bound on the supremum, with no conformal mapping involved.  This module
samples such systems, grows their radii to the feasibility boundary, runs a
random-restart hill climb over (p, angles), and checks the two classical
pair/triple inequalities on anything it produces.

Feasibility is enforced exactly, not within a tolerance: radii are shaved
by ulps until every constraint holds under the same arithmetic the
validator uses.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InfeasibleConfigurationError
from .scalars import kuzmina_bound

__all__ = [
    "AngleSystem",
    "DiskConfiguration",
    "KuzminaCheck",
    "SearchResult",
    "functional_value",
    "kuzmina_check",
    "lavrentiev_check",
    "maximize_over_disks",
    "random_configuration",
    "symmetric_configuration",
]

_TWO_PI = 2.0 * math.pi


def _wrap_angle(t: float) -> float:
    """Reduce an angle into [0, 2*pi).  The plain % can round up onto the
    modulus itself for tiny negative inputs, so that case folds to 0."""
    t = t % _TWO_PI
    if t >= _TWO_PI:
        return 0.0
    return t


def _chord_between(theta_j: float, theta_k: float) -> float:
    """Distance between unit-circle points at the two angles.

    Every chord in this module, growth and validation alike, goes through
    this one expression so both sides agree to the last bit.
    """
    return 2.0 * abs(math.sin(0.5 * (theta_j - theta_k)))


@dataclass(frozen=True)
class AngleSystem:
    """Arc fractions alpha_k between consecutive anchor points; arc k spans
    alpha_k * pi radians, and the fractions must cover the circle:
    sum(alphas) = 2 within 1e-12, every alpha_k > 0."""

    alphas: tuple[float, ...]

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise DomainError("alphas must be non-empty")
        for a in alphas:
            if not (a > 0.0) or not math.isfinite(a):
                raise DomainError(f"arc fractions must be positive, got {a!r}")
        if abs(math.fsum(alphas) - 2.0) > 1e-12:
            raise DomainError(
                f"arc fractions must sum to 2 within 1e-12, got {math.fsum(alphas)!r}")

    def thetas(self, start: float = 0.0) -> tuple[float, ...]:
        """Anchor angles: start, then cumulative alpha_k * pi steps."""
        out = [_wrap_angle(start)]
        acc = start
        for a in self.alphas[:-1]:
            acc += a * math.pi
            out.append(_wrap_angle(acc))
        return tuple(out)


def _violating_pair(p: float, satellites) -> tuple[tuple[int, int], str] | None:
    """First violated disjointness constraint, or None.  Index 0 is the
    center disk, satellites count from 1."""
    n = len(satellites)
    for k in range(n):
        _, r = satellites[k]
        if p + r > 1.0:
            return (0, k + 1), (f"center disk and satellite {k + 1} overlap: "
                                f"p + r = {p + r!r} > 1")
    for j in range(n):
        tj, rj = satellites[j]
        for k in range(j + 1, n):
            tk, rk = satellites[k]
            c = _chord_between(tj, tk)
            if rj + rk > c:
                return (j + 1, k + 1), (f"satellites {j + 1} and {k + 1} overlap: "
                                        f"r_j + r_k = {rj + rk!r} > chord {c!r}")
    return None


@dataclass(frozen=True)
class DiskConfiguration:
    """A center disk of radius p at the origin plus satellites of radius
    r_k centered at unit-circle angles theta_k, all pairwise disjoint.

    Construction validates everything: positivity, angles in [0, 2*pi),
    p + r_k <= 1 against the center, r_j + r_k <= chord between anchors.
    The comparisons are exact, with no feasibility slack.
    """

    p: float
    satellites: tuple[tuple[float, float], ...]

    def __post_init__(self):
        p = float(self.p)
        satellites = tuple((float(t), float(r)) for t, r in self.satellites)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "satellites", satellites)
        if not (p > 0.0) or not math.isfinite(p):
            raise DomainError(f"center radius must be positive, got {p!r}")
        if not satellites:
            raise DomainError("at least one satellite is required")
        for t, r in satellites:
            if not (0.0 <= t < _TWO_PI):
                raise DomainError(f"satellite angle must lie in [0, 2*pi), got {t!r}")
            if not (r > 0.0) or not math.isfinite(r):
                raise DomainError(f"satellite radius must be positive, got {r!r}")
        bad = _violating_pair(p, satellites)
        if bad is not None:
            pair, message = bad
            raise InfeasibleConfigurationError(message, pair)

    def rotated(self, delta: float) -> "DiskConfiguration":
        """Same configuration with every anchor angle shifted by delta.

        Chords are re-evaluated at the new angles, and rounding can push a
        tight pair a few ulps past its chord; radii are re-shaved to keep
        feasibility exact, so the functional value may shed ulps too.
        """
        thetas = [_wrap_angle(t + delta) for t, _ in self.satellites]
        radii = [r for _, r in self.satellites]
        for k in range(len(radii)):
            radii[k] = _shave(radii[k], k, self.p, thetas, radii)
        return DiskConfiguration(self.p, tuple(zip(thetas, radii)))

    def to_dict(self) -> dict:
        return {"p": self.p,
                "satellites": [[t, r] for t, r in self.satellites]}

    @classmethod
    def from_dict(cls, data: dict) -> "DiskConfiguration":
        return cls(p=float(data["p"]),
                   satellites=tuple((float(t), float(r)) for t, r in data["satellites"]))


def _shave(candidate: float, k: int, p: float, thetas, radii) -> float:
    """Largest value <= candidate that satellite k's radius can take while
    every constraint involving k holds exactly under validator arithmetic.
    Walks down by ulps; the loop runs at most a handful of times."""
    if candidate <= 0.0:
        raise DomainError(f"no positive feasible radius for satellite {k + 1}")
    while True:
        ok = p + candidate <= 1.0
        if ok:
            for j, rj in enumerate(radii):
                if j == k:
                    continue
                if candidate + rj > _chord_between(thetas[k], thetas[j]):
                    ok = False
                    break
        if ok:
            return candidate
        candidate = math.nextafter(candidate, 0.0)
        if candidate <= 0.0:
            raise DomainError(f"no positive feasible radius for satellite {k + 1}")


def _grow_radii(p: float, thetas) -> list[float]:
    """Maximal feasible radii for fixed p and anchors: start every radius
    at min(1 - p, half the nearest chord), then sweep in index order
    growing each radius to its current slack, until a fixpoint (at most 10
    sweeps).  Feasibility holds exactly after every assignment."""
    n = len(thetas)
    cap = 1.0 - p
    radii = []
    for k in range(n):
        half = min(_chord_between(thetas[k], thetas[j])
                   for j in range(n) if j != k) * 0.5
        radii.append(min(cap, half))
    for k in range(n):
        radii[k] = _shave(radii[k], k, p, thetas, radii)
    for _ in range(10):
        changed = False
        for k in range(n):
            slack = cap
            for j in range(n):
                if j != k:
                    slack = min(slack, _chord_between(thetas[k], thetas[j]) - radii[j])
            candidate = _shave(slack, k, p, thetas, radii)
            if candidate > radii[k]:
                radii[k] = candidate
                changed = True
        if not changed:
            break
    return radii


def functional_value(config: DiskConfiguration, gamma: float) -> float:
    """p^gamma times the product of satellite radii.

    Uses the native power so integer gamma stays exact; a configuration
    only reaches this function after construction already validated it.
    """
    if not (gamma > 0.0) or not math.isfinite(gamma):
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return config.p ** gamma * math.prod(r for _, r in config.satellites)


def random_configuration(n: int, rng: np.random.Generator,
                         p: float | None = None) -> DiskConfiguration:
    """One feasible configuration: anchor arcs uniform on the simplex of
    arc fractions, p uniform on (0, 1) unless given, radii grown maximal.
    Arc fractions are floored at 1e-9 so no chord degenerates."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    alphas = rng.dirichlet(np.ones(n)) * 2.0
    alphas = np.maximum(alphas, 1e-9)
    alphas = alphas * (2.0 / alphas.sum())
    thetas = AngleSystem(tuple(alphas)).thetas()
    if p is None:
        p = float(rng.uniform(0.0, 1.0))
    p = min(max(float(p), 1e-9), 1.0 - 1e-9)
    radii = _grow_radii(p, thetas)
    return DiskConfiguration(p, tuple(zip(thetas, radii)))


class SearchResult(NamedTuple):
    best: DiskConfiguration
    value: float


def symmetric_configuration(gamma: float, n: int) -> DiskConfiguration:
    """Best configuration of the equally-spaced family, in closed form.

    With anchors at angles 2*pi*k/n every radius grows to 1 - p whenever
    1 - p stays under half the nearest chord, so the value is
    p^gamma (1-p)^n, maximized at p = gamma / (n + gamma).  The hill climb
    seeds its first restart here, which makes its result provably at least
    this configuration's value.
    """
    if not (gamma > 0.0) or not math.isfinite(gamma):
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    p = gamma / (n + gamma)
    thetas = [_wrap_angle((_TWO_PI * k) / n) for k in range(n)]
    radii = _grow_radii(p, thetas)
    return DiskConfiguration(p, tuple(zip(thetas, radii)))


def maximize_over_disks(gamma: float, n: int, iterations: int, seed: int,
                        restarts: int = 8,
                        perturbation: float = 0.1) -> SearchResult:
    """Hill-climb the functional over disk configurations.

    Runs `restarts` independent climbs, each `iterations` proposals long,
    with stream `seed + restart_index`.  Restart 0 starts from the
    symmetric closed-form optimum, so the result never falls below that
    value; the others start from random configurations.  A proposal jitters
    p and the angles at the current scale, regrows radii to maximal, and is
    accepted only on strict improvement; 50 consecutive rejections halve
    the scale.  Ties across restarts keep the lowest restart index.
    """
    if not (gamma > 0.0) or not math.isfinite(gamma):
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(iterations, int) or iterations < 1:
        raise DomainError(f"iterations must be an integer >= 1, got {iterations!r}")
    if not isinstance(seed, int) or seed < 0:
        raise DomainError(f"seed must be a non-negative integer, got {seed!r}")
    if not isinstance(restarts, int) or restarts < 1:
        raise DomainError(f"restarts must be an integer >= 1, got {restarts!r}")
    if not (0.0 < perturbation <= 1.0):
        raise DomainError(f"perturbation must lie in (0, 1], got {perturbation!r}")

    best_p = best_thetas = best_radii = None
    best_value = -math.inf
    for restart in range(restarts):
        rng = np.random.default_rng(seed + restart)
        if restart == 0:
            start = symmetric_configuration(gamma, n)
        else:
            start = random_configuration(n, rng)
        p = start.p
        thetas = [t for t, _ in start.satellites]
        radii = [r for _, r in start.satellites]
        value = p ** gamma * math.prod(radii)

        scale = perturbation
        rejections = 0
        for _ in range(iterations):
            jitter = rng.normal(0.0, scale, size=n + 1)
            cand_p = min(max(p + jitter[0], 1e-9), 1.0 - 1e-9)
            cand_thetas = [_wrap_angle(t + d) for t, d in zip(thetas, jitter[1:])]
            cand_radii = _grow_radii(cand_p, cand_thetas)
            cand_value = cand_p ** gamma * math.prod(cand_radii)
            if cand_value > value:
                p, thetas, radii, value = cand_p, cand_thetas, cand_radii, cand_value
                rejections = 0
            else:
                rejections += 1
                if rejections >= 50:
                    scale = max(0.5 * scale, 1e-12)
                    rejections = 0
        if value > best_value:
            best_p, best_thetas, best_radii, best_value = p, thetas, radii, value

    config = DiskConfiguration(best_p, tuple(zip(best_thetas, best_radii)))
    return SearchResult(best=config, value=functional_value(config, gamma))


def lavrentiev_check(r0: float, r1: float, distance: float) -> bool:
    """Classical two-disk pair bound: r0 * r1 <= distance^2."""
    for name, v in (("r0", r0), ("r1", r1), ("distance", distance)):
        if not (v > 0.0) or not math.isfinite(v):
            raise DomainError(f"{name} must be positive, got {v!r}")
    return r0 * r1 <= distance * distance


class KuzminaCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def kuzmina_check(config: DiskConfiguration, gamma: float | None = None) -> KuzminaCheck:
    """Three-satellite product inequality on a concrete configuration:

        p * r_1 * r_2 * r_3  <=  (9 / 4^(8/3)) * (c_12 c_13 c_23 d_1 d_2 d_3)^(2/3)

    with chords from the anchor angles and center distances identically 1
    (anchors sit on the unit circle).  gamma is accepted for signature
    symmetry with functional_value and ignored; the bound carries the first
    power of p regardless of the exponent in the functional.
    """
    if len(config.satellites) != 3:
        raise DomainError(
            f"kuzmina_check needs exactly 3 satellites, got {len(config.satellites)}")
    (t1, r1), (t2, r2), (t3, r3) = config.satellites
    chords = (_chord_between(t1, t2), _chord_between(t1, t3), _chord_between(t2, t3))
    lhs = config.p * r1 * r2 * r3
    rhs = kuzmina_bound(chords, (1.0, 1.0, 1.0))
    return KuzminaCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs)
