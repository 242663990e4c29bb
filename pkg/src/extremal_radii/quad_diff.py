"""The one-parameter quadratic differential behind the extremal picture.

For 0 < gamma < 9 the differential is

    Q(w) dw^2,   Q(w) = -((9 - gamma) w^3 + gamma) / (w^2 (w^3 - 1)^2).

Its zeros and poles carve the plane into the circular domains of the
extremal configuration: double poles at the origin and at the three cube
roots of unity, three simple zeros on the circle of radius
(gamma/(9-gamma))^(1/3), and the point at infinity.  This module evaluates
Q, reports that divisor, and traces trajectories (curves along which
Q dw^2 stays real and positive) for plotting.

Tracing is unit-speed fixed-step 4th-order integration with the square-root
branch carried along by sign-matching; the step shrinks inside a small moat
around critical points so the path can stop within 1e-6 of them instead of
hopping across.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousDirectionError, DomainError, PoleProximityError
from .fileio import atomic_write_text

__all__ = [
    "QDInstance",
    "Trajectory",
    "ZeroPoleData",
    "hausdorff_distance",
    "q_eval",
    "render_svg",
    "trace_trajectory",
    "write_trajectory_csv",
    "zeros_and_poles",
]

_POLE_GUARD = 1e-12
_STOP_RADIUS = 1e-6
_CLASSIFY_RADIUS = 1e-3
# largest tangent rotation allowed across one step before it is halved
_MAX_TURN = 2.5e-3

_CUBE_ROOTS_OF_UNITY = (
    complex(1.0, 0.0),
    complex(-0.5, 0.5 * math.sqrt(3.0)),
    complex(-0.5, -0.5 * math.sqrt(3.0)),
)


@dataclass(frozen=True)
class QDInstance:
    """Parameter slot for the differential; gamma must lie in (0, 9) so the
    leading coefficient 9 - gamma stays positive and the zero radius is
    defined."""

    gamma: float

    def __post_init__(self):
        gamma = float(self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if not (0.0 < gamma < 9.0) or not math.isfinite(gamma):
            raise DomainError(f"gamma must lie in (0, 9), got {self.gamma!r}")


def q_eval(instance: QDInstance, w: complex) -> complex:
    """Value of Q at w.  Refuses points within 1e-12 of a pole (the origin
    or a cube root of unity), naming the pole."""
    w = complex(w)
    if abs(w) <= _POLE_GUARD:
        raise PoleProximityError("evaluation point sits on the origin pole", 0j)
    w3 = w * w * w
    if abs(w3 - 1.0) <= _POLE_GUARD:
        pole = min(_CUBE_ROOTS_OF_UNITY, key=lambda u: abs(w - u))
        raise PoleProximityError("evaluation point sits on a unit-root pole", pole)
    g = instance.gamma
    return -((9.0 - g) * w3 + g) / (w * w * (w3 - 1.0) ** 2)


@dataclass(frozen=True)
class ZeroPoleData:
    """Divisor of Q dw^2: simple zeros, finite double poles, and the signed
    order at infinity (positive = zero).  The orders must balance to the
    spherical total of -4, which divisor_degree exposes for checking."""

    zeros: tuple[complex, ...]
    poles: tuple[tuple[complex, int], ...]
    infinity_order: int
    note: str

    @property
    def divisor_degree(self) -> int:
        return len(self.zeros) + self.infinity_order - sum(o for _, o in self.poles)


def zeros_and_poles(instance: QDInstance) -> ZeroPoleData:
    """Zeros and poles of Q dw^2 for this gamma.

    The zeros solve (9 - gamma) w^3 + gamma = 0: modulus
    (gamma / (9 - gamma))^(1/3) at arguments pi/3, pi, 5*pi/3, so one is
    real negative and the other two are its rotations, a conjugate pair.
    Finite poles are double: the origin (from w^2) and the three cube roots
    of unity (from (w^3 - 1)^2).

    At infinity the rational function decays like w^-5 (degree 3 over
    degree 8), and in the chart z = 1/w the dw^2 factor contributes z^-4,
    leaving a simple zero of the differential there.  That +1 is exactly
    what the spherical degree count needs: 3 + 1 - (2 + 3*2) = -4.
    """
    g = instance.gamma
    rho = math.exp(math.log(g / (9.0 - g)) / 3.0)
    upper = rho * cmath.exp(1j * (math.pi / 3.0))
    zeros = (upper, complex(-rho, 0.0), upper.conjugate())
    poles = ((complex(0.0, 0.0), 2),) + tuple((u, 2) for u in _CUBE_ROOTS_OF_UNITY)
    note = ("infinity carries a simple zero of the differential: the function "
            "itself vanishes to order 5 there, and the chart change for dw^2 "
            "subtracts 4")
    return ZeroPoleData(zeros=zeros, poles=poles, infinity_order=1, note=note)


@dataclass(frozen=True)
class Trajectory:
    """A traced arc: points with their arclength stamps, whether the path
    closed onto its start, what kind of point it started near, and the
    worst reality defect max |Im(Q(mid) * u^2)| seen along the way (u the
    unit chord of each step)."""

    points: tuple[complex, ...]
    arclengths: tuple[float, ...]
    closed: bool
    start_kind: str
    max_im_residual: float

    def __post_init__(self):
        if len(self.points) != len(self.arclengths):
            raise DomainError("points and arclengths must have equal length")
        if len(self.points) < 2:
            raise DomainError("a trajectory needs at least 2 points")
        if self.start_kind not in ("zero", "pole", "regular"):
            raise DomainError(f"bad start_kind {self.start_kind!r}")
        for a, b in zip(self.points, self.points[1:]):
            if abs(b - a) > 1e-2:
                raise DomainError("consecutive trajectory points more than 1e-2 apart")
        if self.closed and abs(self.points[-1] - self.points[0]) > 1e-6:
            raise DomainError("closed trajectory must end within 1e-6 of its start")

    @property
    def arclength(self) -> float:
        return self.arclengths[-1]


def _critical_points(instance: QDInstance) -> tuple[complex, ...]:
    data = zeros_and_poles(instance)
    return data.zeros + tuple(loc for loc, _ in data.poles)


def _nearest(points: tuple[complex, ...], w: complex) -> tuple[float, complex]:
    best = min(points, key=lambda c: abs(w - c))
    return abs(w - best), best


def trace_trajectory(instance: QDInstance, start: complex, direction_sign: int = 1,
                     max_arclength: float = 4.0, step: float = 1e-3) -> Trajectory:
    """Trace the trajectory of Q dw^2 through `start`.

    Integrates dw/ds = t(w) with t = exp(-i arg Q / 2), the unit direction
    making Q * t^2 real positive, by classical 4th-order steps of length
    `step`.  The branch of the square root follows the path: each tangent
    evaluation is flipped to keep a positive inner product with the
    previous direction, and direction_sign (+1 or -1) picks the initial
    orientation.

    Stops when the path returns to within 1e-6 of its start with aligned
    direction after at least 10 steps (closed), when it comes within 1e-6
    of a zero or pole, or at max_arclength.  The step length shrinks to
    half the distance to the nearest critical point inside a 1e-2 moat so
    the 1e-6 stop radius is actually reachable, and is halved locally
    whenever the tangent rotates by more than _MAX_TURN radians across a
    single step, which keeps the chord-midpoint reality defect of every
    recorded segment at the 1e-5 scale even on tightly curved loops.

    Starting within 1e-6 of a pole or zero is refused (for a zero the
    trajectory direction is ambiguous; offset the start instead).
    """
    if direction_sign not in (1, -1):
        raise DomainError(f"direction_sign must be +1 or -1, got {direction_sign!r}")
    if not (max_arclength > 0.0) or not math.isfinite(max_arclength):
        raise DomainError(f"max_arclength must be positive, got {max_arclength!r}")
    if not (0.0 < step <= 1e-2):
        raise DomainError(f"step must lie in (0, 1e-2], got {step!r}")
    start = complex(start)
    data = zeros_and_poles(instance)
    pole_dist, pole = _nearest(tuple(loc for loc, _ in data.poles), start)
    if pole_dist <= _STOP_RADIUS:
        raise PoleProximityError("trajectory start is on a pole", pole)
    zero_dist, _zero = _nearest(data.zeros, start)
    if zero_dist <= _STOP_RADIUS:
        raise AmbiguousDirectionError(
            "trajectory start is on a zero, where three directions meet; "
            "offset the start along one of them")
    criticals = data.zeros + tuple(loc for loc, _ in data.poles)
    if zero_dist <= _CLASSIFY_RADIUS:
        start_kind = "zero"
    elif pole_dist <= _CLASSIFY_RADIUS:
        start_kind = "pole"
    else:
        start_kind = "regular"

    def tangent(w: complex, ref: complex | None) -> complex:
        t = cmath.exp(-0.5j * cmath.phase(q_eval(instance, w)))
        if ref is not None and (t.real * ref.real + t.imag * ref.imag) < 0.0:
            t = -t
        return t

    def rk4(w: complex, h: float, ref: complex) -> tuple[complex, complex, float]:
        k1 = tangent(w, ref)
        k2 = tangent(w + 0.5 * h * k1, k1)
        k3 = tangent(w + 0.5 * h * k2, k2)
        k4 = tangent(w + h * k3, k3)
        drift = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        turn = abs(cmath.phase(k4 * k1.conjugate()))
        return w + h * drift, drift / abs(drift), turn

    ref = tangent(start, None)
    if direction_sign < 0:
        ref = -ref
    initial_ref = ref

    points = [start]
    arclengths = [0.0]
    w = start
    s = 0.0
    closed = False
    residual = 0.0
    closure_armed = False
    h_prev = step
    max_steps = int(max_arclength / step) * 20 + 2000

    for _ in range(max_steps):
        if s >= max_arclength:
            break
        d_crit, _ = _nearest(criticals, w)
        if d_crit <= _STOP_RADIUS and len(points) > 1:
            break
        d_start = abs(w - start)
        if len(points) > 10 and d_start > 2.0 * step:
            closure_armed = True
        if closure_armed and d_start < h_prev:
            # aim one signed step at the foot of the start point
            t_here = tangent(w, ref)
            gap = start - w
            along = gap.real * t_here.real + gap.imag * t_here.imag
            w_peri, drift, _ = rk4(w, along, ref)
            if (abs(w_peri - start) <= _STOP_RADIUS
                    and drift.real * initial_ref.real + drift.imag * initial_ref.imag > 0.0):
                s += abs(along)
                mid = 0.5 * (w + w_peri)
                chord = w_peri - w
                if abs(chord) > 0.0:
                    u = chord / abs(chord)
                    residual = max(residual, abs((q_eval(instance, mid) * u * u).imag))
                points.append(w_peri)
                arclengths.append(s)
                closed = True
                break
            closure_armed = False
        h = min(step, max(0.5 * d_crit, 1e-7))
        try:
            w_next, drift, turn = rk4(w, h, ref)
            while turn > _MAX_TURN and h > 1e-7:
                h *= 0.5
                w_next, drift, turn = rk4(w, h, ref)
        except PoleProximityError:
            break
        mid = 0.5 * (w + w_next)
        chord = w_next - w
        if abs(chord) > 0.0:
            u = chord / abs(chord)
            residual = max(residual, abs((q_eval(instance, mid) * u * u).imag))
        w = w_next
        ref = drift
        s += h
        h_prev = h
        points.append(w)
        arclengths.append(s)

    return Trajectory(points=tuple(points), arclengths=tuple(arclengths),
                      closed=closed, start_kind=start_kind,
                      max_im_residual=residual)


def hausdorff_distance(points_a, points_b) -> float:
    """Symmetric Hausdorff distance between two finite point sets in the
    plane.  Chunked so the pairwise distance matrix never exceeds 512 rows
    at a time."""
    a = np.asarray(tuple(points_a), dtype=complex)
    b = np.asarray(tuple(points_b), dtype=complex)
    if a.size == 0 or b.size == 0:
        raise DomainError("hausdorff_distance needs non-empty point sets")

    def directed(p: np.ndarray, q: np.ndarray) -> float:
        worst = 0.0
        for i in range(0, p.size, 512):
            block = np.abs(p[i:i + 512, None] - q[None, :])
            worst = max(worst, float(block.min(axis=1).max()))
        return worst

    return max(directed(a, b), directed(b, a))


def write_trajectory_csv(trajectory: Trajectory, path: str) -> None:
    """CSV rows `s,re,im`, one per trajectory point, 17 significant digits,
    LF line endings, no header."""
    lines = [f"{s:.17g},{p.real:.17g},{p.imag:.17g}"
             for s, p in zip(trajectory.arclengths, trajectory.points)]
    atomic_write_text(path, "\n".join(lines) + "\n")


def _px(w: complex) -> tuple[float, float]:
    # world box [-1.8, 1.8]^2 onto a 720px canvas, y up
    return ((w.real + 1.8) / 3.6 * 720.0, (1.8 - w.imag) / 3.6 * 720.0)


def render_svg(instance: QDInstance, trajectories, path: str) -> None:
    """One SVG scene: the unit circle for reference, poles as crosses,
    zeros as dots, and every trajectory as a polyline (points decimated
    4:1, endpoints kept)."""
    data = zeros_and_poles(instance)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 720 720" '
        'width="720" height="720">',
        '<rect width="720" height="720" fill="white"/>',
        f'<circle cx="360" cy="360" r="{720.0 / 3.6:.2f}" fill="none" '
        'stroke="#bbbbbb" stroke-dasharray="4 4"/>',
    ]
    for trajectory in trajectories:
        pts = list(trajectory.points[::4])
        if pts[-1] != trajectory.points[-1]:
            pts.append(trajectory.points[-1])
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(_px, pts))
        parts.append(f'<polyline points="{coords}" fill="none" '
                     'stroke="#1f77b4" stroke-width="1.5"/>')
    for loc, _order in data.poles:
        x, y = _px(loc)
        parts.append(f'<path d="M {x - 5:.2f} {y - 5:.2f} L {x + 5:.2f} {y + 5:.2f} '
                     f'M {x - 5:.2f} {y + 5:.2f} L {x + 5:.2f} {y - 5:.2f}" '
                     'stroke="#333333" stroke-width="2" fill="none"/>')
    for z in data.zeros:
        x, y = _px(z)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#d62728"/>')
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")
