"""Closed-form scalar functions for the planar radii-product problem.

Setting: a center domain B0 containing the origin and n satellite domains
B1..Bn anchored at points a_k on the unit circle, all pairwise disjoint.
Writing p for the inner radius of B0 at 0 and r_k for the inner radius of
B_k at a_k, the figure of merit is

    p^gamma * r_1 * ... * r_n,          0 < gamma <= n.

This module holds the exact scalar formulas the audit replays: the value i0
of the rotationally symmetric configuration, the threshold radius obtained
from the pair bound, the three-satellite product bound, the separation
weight psi, and several independent forms of d/dgamma ln i0.

Every power x**y with positive base goes through exp(y * log(x)) so the
numbers the audit reports are reproducible bit for bit on one platform.
"""

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PRODUCT_BOUND_CONSTANT",
    "Params",
    "SigmaPair",
    "case_a_bound",
    "chord",
    "dlog_i0_printed",
    "dlog_i0_printed_terms",
    "dlog_i0_termwise",
    "dlog_i0_termwise_terms",
    "dlog_i0_true",
    "dlog_i0_upper_bound",
    "dlog_i0_upper_bound_terms",
    "i0",
    "kuzmina_bound",
    "lemma1_threshold",
    "log_i0",
    "log_psi_second_derivative",
    "psi",
]


def _pow(x: float, y: float) -> float:
    """x**y for x > 0, evaluated as exp(y * ln x)."""
    if not (x > 0.0):
        raise DomainError(f"power base must be positive, got {x!r}")
    return math.exp(y * math.log(x))


#: 9 / 4^(8/3), the constant of the three-satellite product bound.
PRODUCT_BOUND_CONSTANT = 9.0 / math.exp((8.0 / 3.0) * math.log(4.0))


@dataclass(frozen=True)
class Params:
    """Problem size: n satellite anchors on the unit circle plus the center
    exponent gamma.  The problem is posed for integer n >= 2 and
    0 < gamma <= n; formula-level helpers that need a wider gamma window
    (the derivative audit differentiates ln i0 over (0, 9)) take plain
    floats instead of a Params."""

    n: int
    gamma: float

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        gamma = float(self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if not (0.0 < gamma <= self.n) or not math.isfinite(gamma):
            raise DomainError(
                f"gamma must lie in (0, n] = (0, {self.n}], got {self.gamma!r}")


@dataclass(frozen=True)
class SigmaPair:
    """Two separation exponents constrained by sigma1 + sigma2 = 2 sqrt(gamma).

    Each sigma must lie in [0, 2] and the sum constraint must hold within
    1e-12; violating either raises DomainError.
    """

    sigma1: float
    sigma2: float
    gamma: float

    def __post_init__(self):
        for name, value in (("sigma1", self.sigma1), ("sigma2", self.sigma2)):
            if not (0.0 <= value <= 2.0):
                raise DomainError(f"{name} must lie in [0, 2], got {value!r}")
        target = 2.0 * math.sqrt(self.gamma)
        if abs(self.sigma1 + self.sigma2 - target) > 1e-12:
            raise DomainError(
                "sigma1 + sigma2 must equal 2*sqrt(gamma) within 1e-12; got "
                f"{self.sigma1 + self.sigma2!r} against {target!r}")


def chord(alpha: float) -> float:
    """Chord length 2 sin(alpha * pi / 2) subtended by an arc of ``alpha``
    half-turns on the unit circle.

    alpha is folded onto [0, 1] first (an arc and its complement subtend the
    same chord), which makes chord(alpha) == chord(2 - alpha) exact and
    chord(0) == chord(2) == 0 exact.
    """
    if not (0.0 <= alpha <= 2.0):
        raise DomainError(f"alpha must lie in [0, 2], got {alpha!r}")
    if alpha > 1.0:
        alpha = 2.0 - alpha
    return 2.0 * math.sin(alpha * (math.pi / 2.0))


def psi(sigma: float) -> float:
    """Separation weight on [0, 2]:

        psi(s) = 2^(s+6) * s^(s+2) * (2-s)^(-(2-s)^2/2) * (2+s)^(-(2+s)^2/2).

    The endpoint values are the one-sided limits of that expression:
    s^(s+2) -> 0 gives psi(0) = 0, and (2-s)^(-(2-s)^2/2) -> 1 gives
    psi(2) = 2^8 * 2^4 * 4^(-8) = 1/16.
    """
    if not (0.0 <= sigma <= 2.0):
        raise DomainError(f"sigma must lie in [0, 2], got {sigma!r}")
    if sigma == 0.0:
        return 0.0
    log_value = (sigma + 6.0) * math.log(2.0) + (sigma + 2.0) * math.log(sigma)
    if sigma != 2.0:
        log_value -= 0.5 * (2.0 - sigma) ** 2 * math.log(2.0 - sigma)
    log_value -= 0.5 * (2.0 + sigma) ** 2 * math.log(2.0 + sigma)
    return math.exp(log_value)


def log_psi_second_derivative(sigma: float) -> float:
    """(ln psi)''(s) on (0, 2), reduced by hand to

        1/s - 2/s^2 - 3 - ln(4 - s^2).

    Derivation sketch: ln psi = (s+6) ln 2 + (s+2) ln s
    - ((2-s)^2 / 2) ln(2-s) - ((2+s)^2 / 2) ln(2+s).  The first derivative
    is ln 2 + ln s + 1 + 2/s - s + (2-s) ln(2-s) - (2+s) ln(2+s); taking
    d/ds once more, ln s and 2/s give 1/s - 2/s^2, the -s gives -1, and each
    boundary term gives -ln(2 -+ s) - 1, so the constants collect to -3 and
    the logs to -ln(4 - s^2).  The value is negative over most of the
    interval and only turns positive in a narrow window below 2 where
    -ln(4 - s^2) blows up.
    """
    if not (0.0 < sigma < 2.0):
        raise DomainError(f"sigma must lie in (0, 2), got {sigma!r}")
    return 1.0 / sigma - 2.0 / (sigma * sigma) - 3.0 - math.log(4.0 - sigma * sigma)


def log_i0(n: int, gamma: float) -> float:
    """ln of the symmetric-configuration value

        i0(n, g) = (4/n)^n * (4g/n^2)^(g/n) / (1 - g/n^2)^(n + g/n)
                   * ((1 - sqrt(g)/n) / (1 + sqrt(g)/n))^(2 sqrt(g)),

    accumulated in log form.  Defined for 0 < gamma < n^2; the problem
    itself only uses gamma <= n, but the derivative audit differentiates
    over the wider window.
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not (0.0 < gamma < n * n):
        raise DomainError(f"gamma must lie in (0, n^2) = (0, {n * n}), got {gamma!r}")
    root = math.sqrt(gamma) / n
    return (n * math.log(4.0 / n)
            + (gamma / n) * math.log(4.0 * gamma / (n * n))
            - (n + gamma / n) * math.log(1.0 - gamma / (n * n))
            + 2.0 * math.sqrt(gamma) * math.log((1.0 - root) / (1.0 + root)))


def i0(n: int, gamma: float) -> float:
    """Value of the rotationally symmetric configuration; exp(log_i0).

    At (n, gamma) = (3, 1) the expression collapses algebraically to
    27 * 4^(-8/3), the same number kuzmina_bound returns for three anchors
    at the cube roots of unity.
    """
    return math.exp(log_i0(n, gamma))


def dlog_i0_true(gamma: float) -> float:
    """d/dgamma ln i0(3, gamma) by central differences plus one Richardson
    extrapolation step (fourth order overall).

    Pure numerics with no closed form: this is the reference the two
    hand-derived forms are audited against.  gamma must stay at least 1e-6
    away from 0 and inside (0, 9); the step shrinks near the edges of that
    window and a step below 1e-12 is refused as underflow.
    """
    if not (1e-6 <= gamma < 9.0):
        raise DomainError(f"gamma must lie in [1e-6, 9), got {gamma!r}")
    h = min(1e-3, 0.5 * gamma, 0.5 * (9.0 - gamma))
    if h < 1e-12:
        raise DomainError(f"differentiation step underflow at gamma = {gamma!r}")
    coarse = (log_i0(3, gamma + h) - log_i0(3, gamma - h)) / (2.0 * h)
    fine = (log_i0(3, gamma + 0.5 * h) - log_i0(3, gamma - 0.5 * h)) / h
    return (4.0 * fine - coarse) / 3.0


def dlog_i0_termwise_terms(gamma: float) -> tuple[float, ...]:
    """The eight terms of d/dgamma ln i0(3, gamma), differentiated term by
    term from log_i0:

        (1/3) ln(4g/9) + 1/3                      from (g/3) ln(4g/9)
        - (1/3) ln(1 - g/9) + (9+g)/(27-3g)       from -(3 + g/3) ln(1 - g/9)
        + ln(1 - sqrt(g)/3)/sqrt(g) - 1/(3 - sqrt(g))
        - ln(1 + sqrt(g)/3)/sqrt(g) - 1/(3 + sqrt(g))
                                                   from the last factor.
    Defined on (0, 9).
    """
    if not (0.0 < gamma < 9.0):
        raise DomainError(f"gamma must lie in (0, 9), got {gamma!r}")
    sg = math.sqrt(gamma)
    return (
        math.log(4.0 * gamma / 9.0) / 3.0,
        1.0 / 3.0,
        -math.log(1.0 - gamma / 9.0) / 3.0,
        (9.0 + gamma) / (27.0 - 3.0 * gamma),
        math.log(1.0 - sg / 3.0) / sg,
        -1.0 / (3.0 - sg),
        -math.log(1.0 + sg / 3.0) / sg,
        -1.0 / (3.0 + sg),
    )


def dlog_i0_termwise(gamma: float) -> float:
    """Sum of dlog_i0_termwise_terms; the hand-derived closed form of
    d/dgamma ln i0(3, gamma).  Agrees with dlog_i0_true far below 1e-8."""
    return math.fsum(dlog_i0_termwise_terms(gamma))


def dlog_i0_printed_terms(gamma: float) -> tuple[float, ...]:
    """Eight terms of the claimed derivative of ln i0(3, gamma), kept
    verbatim as the audited derivation states them.

    Two terms differ from the correct expansion in dlog_i0_termwise_terms:
    the constant appears as -1/3 instead of +1/3, and the third term carries
    a factor gamma/3 where the product rule gives 1/3.  The claim registry
    compares the two forms; this function never repairs them.
    """
    if not (0.0 < gamma < 9.0):
        raise DomainError(f"gamma must lie in (0, 9), got {gamma!r}")
    sg = math.sqrt(gamma)
    return (
        math.log(4.0 * gamma / 9.0) / 3.0,
        -1.0 / 3.0,
        -(gamma / 3.0) * math.log(1.0 - gamma / 9.0),
        (9.0 + gamma) / (27.0 - 3.0 * gamma),
        math.log(1.0 - sg / 3.0) / sg,
        -1.0 / (3.0 - sg),
        -math.log(1.0 + sg / 3.0) / sg,
        -1.0 / (3.0 + sg),
    )


def dlog_i0_printed(gamma: float) -> float:
    """Sum of dlog_i0_printed_terms: the claimed derivative as stated."""
    return math.fsum(dlog_i0_printed_terms(gamma))


def dlog_i0_upper_bound_terms(lo: float = 1.5, hi: float = 1.7) -> tuple[float, ...]:
    """Five-term termwise upper bound for dlog_i0_printed on [lo, hi].

    Each retained term of the printed form is replaced by its maximum over
    the interval: the first four terms are increasing in gamma and are
    evaluated at hi, -1/(3 - sqrt(g)) is decreasing and is evaluated at lo,
    and the three remaining terms are dropped since each is negative.  A
    negative total therefore certifies the printed derivative negative on
    all of [lo, hi].
    """
    if not (0.0 < lo <= hi < 9.0):
        raise DomainError(f"need 0 < lo <= hi < 9, got [{lo!r}, {hi!r}]")
    return (
        math.log(4.0 * hi / 9.0) / 3.0,
        -1.0 / 3.0,
        -(hi / 3.0) * math.log(1.0 - hi / 9.0),
        (9.0 + hi) / (27.0 - 3.0 * hi),
        -1.0 / (3.0 - math.sqrt(lo)),
    )


def dlog_i0_upper_bound(lo: float = 1.5, hi: float = 1.7) -> float:
    """Sum of dlog_i0_upper_bound_terms."""
    return math.fsum(dlog_i0_upper_bound_terms(lo, hi))


def lemma1_threshold(q: float, params: "Params | tuple") -> float:
    """Center radius q^(1/(gamma - n)) beyond which the chained pair bound
    p^(gamma - n) < 1 forces the configuration value below q on its own.

    Accepts a Params or a plain (n, gamma) tuple.  gamma == n makes the
    exponent singular and is refused; so is q <= 0.
    """
    if not isinstance(params, Params):
        params = Params(*params)
    if not (q > 0.0) or not math.isfinite(q):
        raise DomainError(f"q must be positive and finite, got {q!r}")
    if params.gamma == params.n:
        raise DomainError("exponent 1/(gamma - n) is singular at gamma = n")
    return math.exp(math.log(q) / (params.gamma - params.n))


def kuzmina_bound(chords, center_distances) -> float:
    """Product bound for one center radius and three satellite radii:

        (9 / 4^(8/3)) * (c_12 * c_13 * c_23 * d_1 * d_2 * d_3)^(2/3)

    where c_jk are the pairwise anchor gaps and d_k the anchor distances
    from the center.  Exactly three of each, all positive.  For anchors at
    the cube roots of unity (gaps sqrt(3), distances 1) the bound equals
    27 * 4^(-8/3) = i0(3, 1).
    """
    chords = tuple(float(c) for c in chords)
    dists = tuple(float(d) for d in center_distances)
    if len(chords) != 3 or len(dists) != 3:
        raise DomainError("kuzmina_bound takes exactly 3 chords and 3 center distances")
    for value in chords + dists:
        if not (value > 0.0) or not math.isfinite(value):
            raise DomainError(f"lengths must be positive and finite, got {value!r}")
    product = math.prod(chords) * math.prod(dists)
    return PRODUCT_BOUND_CONSTANT * _pow(product, 2.0 / 3.0)


def case_a_bound(gamma: float) -> float:
    """Value bound for the branch where the center radius exceeds the
    lemma1 threshold, n = 3:

        4 * p0^(gamma - 1) * (9/4^(8/3)) * sin(pi/sqrt(g))^(2/3)
          * sin((1 - 1/sqrt(g)) * pi/2)^(4/3),

    with p0 = lemma1_threshold(i0(3, g)).  The sines are the extremal anchor
    chords: one arc of 2/sqrt(g) half-turns and two equal arcs of
    1 - 1/sqrt(g) half-turns, whose 2^(2/3) prefactors collect into the 4.
    Defined for 1 < gamma < 3.
    """
    if not (1.0 < gamma < 3.0):
        raise DomainError(f"gamma must lie in (1, 3), got {gamma!r}")
    sg = math.sqrt(gamma)
    p0 = lemma1_threshold(i0(3, gamma), Params(3, gamma))
    return (4.0 * _pow(p0, gamma - 1.0) * PRODUCT_BOUND_CONSTANT
            * _pow(math.sin(math.pi / sg), 2.0 / 3.0)
            * _pow(math.sin((1.0 - 1.0 / sg) * (math.pi / 2.0)), 4.0 / 3.0))
