"""The exact dictionary between Atkin-Lehner elements and lattice isometries.

`represent` lifts a 2x2 coset element to a 3x3 integral isometry through
hand-expanded entry formulas in which every sqrt(s) cancels, so integrality
is an identity rather than a rounding question.  `descend` inverts the lift
by recognizing the entry pattern, trying each of the few candidate levels.
`verify_correspondence` samples every coset of a level and certifies, at
desk scale, that the lift is integral, Gram-preserving, orientation
preserving, invertible by `descend`, and acts on the discriminant group by
+-1 exactly on the Fricke cosets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import exact_divisor_values
from .errors import IntegralityViolation, K3FMError, NotInImage
from .lattice import (
    IsometryN,
    discriminant_unit,
    is_isometry,
    is_orientation_preserving,
    mat_det,
    mat_neg,
)
from .modgroup import ALElement, CosetLabel, al_to_json, is_fricke, random_al

__all__ = [
    "CorrespondenceReport",
    "represent",
    "descend",
    "classify_coset",
    "check_sample",
    "verify_correspondence",
    "report_to_json",
]

_CHECKS = ("integral", "isometry", "orientation", "round_trip", "fricke_criterion")


def represent(w: ALElement) -> IsometryN:
    """Integral 3x3 lift of a coset element.

    For the real matrix with entries (alpha, beta, gamma, delta) =
    (a*sqrt(s), b/sqrt(s), c*(d/s)*sqrt(s), e*sqrt(s)) the standard 3x3
    formula [[delta^2, 2*gamma*delta, gamma^2/d], [beta*delta,
    alpha*delta + beta*gamma, alpha*gamma/d], [d*beta^2, 2*d*alpha*beta,
    alpha^2]] collapses to the integer entries below.
    """
    d, s = w.d, w.s
    a, b, c, e = w.a, w.b, w.c, w.e
    t = d // s
    m = (
        (e * e * s, 2 * c * d * e, c * c * t),
        (b * e, a * e * s + b * c * t, a * c),
        (b * b * t, 2 * a * b * d, a * a * s),
    )
    g = IsometryN(d, m)
    if not g.is_integral:
        raise IntegralityViolation("lift of a coset element must be integral")
    return g


def _match_level(h, d: int, s: int) -> ALElement | None:
    """Try to read a level-s quintuple off the integer matrix h (det +1)."""
    t = d // s
    (h11, h12, h13), (h21, h22, h23), (h31, h32, h33) = h
    squares = []
    for num, div in ((h11, s), (h33, s), (h31, t), (h13, t)):
        q, rem = divmod(num, div)
        if rem or q < 0:
            return None
        root = math.isqrt(q)
        if root * root != q:
            return None
        squares.append(root)
    e0, a0, b0, c0 = squares
    for a in (a0, -a0) if a0 else (0,):
        for b in (b0, -b0) if b0 else (0,):
            for c in (c0, -c0) if c0 else (0,):
                for e in (e0, -e0) if e0 else (0,):
                    if a * e * s - b * c * t != 1:
                        continue
                    if (
                        b * e == h21
                        and a * c == h23
                        and a * e * s + b * c * t == h22
                        and 2 * c * d * e == h12
                        and 2 * a * b * d == h32
                    ):
                        return ALElement(d, s, a, b, c, e)
    return None


def descend(g: IsometryN) -> ALElement:
    """Recover the unique coset element whose lift is g up to sign.

    Exactly one of g, -g has determinant +1 (the rank is odd); that
    representative must match the lift's entry pattern for exactly one
    candidate level because the cosets partition the group.
    """
    if not g.is_integral:
        raise NotInImage("matrix is not integral")
    det = mat_det(g.m)
    if det == 1:
        h = g.m
    elif det == -1:
        h = mat_neg(g.m)
    else:
        raise NotInImage(f"determinant {det} is not +-1")
    hi = tuple(tuple(int(x) for x in row) for row in h)
    for s in exact_divisor_values(g.d):
        w = _match_level(hi, g.d, s)
        if w is not None:
            return w
    raise NotInImage("entry pattern matches no Atkin-Lehner coset")


def classify_coset(g: IsometryN) -> CosetLabel:
    return CosetLabel(g.d, descend(g).s)


def check_sample(w: ALElement, g: IsometryN | None = None) -> tuple[str, ...]:
    """Failed check names for one sampled coset element; empty means clean.

    g defaults to represent(w); passing a different matrix lets a harness
    confirm that corruption is actually detected.
    """
    if g is None:
        g = represent(w)
    d = w.d
    failed = []
    if not g.is_integral:
        failed.append("integral")
    if not is_isometry(g):
        failed.append("isometry")
    else:
        if not is_orientation_preserving(g):
            failed.append("orientation")
    try:
        if descend(g) != w:
            failed.append("round_trip")
    except NotInImage:
        failed.append("round_trip")
    try:
        u = discriminant_unit(g).u
        acts_by_sign = u in (1 % (2 * d), (2 * d - 1) % (2 * d))
        if acts_by_sign != is_fricke(w):
            failed.append("fricke_criterion")
    except K3FMError:
        failed.append("fricke_criterion")
    return tuple(failed)


@dataclass(frozen=True)
class CorrespondenceReport:
    """Sampled certificate that the lift/descend pair behaves on every coset
    of AL_d; an empty failure list means all checks passed."""

    d: int
    samples_per_coset: int
    failures: tuple[tuple[dict, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_correspondence(
    d: int, samples_per_coset: int, rng: random.Random, bound: int = 10
) -> CorrespondenceReport:
    """Run check_sample on random elements of every coset of AL_d.

    Failures are data, not exceptions: each one records the offending
    element (wire form) and the name of the check it failed.
    """
    failures: list[tuple[dict, str]] = []
    for s in exact_divisor_values(d):
        for _ in range(samples_per_coset):
            w = random_al(d, s, rng, bound)
            for name in check_sample(w):
                failures.append((al_to_json(w), name))
    return CorrespondenceReport(d, samples_per_coset, tuple(failures))


def report_to_json(report: CorrespondenceReport) -> dict:
    return {
        "d": str(report.d),
        "samples_per_coset": str(report.samples_per_coset),
        "failures": [
            {"element": element, "check": name} for element, name in report.failures
        ],
    }
