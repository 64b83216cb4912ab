"""Exact group algebra of Gamma0(d), its Atkin-Lehner cosets W_s, and the
Fricke subgroup, entirely in integer arithmetic.

An element of the coset W_s (s an exact divisor of the level d) is the
determinant-one real matrix

    (1 / sqrt(s)) * [[a*s, b], [c*d, e*s]],     a, b, c, e integers,

and determinant one is exactly the integer identity

    a*e*s - b*c*(d/s) == 1.

Only the quintuple (d, s, a, b, c, e) is stored, so products, inverses and
coset labels never touch an irrational number.  Elements are projective:
(a, b, c, e) and (-a, -b, -c, -e) describe the same transformation, and the
stored sign is normalized so the first nonzero of (a, c, b, e) is positive.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import exact_divisor_values, is_exact_divisor, mod_inverse, star
from .errors import (
    InternalClosureViolation,
    InvalidDeterminant,
    InvalidLevel,
    LevelMismatch,
)

__all__ = [
    "ALElement",
    "CosetLabel",
    "al_identity",
    "al_from_tuple",
    "translation",
    "al_mul",
    "al_inverse",
    "is_fricke",
    "coset_labels",
    "fricke_coset_count",
    "base_element",
    "random_gamma0",
    "random_al",
    "al_to_json",
    "al_from_json",
]


@dataclass(frozen=True)
class ALElement:
    """One element of the Atkin-Lehner coset W_s at level d.

    Validates the exact-divisor condition and the determinant identity on
    construction and normalizes the projective sign, so two equal group
    elements always compare equal as tuples.
    """

    d: int
    s: int
    a: int
    b: int
    c: int
    e: int

    def __post_init__(self) -> None:
        for x in (self.d, self.s, self.a, self.b, self.c, self.e):
            if not isinstance(x, int):
                raise TypeError("ALElement entries must be integers")
        if not is_exact_divisor(self.s, self.d):
            raise InvalidLevel(f"s={self.s} is not an exact divisor of d={self.d}")
        det = self.a * self.e * self.s - self.b * self.c * (self.d // self.s)
        if det != 1:
            raise InvalidDeterminant(
                f"a*e*s - b*c*(d/s) = {det} != 1 for "
                f"(d,s,a,b,c,e)=({self.d},{self.s},{self.a},{self.b},{self.c},{self.e})"
            )
        for x in (self.a, self.c, self.b, self.e):
            if x:
                if x < 0:
                    object.__setattr__(self, "a", -self.a)
                    object.__setattr__(self, "b", -self.b)
                    object.__setattr__(self, "c", -self.c)
                    object.__setattr__(self, "e", -self.e)
                break


@dataclass(frozen=True)
class CosetLabel:
    """Label of the coset W_s inside AL_d; Fricke iff s is 1 or d."""

    d: int
    s: int

    def __post_init__(self) -> None:
        if not is_exact_divisor(self.s, self.d):
            raise InvalidLevel(f"s={self.s} is not an exact divisor of d={self.d}")

    @property
    def is_fricke(self) -> bool:
        return self.s in (1, self.d)


def al_identity(d: int) -> ALElement:
    return ALElement(d, 1, 1, 0, 0, 1)


def al_from_tuple(d: int, s: int, a: int, b: int, c: int, e: int) -> ALElement:
    """Validation entry point; rejects bad levels and bad determinants."""
    return ALElement(d, s, a, b, c, e)


def translation(d: int, m: int) -> ALElement:
    """The Gamma0(d) element acting as z -> z + m."""
    return ALElement(d, 1, 1, m, 0, 1)


def al_mul(w1: ALElement, w2: ALElement) -> ALElement:
    """Exact product; lands in the coset of level star(s1, s2).

    Multiplies the integer matrices [[a*s, b], [c*d, e*s]], divides by
    g = gcd(s1, s2), and reads the quintuple back off the level-t pattern
    [[a*t, b], [c*d, e*t]] with t = star(s1, s2).  The four divisibilities
    are guaranteed by the coset law; a failure means a bug, not bad input.
    """
    if w1.d != w2.d:
        raise LevelMismatch(f"cannot multiply levels d={w1.d} and d={w2.d}")
    d = w1.d
    s1, s2 = w1.s, w2.s
    p11 = w1.a * s1 * w2.a * s2 + w1.b * w2.c * d
    p12 = w1.a * s1 * w2.b + w1.b * w2.e * s2
    p21 = w1.c * d * w2.a * s2 + w1.e * s1 * w2.c * d
    p22 = w1.c * d * w2.b + w1.e * s1 * w2.e * s2
    g = math.gcd(s1, s2)
    t = star(s1, s2)
    a, ra = divmod(p11, g * t)
    b, rb = divmod(p12, g)
    c, rc = divmod(p21, g * d)
    e, re = divmod(p22, g * t)
    if ra or rb or rc or re:
        raise InternalClosureViolation(
            f"coset closure failed for levels ({s1},{s2}) at d={d}"
        )
    return ALElement(d, t, a, b, c, e)


def al_inverse(w: ALElement) -> ALElement:
    """Inverse in the same coset (every coset squares into W_1)."""
    return ALElement(w.d, w.s, w.e, -w.b, -w.c, w.a)


def is_fricke(w: ALElement) -> bool:
    return w.s in (1, w.d)


def coset_labels(d: int) -> tuple[CosetLabel, ...]:
    return tuple(CosetLabel(d, s) for s in exact_divisor_values(d))


def fricke_coset_count(d: int) -> int:
    """Number of cosets of Fr_d in AL_d, i.e. of classes {s, d/s}."""
    return len({frozenset((s, d // s)) for s in exact_divisor_values(d)})


def base_element(d: int, s: int) -> ALElement:
    """A canonical element of W_s with small nonnegative entries.

    s=1 gives the identity and s=d the involution z -> -1/(dz); otherwise
    the entries come from the smallest solution of a*s - b*(d/s) = 1.
    """
    if not is_exact_divisor(s, d):
        raise InvalidLevel(f"s={s} is not an exact divisor of d={d}")
    if s == 1:
        return al_identity(d)
    t = d // s
    if t == 1:
        return ALElement(d, s, 0, -1, 1, 0)
    a = mod_inverse(s, t)
    b = (a * s - 1) // t
    return ALElement(d, s, a, b, 1, 1)


def random_gamma0(d: int, rng: random.Random, bound: int = 10) -> ALElement:
    """Random element of W_1 = Gamma0(d); same seed gives the same element.

    Samples the bottom-left multiplier c in [-bound, bound] and a coprime
    top-left entry, completes to determinant one, then smears with random
    translation powers on both sides.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    span = max(bound, 1)
    while True:
        c = rng.randint(-bound, bound)
        a = rng.randint(-span, span)
        if math.gcd(a, c * d) == 1:
            break
    if c == 0:
        w = ALElement(d, 1, a, 0, 0, a)
    else:
        e = mod_inverse(a, abs(c * d))
        b = (a * e - 1) // (c * d)
        w = ALElement(d, 1, a, b, c, e)
    j = rng.randint(-bound, bound)
    k = rng.randint(-bound, bound)
    return al_mul(al_mul(translation(d, j), w), translation(d, k))


def random_al(d: int, s: int, rng: random.Random, bound: int = 10) -> ALElement:
    """Random element of W_s: the base element conjugated into the coset by
    independent Gamma0(d) factors on both sides."""
    left = random_gamma0(d, rng, bound)
    right = random_gamma0(d, rng, bound)
    return al_mul(left, al_mul(base_element(d, s), right))


def al_to_json(w: ALElement) -> dict:
    """Wire form; integers ride as decimal strings to survive any transport."""
    return {
        "d": str(w.d),
        "s": str(w.s),
        "abce": [str(w.a), str(w.b), str(w.c), str(w.e)],
    }


def al_from_json(obj: dict) -> ALElement:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    try:
        d = int(obj["d"])
        s = int(obj["s"])
        abce = obj["abce"]
        if not isinstance(abce, (list, tuple)) or len(abce) != 4:
            raise ValueError("abce must hold four integers")
        a, b, c, e = (int(x) for x in abce)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed element encoding: {exc}") from exc
    return ALElement(d, s, a, b, c, e)
