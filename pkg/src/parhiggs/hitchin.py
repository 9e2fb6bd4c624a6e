"""Hitchin maps for GL(n), Sp(2m), SO(2m) and SO(2m+1) and the scaling action."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Poly, PolyMatrix, QuadNumber, as_rational, char_poly, det, pfaffian, rational_sqrt
from .parabolic import HiggsField, MarkedCurve


class ParityError(ValueError):
    """A characteristic coefficient that must vanish for the group does not."""


_GROUP_RE = re.compile(r"^(GL|Sp|SO)\((\d+)\)$")


def parse_group(group: str) -> tuple[str, int]:
    m = _GROUP_RE.match(group.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown group {group!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "Sp" and n % 2:
        raise ValueError("Sp(n) needs even n")
    if n < 1:
        raise ValueError("group rank must be positive")
    return family, n


def slot_weights(group: str) -> list[int]:
    """Scaling weight of each coordinate of the Hitchin base."""
    family, n = parse_group(group)
    if family == "GL":
        return list(range(1, n + 1))
    m = n // 2
    if family == "Sp" or n % 2:
        return [2 * i for i in range(1, m + 1)]
    return [2 * i for i in range(1, m)] + [m]


@dataclass(frozen=True)
class HitchinPoint:
    group: str
    coefficients: tuple[Poly, ...]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def degree_bounds_ok(self, kd_degree: int) -> bool:
        return all(c.degree <= w * kd_degree
                   for c, w in zip(self.coefficients, slot_weights(self.group)))


def _matrix(phi) -> PolyMatrix:
    return phi.matrix if isinstance(phi, HiggsField) else phi


def pfaffian_slot(Phi: PolyMatrix, B: PolyMatrix) -> Poly:
    """``pf(B Phi) / sqrt(det B)``, so that its square is ``det Phi``.

    When ``det B`` is not a rational square (the split form of SO(2) has
    ``det B = -1``) the slot has coefficients in ``Q(sqrt(det B))``.
    """
    d = det(B)
    if d.degree != 0:
        raise ValueError("the symmetric form must have constant nonzero determinant")
    root = rational_sqrt(d.lc())
    if root is None:
        root = QuadNumber(0, 1, d.lc())
    return pfaffian(B @ Phi) * (1 / root)


def hitchin_image(phi, group: str, pairing=None) -> HitchinPoint:
    """Coordinates of ``phi`` in the Hitchin base of ``group``.

    SO(2m) needs the symmetric form (``pairing``) for the Pfaffian slot.
    """
    Phi = _matrix(phi)
    family, n = parse_group(group)
    if Phi.shape != (n, n):
        raise ValueError(f"{group} needs a {n}x{n} field")
    s = char_poly(Phi)
    if family == "GL":
        return HitchinPoint(group, tuple(s))
    odd = [i + 1 for i in range(n) if (i + 1) % 2 and not s[i].is_zero()]
    if odd:
        raise ParityError(f"odd coefficients s_{odd} do not vanish; field is not in the Lie algebra")
    evens = tuple(s[i - 1] for i in range(2, n + 1, 2))
    if family == "Sp" or n % 2:
        return HitchinPoint(group, evens)
    if pairing is None:
        raise ValueError("SO(2m) needs the symmetric form to normalise the Pfaffian")
    B = pairing.omega if hasattr(pairing, "omega") else pairing
    pf = pfaffian_slot(Phi, B)
    if pf * pf != s[n - 1]:
        raise ParityError("last coefficient is not the square of the Pfaffian")
    return HitchinPoint(group, evens[:-1] + (pf,))


def base_scale(t, a: HitchinPoint) -> HitchinPoint:
    t = as_rational(t)
    if t == 0:
        raise ValueError("scaling parameter must be nonzero")
    return HitchinPoint(a.group, tuple(c * t ** w for c, w in zip(a.coefficients, slot_weights(a.group))))


def equivariance_check(phi, t, group: str, pairing=None) -> bool:
    Phi = _matrix(phi)
    t = as_rational(t)
    return hitchin_image(Phi * t, group, pairing) == base_scale(t, hitchin_image(Phi, group, pairing))


def nilpotency_check(phi) -> bool:
    """Global nilpotency: every characteristic coefficient vanishes identically."""
    return all(c.is_zero() for c in char_poly(_matrix(phi)))


def residue_nilpotency_check(phi: HiggsField) -> tuple[bool, ...]:
    """Per marked point: is the value strictly lower triangular in the flag basis?"""
    out = []
    n = phi.bundle.rank
    for k in range(phi.bundle.r):
        G = phi.flag_values(k)
        out.append(all(G[a][c] == 0 for a in range(n) for c in range(a, n)))
    return tuple(out)


def strong_vanishing_check(a: HitchinPoint, curve) -> bool:
    points = curve.points if isinstance(curve, MarkedCurve) else tuple(curve)
    return all(c(p) == 0 for c in a.coefficients for p in points)


def group_for(pairing) -> str:
    from .pairing import ANTISYMMETRIC
    n = pairing.rank
    return f"Sp({n})" if pairing.symmetry == ANTISYMMETRIC else f"SO({n})"


def is_scaling_fixed(a: HitchinPoint, ts) -> bool:
    return all(base_scale(t, a) == a for t in ts)


__all__ = ["HitchinPoint", "ParityError", "hitchin_image", "base_scale", "equivariance_check",
           "nilpotency_check", "residue_nilpotency_check", "strong_vanishing_check",
           "slot_weights", "parse_group", "group_for", "pfaffian_slot"]
