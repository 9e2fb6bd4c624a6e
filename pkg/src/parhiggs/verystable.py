"""Very-stability verdicts, infinite-fiber certificates, Serre and dimension checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hitchin import group_for, hitchin_image, nilpotency_check, parse_group
from .locus import TRIVIAL, WITNESS, NilpotentLocusResult, nilpotent_locus_decide
from .pairing import ANTISYMMETRIC, PairingForm, compatible_higgs_space, fiber_condition_count
from .parabolic import PARABOLIC, STRONG, HiggsField, ParabolicBundle

# fixed sample of the scaling orbit
SCALING_SAMPLE = tuple(Fraction(n, d) for n, d in
                       [(1, 1), (2, 1), (-1, 1), (3, 1), (1, 2), (-2, 1), (5, 3), (-1, 3), (7, 2), (-4, 5)])

FINITE_CERTIFICATE = ("strongly very stable; h_{E,st} finite, proper, quasi-finite "
                      "(finite because it is proper and affine with trivial zero fiber; "
                      "quasi-finite from finite)")


def scaling_fiber_witness(phi) -> list:
    """``t * phi`` for ten fixed rationals ``t``: distinct points of the zero fiber."""
    Phi = phi.matrix if isinstance(phi, HiggsField) else phi
    if Phi.is_zero():
        raise ValueError("the zero field has a trivial scaling orbit")
    if not nilpotency_check(Phi):
        raise ValueError("field is not nilpotent, so its orbit leaves the zero fiber")
    out = []
    for t in SCALING_SAMPLE:
        psi = phi.scaled(t) if isinstance(phi, HiggsField) else Phi * t
        M = psi.matrix if isinstance(psi, HiggsField) else psi
        if M.is_zero() or not nilpotency_check(M):
            raise AssertionError("scaled field left the zero fiber")
        out.append(psi)
    mats = {(p.matrix if isinstance(p, HiggsField) else p) for p in out}
    if len(mats) != len(out):
        raise AssertionError("scaled fields are not distinct")
    return out


def _locus_report(res: NilpotentLocusResult, group: str, P: PairingForm) -> dict:
    rep = {"verdict": res.verdict, "method": res.method}
    if res.budget is not None:
        rep["budget"] = res.budget
    if res.notes:
        rep["notes"] = list(res.notes)
    if res.algebraic is not None:
        rep["algebraic"] = res.algebraic
    if res.witness is not None:
        phi = res.witness
        rep["witness"] = phi.matrix
        rep["coefficients"] = list(res.coefficients)
        rep["hitchin_image_zero"] = hitchin_image(phi, group, P).is_zero()
    return rep


def very_stability_verdict(E: ParabolicBundle, P: PairingForm, seed: int = 0,
                           budget: int = 64) -> dict:
    """Nilpotent-locus decisions on ``W_{E,st}`` and ``W_E`` with certificates."""
    group = group_for(P)
    out = {"group": group}
    strong_witness = None
    for key, mode in (("strong", STRONG), ("parabolic", PARABOLIC)):
        W = compatible_higgs_space(E, P, mode)
        coords = W.coordinates(strong_witness) if strong_witness is not None else None
        if coords is not None:
            # W_st is a subspace of W_E, so its witness settles W_E too
            res = NilpotentLocusResult(WITNESS, out["strong"]["method"], witness=strong_witness,
                                       coefficients=tuple(coords),
                                       notes=["witness taken from the strongly parabolic space"])
        else:
            res = nilpotent_locus_decide(W, seed=seed, budget=budget)
        if mode == STRONG:
            strong_witness = res.witness
        rep = {"dimension": W.dimension, **_locus_report(res, group, P)}
        if res.witness is not None:
            rep["fiber_sample"] = [p.matrix for p in scaling_fiber_witness(res.witness)]
        elif res.verdict == WITNESS:
            rep["fiber_sample"] = "algebraic witness; the orbit c*Phi lies in the zero fiber for all c"
        out[key] = rep
    strong = out["strong"]["verdict"]
    if strong == TRIVIAL:
        out["verdict"] = "strongly very stable"
        out["certificate"] = FINITE_CERTIFICATE
    elif strong == WITNESS:
        out["verdict"] = "not strongly very stable"
        out["certificate"] = ("h_{E,st} is not quasi-finite: the zero fiber contains the "
                              "scaling orbit of a nonzero nilpotent field")
    else:
        out["verdict"] = "inconclusive"
        out["certificate"] = "randomized search exhausted its budget"
    plain = out["parabolic"]["verdict"]
    out["very_stable"] = {TRIVIAL: "very stable", WITNESS: "not very stable"}.get(plain, "inconclusive")
    return out


def serre_duality_check(E: ParabolicBundle, P: PairingForm) -> dict:
    """``dim W_{E,st}`` against ``h^1`` of the parabolic Lie-algebra sheaf via Euler characteristic.

    On the line the Lie-algebra sheaf has degree zero, so
    ``chi = dim g - sum_p (dim g_p - dim b_p)``; ``h^0`` is the compatible
    parabolic space at twist 0 and ``h^1 = h^0 - chi``.
    """
    direct = compatible_higgs_space(E, P, STRONG).dimension
    h0 = compatible_higgs_space(E, P, PARABOLIC, twist=0).dimension
    dim_g = None
    conditions = 0
    for k in range(E.r):
        g, c = fiber_condition_count(E, P, k, PARABOLIC)
        dim_g = g
        conditions += c
    if dim_g is None:
        n = E.rank
        dim_g = n * (n + 1) // 2 if P.symmetry == ANTISYMMETRIC else n * (n - 1) // 2
    chi = dim_g - conditions
    h1 = h0 - chi
    return {"dim_W_st": direct, "h0": h0, "chi": chi, "h1": h1, "dim_g": dim_g,
            "flag_conditions": conditions, "equal": direct == h1}


@dataclass(frozen=True)
class ModuliDimParams:
    group: str
    m: int
    g: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.g < 0 or self.r < 0:
            raise ValueError("need m >= 1, g >= 0, r >= 0")
        if _family(self.group) is None:
            raise ValueError(f"unsupported group {self.group!r}")
        try:
            _, n = parse_group(self.group)
        except ValueError:
            return
        if n // 2 != self.m:
            raise ValueError(f"{self.group} does not have m = {self.m}")


def _family(group: str) -> str | None:
    g = group.replace(" ", "")
    if g.startswith("Sp"):
        return "Sp"
    if g in ("SO(2m)", "SO_even"):
        return "SO_even"
    if g in ("SO(2m+1)", "SO_odd"):
        return "SO_odd"
    try:
        family, n = parse_group(g)
    except ValueError:
        return None
    if family == "SO":
        return "SO_even" if n % 2 == 0 else "SO_odd"
    return None


def moduli_dimension(params: ModuliDimParams) -> int:
    """Dimension of the strongly parabolic Higgs moduli for full flags."""
    m, g, r = params.m, params.g, params.r
    fam = _family(params.group)
    if fam == "SO_even":
        return 2 * m * (2 * m - 1) * (g - 1) + 2 * m * r * (m - 1)
    return 2 * m * (2 * m + 1) * (g - 1) + 2 * m * m * r


def moduli_dimension_general(params: ModuliDimParams) -> int:
    """``2[(g - 1) dim G + r dim G/B]`` from the group data directly."""
    m, g, r = params.m, params.g, params.r
    fam = _family(params.group)
    if fam == "SO_even":
        dim_group, positive_roots = m * (2 * m - 1), m * (m - 1)
    else:
        dim_group, positive_roots = m * (2 * m + 1), m * m
    return 2 * ((g - 1) * dim_group + r * positive_roots)
