"""Stalk polynomials of IC sheaves on Drinfeld compactifications, decategorified.

A cohomological shift [k] is recorded as v^k.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import FalsificationError, InputError
from .laurent import Laurent
from .reps import NilradicalDatum, graded_sym, kostant_elements, sym_dim_direct
from .rootdata import Vec


@dataclass(frozen=True)
class Decomposition:
    theta: Vec
    parts: tuple[tuple[Vec, int], ...]

    def __post_init__(self):
        total = [0] * len(self.theta)
        for part, mult in self.parts:
            if mult <= 0 or not any(part) or any(c < 0 for c in part):
                raise InputError(f"invalid part {part} with multiplicity {mult}")
            total = [t + mult * c for t, c in zip(total, part)]
        if tuple(total) != tuple(self.theta):
            raise InputError(f"parts sum to {tuple(total)}, not {tuple(self.theta)}")

    @property
    def size(self) -> int:
        return sum(m for _, m in self.parts)

    @classmethod
    def of(cls, parts) -> "Decomposition":
        parts = tuple((tuple(p), int(m)) for p, m in parts)
        if not parts:
            raise InputError("use Decomposition.empty(rank) for theta = 0")
        k = len(parts[0][0])
        theta = tuple(sum(m * p[i] for p, m in parts) for i in range(k))
        return cls(theta, parts)

    @classmethod
    def empty(cls, k: int) -> "Decomposition":
        return cls(tuple(0 for _ in range(k)), ())

    def merge(self, other: "Decomposition") -> "Decomposition":
        return Decomposition.of(self.parts + other.parts) if (self.parts or other.parts) else self


@dataclass(frozen=True)
class KostantElement:
    assignment: tuple[tuple[tuple[int, ...], int], ...]
    theta: Vec

    @property
    def size(self) -> int:
        return sum(k for _, k in self.assignment)


@dataclass(frozen=True)
class StalkReport:
    vanishes: bool
    shift_polynomial: Laurent
    parts: tuple[dict, ...]

    def __post_init__(self):
        if not self.shift_polynomial.is_nonnegative():
            raise FalsificationError(f"negative coefficient in stalk polynomial {self.shift_polynomial}")
        if self.vanishes != (not self.shift_polynomial):
            raise FalsificationError("vanishing flag disagrees with the polynomial")


def enumerate_b_theta(nil: NilradicalDatum, theta) -> list[KostantElement]:
    theta = tuple(theta)
    if not nil.levi.in_cone(theta):
        raise InputError(f"theta {theta} is outside the positive cone")
    out = []
    for elem in kostant_elements(nil, theta):
        out.append(KostantElement(tuple(sorted(elem.items())), theta))
    if len(set(out)) != len(out):
        raise FalsificationError("duplicate Kostant elements")
    return out


def graded_sym_polynomial(nil: NilradicalDatum, theta) -> Laurent:
    """Σ_i dim Sym^i(ǔ)_θ v^{2i}."""
    theta = tuple(theta)
    top = sum(theta)
    return Laurent({2 * i: sym_dim_direct(nil, theta, i) for i in range(top + 1)})


def stalk_poincare(nil: NilradicalDatum, dec: Decomposition) -> StalkReport:
    levi = nil.levi
    if len(dec.theta) != len(levi.outside):
        raise InputError("decomposition lives in the wrong quotient lattice")
    details = []
    poly = Laurent.one()
    vanish = False
    for part, mult in dec.parts:
        if not levi.in_sharp_gp(part):
            vanish = True
            details.append({"theta": part, "multiplicity": mult, "in_sublattice": False})
            continue
        local = graded_sym_polynomial(nil, part)
        details.append({"theta": part, "multiplicity": mult, "in_sublattice": True, "graded_dims": local})
        poly = poly * local ** mult
    if vanish:
        poly = Laurent()
    else:
        poly = poly.shift(-dec.size)
    return StalkReport(not poly, poly, tuple(details))


def zastava_top(nil: NilradicalDatum, theta) -> dict:
    levi = nil.levi
    theta = tuple(theta)
    if not levi.in_cone(theta):
        raise InputError(f"theta {theta} is outside the positive cone")
    lifted = levi.lift(theta)
    # <theta, 2(rho_check - rho_check_M)>; the Levi coordinates of the lift vanish
    bound = sum(c * 2 * (1 - levi.rho_check_m[k]) for k, c in enumerate(lifted))
    bound = Fraction(bound)
    assert bound.denominator == 1
    vanishes = not kostant_elements(nil, theta)
    top = {}
    if not vanishes:
        top = graded_sym(nil, theta, sum(theta))["env_character"]
    dim = sum(m * levi.system.weyl_dimension(nu) for nu, m in top.items())
    return {"degree_bound": int(bound), "top_module": top, "top_dim": dim, "vanishes": vanishes}


def decompositions(theta) -> list[Decomposition]:
    """All decompositions of theta into nonzero cone parts, as multisets."""
    theta = tuple(theta)
    if not any(theta):
        return [Decomposition.empty(len(theta))]
    cands = []

    def box(idx, cur):
        if idx == len(theta):
            if any(cur):
                cands.append(tuple(cur))
            return
        for c in range(theta[idx] + 1):
            box(idx + 1, cur + [c])

    box(0, [])
    cands.sort()
    out = []

    def rec(start, rest, acc):
        if not any(rest):
            out.append(Decomposition.of(list(Counter(acc).items())))
            return
        for i in range(start, len(cands)):
            p = cands[i]
            if all(a <= b for a, b in zip(p, rest)):
                acc.append(p)
                rec(i, tuple(b - a for a, b in zip(p, rest)), acc)
                acc.pop()

    rec(0, theta, [])
    return out
