"""Hecke module spanned by theta-basis cells for SL2 over the projective line.

Cells are indexed by the stratum index k = d/e; a shift [r] is the exponent r.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import FalsificationError, InputError
from .laurent import Laurent
from .metaplectic import build_metaplectic
from .reps import irreducible_character
from .rootdata import build_root_datum
from .series import cover_e


@dataclass(frozen=True)
class SL2Context:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        datum = build_metaplectic(build_root_datum("A1"), self.n)
        if datum.lambda_sharp != ((self.e,),):
            raise FalsificationError("sublattice disagrees with e * Z alpha")

    @property
    def e(self) -> int:
        return cover_e(self.n)

    @property
    def parity(self) -> int:
        return self.n % 2

    @property
    def generator(self) -> int:
        """Coefficient of alpha in the generating weight of the dual group."""
        return self.n if self.n % 2 else self.e

    def cell_of_degree(self, d: int) -> int:
        if d < 0 or d % self.e:
            raise InputError(f"d = {d} is not in e*Z>=0 with e = {self.e}")
        return d // self.e


class ThetaModuleElement:
    """Nonnegative combination of cells IC_k[r]."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        c = {}
        for (k, r), v in (coeffs or {}).items():
            if v < 0:
                raise FalsificationError(f"negative coefficient {v} at cell k={k}, shift {r}")
            if k < 0:
                raise InputError(f"cell index must be nonnegative, got {k}")
            if v:
                c[(int(k), int(r))] = int(v)
        self._c = c

    @classmethod
    def cell(cls, k: int, shift: int = 0) -> "ThetaModuleElement":
        return cls({(k, shift): 1})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ThetaModuleElement":
        return cls(Counter(pairs))

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._c)

    def __eq__(self, other):
        return isinstance(other, ThetaModuleElement) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "ThetaModuleElement") -> "ThetaModuleElement":
        return ThetaModuleElement(Counter(self._c) + Counter(other._c))

    def truncate(self, k_max: int) -> "ThetaModuleElement":
        return ThetaModuleElement({kr: v for kr, v in self._c.items() if kr[0] <= k_max})

    def cells(self) -> set[int]:
        return {k for k, _ in self._c}

    def cell_polynomial(self, k: int) -> Laurent:
        return Laurent({r: v for (kk, r), v in self._c.items() if kk == k})

    def times(self, poly: Laurent) -> "ThetaModuleElement":
        out: Counter = Counter()
        for (k, r), v in self._c.items():
            for s, c in poly.coeffs.items():
                out[(k, r + s)] += v * c
        return ThetaModuleElement(out)

    def __repr__(self):
        items = ", ".join(f"IC{k}[{r}]x{v}" for (k, r), v in sorted(self._c.items()))
        return f"ThetaModuleElement({items})"


def _basis_rule(n: int, k: int) -> list[tuple[int, int]]:
    if n % 2 == 0:
        if k == 0:
            return [(1, 1), (1, -1)]
        if k == 1:
            return [(0, 1), (0, -1)]
        return [(k + 1, 0), (k - 1, 0)]
    if k == 0:
        return [(0, 2), (0, 0), (0, -2)]
    if k == 1:
        return [(0, 1), (0, -1), (2, 0)]
    return [(k + 1, 0), (k, 0), (k - 1, 0)]


def _apply_signed(n: int, coeffs: Mapping[tuple[int, int], int]) -> Counter:
    out: Counter = Counter()
    for (k, r), v in coeffs.items():
        for kk, s in _basis_rule(n, k):
            out[(kk, r + s)] += v
    return out


def fundamental_hecke(ctx: SL2Context, elt: ThetaModuleElement) -> ThetaModuleElement:
    return ThetaModuleElement(_apply_signed(ctx.n, elt.coeffs))


def hecke_of_irreducible(ctx: SL2Context, m: int, elt: ThetaModuleElement) -> ThetaModuleElement:
    if m < 0:
        raise InputError("m must be nonnegative")
    prev: Counter = Counter()
    cur: Counter = Counter(elt.coeffs)
    if m == 0:
        return elt
    nxt = _apply_signed(ctx.n, cur)
    prev, cur = cur, nxt
    for _ in range(1, m):
        step = _apply_signed(ctx.n, cur)
        step.subtract(prev)
        if ctx.n % 2:
            step.subtract(cur)
        bad = {kr: v for kr, v in step.items() if v < 0}
        if bad:
            raise FalsificationError(f"Hecke recursion produced negative coefficients {bad}")
        prev, cur = cur, +step
    return ThetaModuleElement(cur)


def aut_element(ctx: SL2Context) -> ThetaModuleElement:
    if ctx.n % 2:
        return ThetaModuleElement.cell(0)
    return ThetaModuleElement.cell(0) + ThetaModuleElement.cell(1)


def principal_character(ctx: SL2Context, m: int) -> Laurent:
    """Σ_μ dim V(μ) v^{<μ, 2ρ̌>} for the dual-group irreducible of highest weight m * generator."""
    datum = build_metaplectic(build_root_datum("A1"), ctx.n)
    system = datum.system
    char = irreducible_character(datum, (m * ctx.generator,))
    out: dict[int, int] = {}
    for mu, mult in char.support.items():
        exp = sum(system.root_coroot_pair(mu, beta) for beta in system.positive_roots)
        out[int(exp)] = out.get(int(exp), 0) + mult
    return Laurent(out)


def theta_eigen_check(ctx: SL2Context, m: int) -> dict:
    aut = aut_element(ctx)
    poly = principal_character(ctx, m)
    lhs = hecke_of_irreducible(ctx, m, aut)
    return {"aut": aut, "eigen_poly": poly, "holds": lhs == aut.times(poly)}


def eis_expand(ctx: SL2Context, d: int, e_nontrivial: bool, k_max: int) -> ThetaModuleElement:
    k = ctx.cell_of_degree(d)
    step = ctx.n // ctx.e
    if e_nontrivial:
        if d == 0:
            raise InputError("the nontrivial expansion is stated only for d > 0")
        return ThetaModuleElement.cell(k).truncate(k_max)
    if d == 0:
        out = ThetaModuleElement({(0, 1): 1, (0, -1): 1})
        start = 2 * step
    else:
        out = ThetaModuleElement()
        start = k
    cells = Counter({(j, 0): 1 for j in range(start, k_max + 1, step)})
    return (out + ThetaModuleElement(cells)).truncate(k_max)


def stalk_table(ctx: SL2Context, d: int, r: int) -> dict:
    ctx.cell_of_degree(d)
    if r <= d:
        raise InputError(f"stratum r = {r} must lie strictly deeper than d = {d}")
    n = ctx.n
    if d > 0:
        if (r - d) % n:
            return {"vanishes": True, "shift": None}
        return {"vanishes": False, "shift": 2 * (r - d) // n}
    if r % n:
        return {"vanishes": True, "shift": None}
    return {"vanishes": False, "shift": 2 * r // n - 1}


def parity(ctx: SL2Context, d: int) -> str | None:
    if ctx.n % 2:
        return None
    ctx.cell_of_degree(d)
    return "+" if d % ctx.n == 0 else "-"


def transport(ctx_n: SL2Context, ctx_m: SL2Context, elt: ThetaModuleElement) -> ThetaModuleElement:
    if (ctx_n.n - ctx_m.n) % 2:
        raise InputError(f"n = {ctx_n.n} and m = {ctx_m.n} have different parity")
    return ThetaModuleElement(elt.coeffs)
