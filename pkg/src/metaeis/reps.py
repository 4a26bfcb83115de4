"""Characters, weight multiplicities and branching for the dual group and its Levis."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import FalsificationError, InputError
from .metaplectic import DualRootSystem, LeviDatum, MetaplecticDatum
from .rootdata import Vec


@dataclass(frozen=True)
class Character:
    """Finitely supported multiplicity map on coweight vectors."""

    support: dict[Vec, int]
    highest: Vec | None = None

    def __post_init__(self):
        for mu, m in self.support.items():
            if m < 0:
                raise FalsificationError(f"negative multiplicity {m} at {mu}")

    def multiplicity(self, mu) -> int:
        return self.support.get(tuple(mu), 0)

    @property
    def dim(self) -> int:
        return sum(self.support.values())

    def __eq__(self, other):
        return isinstance(other, Character) and self.support == other.support

    def __add__(self, other: "Character") -> "Character":
        out = Counter(self.support)
        out.update(other.support)
        return Character(dict(out))


def _system(obj) -> DualRootSystem:
    if isinstance(obj, DualRootSystem):
        return obj
    if isinstance(obj, (MetaplecticDatum, LeviDatum)):
        return obj.system
    raise TypeError(f"expected a datum or Levi, got {type(obj).__name__}")


def _check_dominant(system: DualRootSystem, nu):
    if len(nu) != system.base.rank:
        raise InputError(f"weight {tuple(nu)} has wrong length; rank is {system.base.rank}")
    system.datum.require_sharp(nu)
    bad = system.first_violation(nu)
    if bad is not None:
        i, p = bad
        raise InputError(f"{tuple(nu)} is not dominant: pairing with dual simple coroot {i + 1} is {p}")


def freudenthal(system: DualRootSystem, lam) -> dict[Vec, int]:
    base = system.base
    lam = tuple(lam)
    rho = system.rho
    positive = system.positive_roots
    simple = system.simple_roots

    def norm(x):
        y = [Fraction(a) + b for a, b in zip(x, rho)]
        return base.form(y, y)

    top = norm(lam)
    height = base.height(lam)
    mult = {lam: 1}
    layer = [lam]
    while layer:
        candidates = {tuple(a - b for a, b in zip(mu, beta)) for mu in layer for beta in simple}
        nxt = []
        for mu in sorted(candidates):
            denom = top - norm(mu)
            if denom <= 0:
                continue
            total = 0
            for beta in positive:
                k = 1
                while True:
                    above = tuple(a + k * b for a, b in zip(mu, beta))
                    if base.height(above) > height:
                        break
                    m = mult.get(above)
                    if m:
                        total += base.form(above, beta) * m
                    k += 1
            val = Fraction(2 * total) / denom
            if val.denominator != 1:
                raise FalsificationError(f"non-integral multiplicity {val} at {mu}")
            if val > 0:
                mult[mu] = int(val)
                nxt.append(mu)
            elif val < 0:
                raise FalsificationError(f"negative multiplicity {val} at {mu}")
        layer = nxt
    return mult


def irreducible_character(datum, nu) -> Character:
    system = _system(datum)
    nu = tuple(nu)
    _check_dominant(system, nu)
    return Character(freudenthal(system, nu), nu)


def weight_multiplicity(datum, nu, mu) -> int:
    return irreducible_character(datum, nu).multiplicity(mu)


def kostant_multiplicity(system: DualRootSystem, lam, mu) -> int:
    """Kostant's alternating sum over the Weyl group; an independent check of Freudenthal."""
    base = system.base
    positive = list(system.positive_roots)

    @lru_cache(maxsize=None)
    def count(x, idx):
        if all(c == 0 for c in x):
            return 1
        if idx == len(positive) or any(c < 0 for c in x):
            return 0
        beta = positive[idx]
        total, cur = 0, x
        while all(c >= 0 for c in cur):
            total += count(cur, idx + 1)
            cur = tuple(a - b for a, b in zip(cur, beta))
        return total

    lr = tuple(Fraction(a) + b for a, b in zip(lam, system.rho))
    mr = tuple(Fraction(a) + b for a, b in zip(mu, system.rho))
    total = 0
    for w in system.weyl_elements():
        diff = tuple(a - b for a, b in zip(base.act(w, lr), mr))
        if any(c.denominator != 1 for c in diff):
            continue
        total += (-1) ** len(w) * count(tuple(int(c) for c in diff), 0)
    return total


def decompose(system: DualRootSystem, character: Character) -> dict[Vec, int]:
    """Greedy extraction of irreducible constituents by ρ̌-height."""
    base = system.base
    rest = Counter(character.support)
    out: dict[Vec, int] = {}
    while rest:
        top = max(rest, key=lambda mu: (base.height(mu), mu))
        m = rest[top]
        if m < 0 or not system.is_dominant(top):
            raise FalsificationError(f"character is not a sum of irreducibles (stuck at {top})")
        out[top] = out.get(top, 0) + m
        for mu, k in freudenthal(system, top).items():
            rest[mu] -= m * k
            if rest[mu] == 0:
                del rest[mu]
            elif rest[mu] < 0:
                raise FalsificationError(f"negative remainder at {mu} while decomposing")
    return out


def branch(lam, levi: LeviDatum) -> dict[Vec, int]:
    gsys = levi.datum.system
    lam = tuple(lam)
    _check_dominant(gsys, lam)
    full = Character(freudenthal(gsys, lam), lam)
    pieces = decompose(levi.system, full)
    total = sum(m * levi.system.weyl_dimension(nu) for nu, m in pieces.items())
    if total != full.dim:
        raise FalsificationError("branching dimensions do not add up")
    return pieces


@dataclass(frozen=True)
class NilPiece:
    cls: tuple[int, ...]
    weights: tuple[Vec, ...]
    highest_weight: Vec
    image: Vec  # image in the quotient lattice

    @property
    def dim(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class NilradicalDatum:
    levi: LeviDatum
    pieces: tuple[NilPiece, ...]
    roots: tuple[Vec, ...] = field(repr=False)

    @property
    def J(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.cls for p in self.pieces)

    def piece(self, cls) -> NilPiece:
        return next(p for p in self.pieces if p.cls == tuple(cls))


def nilradical(levi: LeviDatum) -> NilradicalDatum:
    datum = levi.datum
    if not levi.outside:
        raise InputError("the Levi must be a proper subset of the nodes")
    roots = tuple(b for b in datum.dual_positive_roots if any(b[i] for i in levi.outside))
    groups: dict[tuple[int, ...], list[Vec]] = {}
    for b in roots:
        groups.setdefault(levi.sharp_class(b), []).append(b)
    pieces = []
    for cls, weights in sorted(groups.items(), key=lambda kv: (levi.datum.base.height(max(kv[1], key=sum)), kv[0])):
        top = max(weights, key=lambda mu: (sum(mu), mu))
        images = {levi.project(w) for w in weights}
        if len(images) != 1:
            raise FalsificationError(f"class {cls} does not have a single image in the quotient")
        if not levi.system.is_dominant(top):
            raise FalsificationError(f"piece {cls}: top weight {top} is not dominant for the Levi")
        expected = freudenthal(levi.system, top)
        if Counter(weights) != Counter(expected):
            raise FalsificationError(f"piece {cls} is not an irreducible Levi module")
        pieces.append(NilPiece(cls, tuple(sorted(weights)), top, images.pop()))
    nil = NilradicalDatum(levi, tuple(pieces), roots)
    images = [p.image for p in pieces]
    if len(set(images)) != len(images):
        raise FalsificationError("the map from J to the quotient lattice is not injective")
    classes = set(nil.J)
    for i in levi.outside:
        if levi.sharp_class(datum.dual_simple_roots[i]) not in classes:
            raise FalsificationError(f"class of dual simple root {i + 1} missing from J")
    return nil


def kostant_elements(nil: NilradicalDatum, theta) -> list[dict[tuple[int, ...], int]]:
    """All assignments J -> N with sum n_nu * image(nu) = theta."""
    theta = tuple(theta)
    pieces = nil.pieces
    out = []

    def rec(idx, rest, acc):
        if idx == len(pieces):
            if all(c == 0 for c in rest):
                out.append(dict(acc))
            return
        img = pieces[idx].image
        k = 0
        cur = rest
        while all(c >= 0 for c in cur):
            if k:
                acc[pieces[idx].cls] = k
            rec(idx + 1, cur, acc)
            acc.pop(pieces[idx].cls, None)
            k += 1
            cur = tuple(a - b for a, b in zip(cur, img))

    if len(theta) == len(nil.levi.outside) and all(c >= 0 for c in theta):
        rec(0, theta, {})
    return out


def _monomial_table(nil: NilradicalDatum, theta) -> dict[tuple[int, Vec], int]:
    """(size, weight sum) -> number of multisets of nilradical roots with image theta."""
    levi = nil.levi
    theta = tuple(theta)
    roots = [(levi.project(b), b) for b in nil.roots]
    r = levi.base.rank
    zero_img = tuple(0 for _ in theta)
    states = {(zero_img, 0, tuple(0 for _ in range(r))): 1}
    for img, b in roots:
        new = dict(states)
        for (s_img, size, wsum), cnt in states.items():
            k = 1
            while True:
                t_img = tuple(a + k * c for a, c in zip(s_img, img))
                if any(x > y for x, y in zip(t_img, theta)):
                    break
                key = (t_img, size + k, tuple(a + k * c for a, c in zip(wsum, b)))
                new[key] = new.get(key, 0) + cnt
                k += 1
        states = new
    out: dict[tuple[int, Vec], int] = {}
    for (s_img, size, wsum), cnt in states.items():
        if s_img == theta:
            out[(size, wsum)] = out.get((size, wsum), 0) + cnt
    return out


def sym_dim_direct(nil: NilradicalDatum, theta, m: int) -> int:
    return sum(c for (size, _), c in _monomial_table(nil, theta).items() if size == m)


def sym_dim_product(nil: NilradicalDatum, theta, m: int) -> int:
    total = 0
    for elem in kostant_elements(nil, theta):
        if sum(elem.values()) != m:
            continue
        term = 1
        for cls, k in elem.items():
            d = nil.piece(cls).dim
            term *= comb(d + k - 1, k)
        total += term
    return total


def kostant_partition_count(system: DualRootSystem, x) -> int:
    positive = list(system.positive_roots)

    @lru_cache(maxsize=None)
    def count(y, idx):
        if all(c == 0 for c in y):
            return 1
        if idx == len(positive):
            return 0
        total, cur = 0, y
        while all(c >= 0 for c in cur):
            total += count(cur, idx + 1)
            cur = tuple(a - b for a, b in zip(cur, positive[idx]))
        return total

    return count(tuple(x), 0)


def graded_sym(nil: NilradicalDatum, theta, m: int) -> dict:
    levi = nil.levi
    theta = tuple(theta)
    if not levi.in_cone(theta):
        return {"sym_dim": 0, "env_character": {}, "note": f"theta {theta} is outside the positive cone"}
    if m < 0:
        raise InputError("m must be nonnegative")
    table = _monomial_table(nil, theta)
    direct = sum(c for (size, _), c in table.items() if size == m)
    product_form = sym_dim_product(nil, theta, m)
    if direct != product_form:
        raise FalsificationError(f"Sym identity fails at theta={theta}, m={m}: {direct} != {product_form}")
    env = Counter()
    for (_, wsum), c in table.items():
        env[wsum] += c
    env_char = Character(dict(env))
    decomposition = decompose(levi.system, env_char) if env else {}
    if not levi.levi_nodes:
        total = sum(table.values())
        if total != kostant_partition_count(levi.datum.system, levi.lift(theta)):
            raise FalsificationError("enveloping algebra dimension differs from the partition count")
    return {"sym_dim": direct, "env_character": decomposition, "env_dim": env_char.dim}


def check_positive(levi: LeviDatum, character: Character) -> bool:
    system = levi.system
    base = levi.base
    w0 = levi.w0_levi()
    for nu in decompose(system, character):
        if not _constituent_positive(levi, base, w0, nu):
            return False
    return True


def _constituent_positive(levi, base, w0, nu) -> bool:
    if any(nu[i] < 0 for i in levi.outside):
        return False
    nodes = levi.levi_nodes
    start = base.act(w0, nu)
    # mu = nu + sum k_i alpha_i; w0(mu) = w0(nu) - sum k_i w0-permuted simple coroots
    bounds = []
    for i in nodes:
        image = base.act(w0, tuple(int(k == i) for k in range(base.rank)))
        j = next(k for k, c in enumerate(image) if c)
        bounds.append(max(start[j], -1))
    if any(b < 0 for b in bounds):
        return False

    def rec(idx, mu):
        if idx == len(nodes):
            if not all(base.pair(mu, i) >= 0 for i in nodes):
                return False
            return all(c >= 0 for c in base.act(w0, mu))
        for k in range(bounds[idx] + 1):
            cand = tuple(c + k if t == nodes[idx] else c for t, c in enumerate(mu))
            if rec(idx + 1, cand):
                return True
        return False

    return rec(0, tuple(nu))
