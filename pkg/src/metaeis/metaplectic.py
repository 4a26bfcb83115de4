"""Metaplectic dual data for a simple simply-connected group and a cover degree n."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd

from .errors import InputError
from .intlinalg import determinant, hnf, inverse_rational, left_kernel, smith, solve_integer, transpose
from .rootdata import RootDatum, Vec, WeylElement


class NotInSublattice(InputError):
    pass


class FiniteAbelianGroup:
    """Z^k modulo the row lattice of a relation matrix, via Smith normal form."""

    def __init__(self, relations: list[list[int]], dim: int):
        self.dim = dim
        self.relations = [list(r) for r in relations]
        if relations:
            diag, _, v = smith(relations)
        else:
            diag, v = [], [[int(i == j) for j in range(dim)] for i in range(dim)]
        diag = diag + [0] * (dim - len(diag))
        self._v = v
        self._diag = diag
        self._keep = [i for i, d in enumerate(diag) if d != 1]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(self._diag[i] for i in self._keep if self._diag[i] != 0)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self._diag if d == 0)

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def classify(self, x) -> tuple[int, ...]:
        y = [sum(x[k] * self._v[k][j] for k in range(self.dim)) for j in range(self.dim)]
        return tuple(y[i] % self._diag[i] if self._diag[i] else y[i] for i in self._keep)

    def elements(self) -> list[tuple[int, ...]]:
        """Representatives in Z^dim of every element (finite groups only)."""
        if self.free_rank:
            raise ValueError("group is infinite")
        vinv = inverse_rational(self._v) if self.dim else []
        reps = []
        ranges = [range(self._diag[i]) for i in self._keep]
        for combo in product(*ranges):
            y = [0] * self.dim
            for i, c in zip(self._keep, combo):
                y[i] = c
            x = [sum(Fraction(y[k]) * vinv[k][j] for k in range(self.dim)) for j in range(self.dim)]
            reps.append(tuple(int(c) for c in x))
        return reps

    def torsion_order(self, n: int) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= gcd(n, d)
        if self.free_rank:
            out *= n ** self.free_rank
        return out

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "trivial"


def classify_cartan(cartan, lengths) -> str:
    """Finite type label of an indecomposable Cartan matrix.

    ``lengths`` are squared root lengths (any W-invariant scaling).
    """
    r = len(cartan)
    if r == 0:
        return "trivial"
    for i in range(r):
        if cartan[i][i] != 2:
            raise ValueError("diagonal entries must be 2")
    adj = {i: [j for j in range(r) if j != i and cartan[i][j] != 0] for i in range(r)}
    n_edges = sum(len(v) for v in adj.values()) // 2
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != r:
        raise ValueError("Cartan matrix is decomposable")
    if n_edges != r - 1:
        raise ValueError("Dynkin graph is not a tree")
    mult = {(i, j): cartan[i][j] * cartan[j][i] for i in range(r) for j in adj[i]}
    maxmult = max(mult.values(), default=0)
    if maxmult > 3:
        raise ValueError("not of finite type")
    if maxmult == 3:
        if r != 2:
            raise ValueError("not of finite type")
        return "G2"
    degrees = [len(adj[i]) for i in range(r)]
    if maxmult == 2:
        if max(degrees) > 2:
            raise ValueError("not of finite type")
        if r == 2:
            return "B2"
        # path ordering from an end
        start = next(i for i in range(r) if degrees[i] == 1)
        path, prev = [start], None
        while len(path) < r:
            nxt = next(j for j in adj[path[-1]] if j != prev)
            prev = path[-1]
            path.append(nxt)
        pos = next(k for k in range(r - 1) if mult[(path[k], path[k + 1])] == 2)
        if r == 4 and pos == 1:
            return "F4"
        if pos not in (0, r - 2):
            raise ValueError("not of finite type")
        end = path[-1] if pos == r - 2 else path[0]
        other = [i for i in range(r) if i != end]
        if all(lengths[end] < lengths[i] for i in other):
            return f"B{r}"
        return f"C{r}"
    # simply laced
    if max(degrees) <= 2:
        return f"A{r}"
    branch = [i for i in range(r) if degrees[i] == 3]
    if len(branch) != 1 or max(degrees) > 3:
        raise ValueError("not of finite type")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{r}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{r}"
    raise ValueError("not of finite type")


def classify_reductive(cartan, lengths) -> str:
    """Label of a possibly decomposable Cartan matrix, components joined by 'x'."""
    r = len(cartan)
    if r == 0:
        return "torus"
    comps, seen = [], set()
    for s in range(r):
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            for j in range(r):
                if j != i and cartan[i][j] and j not in seen:
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        comp.sort()
        sub = [[cartan[i][j] for j in comp] for i in comp]
        comps.append(classify_cartan(sub, [lengths[i] for i in comp]))
    return " x ".join(comps)


@dataclass(frozen=True)
class DualRootSystem:
    """Root system of the dual group (or of one of its Levis) on the sublattice.

    Roots are coweight vectors; the coroot functional of simple root ``i`` is
    the simple root pairing divided by ``delta[i]``.
    """

    datum: "MetaplecticDatum"
    nodes: tuple[int, ...]

    @property
    def base(self) -> RootDatum:
        return self.datum.base

    @cached_property
    def simple_roots(self) -> tuple[Vec, ...]:
        return tuple(self.datum.dual_simple_roots[i] for i in self.nodes)

    @cached_property
    def positive_roots(self) -> tuple[Vec, ...]:
        allowed = set(self.nodes)
        return tuple(b for b in self.datum.dual_positive_roots
                     if all(c == 0 or k in allowed for k, c in enumerate(b)))

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        r = self.base.rank
        return tuple(Fraction(sum(b[k] for b in self.positive_roots), 2) for k in range(r))

    def coroot_pair(self, mu, i: int):
        """<mu, coroot of simple root i> for a node i in ``nodes``."""
        val = Fraction(self.base.pair(mu, i), self.datum.delta[i])
        return int(val) if val.denominator == 1 else val

    def root_coroot_pair(self, mu, beta):
        """<mu, beta^vee> for an arbitrary dual root beta."""
        val = Fraction(2 * self.base.form(mu, beta), self.base.form(beta, beta))
        return int(val) if val.denominator == 1 else val

    def is_dominant(self, mu) -> bool:
        return all(self.coroot_pair(mu, i) >= 0 for i in self.nodes)

    def first_violation(self, mu):
        for i in self.nodes:
            p = self.coroot_pair(mu, i)
            if p < 0:
                return i, p
        return None

    def reflect(self, i: int, mu) -> tuple:
        return self.base.reflect(i, mu)

    def dominant_conjugate(self, mu) -> tuple:
        cur = tuple(mu)
        while True:
            bad = next((i for i in self.nodes if self.base.pair(cur, i) < 0), None)
            if bad is None:
                return cur
            cur = self.reflect(bad, cur)

    def orbit(self, mu) -> set:
        seen = {tuple(mu)}
        frontier = [tuple(mu)]
        while frontier:
            nxt = []
            for x in frontier:
                for i in self.nodes:
                    y = self.reflect(i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def weyl_elements(self) -> list[WeylElement]:
        start = tuple(2 * c for c in self.rho)
        words = {start: WeylElement()}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for i in self.nodes:
                    y = self.reflect(i, x)
                    if y not in words:
                        words[y] = WeylElement((i,) + words[x].word)
                        nxt.append(y)
            frontier = nxt
        return list(words.values())

    def weyl_dimension(self, lam) -> int:
        num = Fraction(1)
        for beta in self.positive_roots:
            lr = [Fraction(a) + b for a, b in zip(lam, self.rho)]
            num *= Fraction(self.base.form(lr, beta), self.base.form(self.rho, beta))
        assert num.denominator == 1
        return int(num)

    def cartan_type(self) -> str:
        cart = [[self.datum.dual_cartan[i][j] for j in self.nodes] for i in self.nodes]
        lengths = [self.base.form(b, b) for b in self.simple_roots]
        return classify_reductive(cart, lengths)


@dataclass(frozen=True)
class MetaplecticDatum:
    base: RootDatum
    n: int
    N: int
    lambda_sharp: tuple[Vec, ...]
    delta: tuple[int, ...]
    dual_simple_roots: tuple[Vec, ...]
    dual_cartan: tuple[tuple[int, ...], ...]
    rho_n: tuple[Fraction, ...]
    dual_positive_roots: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return self.base.rank

    def in_lambda_sharp(self, mu) -> bool:
        return all(self.base.form(mu, e) % self.n == 0 for e in _units(self.rank))

    def require_sharp(self, mu):
        for i, e in enumerate(_units(self.rank)):
            val = self.base.form(mu, e)
            if val % self.n:
                raise NotInSublattice(
                    f"{tuple(mu)} is not in the sublattice: iota(nu, alpha_{i + 1}) = {val} "
                    f"is not divisible by n = {self.n}")

    @cached_property
    def _basis_inverse(self):
        return inverse_rational([list(b) for b in self.lambda_sharp])

    def sharp_coordinates(self, mu) -> list[int]:
        coords = solve_integer([list(b) for b in self.lambda_sharp], mu, self._basis_inverse)
        if coords is None:
            raise NotInSublattice(f"{tuple(mu)} is not in the sublattice")
        return coords

    def index(self) -> int:
        return abs(determinant([list(b) for b in self.lambda_sharp]))

    @cached_property
    def system(self) -> DualRootSystem:
        return DualRootSystem(self, tuple(range(self.rank)))

    @cached_property
    def cocenter(self) -> FiniteAbelianGroup:
        return self.sublattice_quotient(range(self.rank))

    def sublattice_quotient(self, nodes) -> FiniteAbelianGroup:
        rel = [self.sharp_coordinates(self.dual_simple_roots[i]) for i in nodes]
        return FiniteAbelianGroup(rel, self.rank)

    @cached_property
    def group_cocenter(self) -> FiniteAbelianGroup:
        """Weights modulo roots of G, in fundamental-weight coordinates."""
        return FiniteAbelianGroup(transpose([list(r) for r in self.base.cartan]), self.rank)

    def xi_weight(self, nu) -> tuple[Fraction, ...]:
        return tuple(Fraction(self.base.form(nu, e), self.n) for e in _units(self.rank))

    def twisted_weyl_shift(self, w: WeylElement) -> Vec:
        moved = self.base.act(w, self.rho_n)
        out = tuple(a - b for a, b in zip(moved, self.rho_n))
        assert all(c.denominator == 1 for c in out)
        out = tuple(int(c) for c in out)
        assert self.in_lambda_sharp(out)
        return out


def _units(r: int) -> list[Vec]:
    return [tuple(int(k == i) for k in range(r)) for i in range(r)]


def build_metaplectic(base: RootDatum, n: int) -> MetaplecticDatum:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"cover degree must be a positive integer, got {n!r}")
    r = base.rank
    iota = [list(row) for row in base.iota]
    diag, u, _ = smith(iota)
    # iota = U^-1 D V^-1; x iota in n Z^r  <=>  (x U^-1) D in n Z^r
    # columns-wise: y = x U^-1 with y_i in (n / gcd(n, d_i)) Z, so x = y U
    scaled = [[(n // gcd(n, diag[i])) * u[i][j] for j in range(r)] for i in range(r)]
    basis = tuple(tuple(row) for row in hnf(scaled))
    delta = tuple(Fraction(iota[i][i], 2 * n).denominator for i in range(r))
    simple = tuple(tuple(delta[i] * int(k == i) for k in range(r)) for i in range(r))
    dual_cartan = tuple(tuple(Fraction(2 * base.form(simple[i], simple[j]), base.form(simple[i], simple[i]))
                              for j in range(r)) for i in range(r))
    assert all(x.denominator == 1 for row in dual_cartan for x in row)
    dual_cartan = tuple(tuple(int(x) for x in row) for row in dual_cartan)
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(r):
                y = base.reflect(i, x)
                if all(c >= 0 for c in y) and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    positive = tuple(sorted(seen, key=lambda b: (sum(b), b)))
    rho = tuple(Fraction(sum(b[k] for b in positive), 2) for k in range(r))
    datum = MetaplecticDatum(base, n, 2 * base.h_dual * n, basis, delta, simple, dual_cartan, rho, positive)
    _check_datum(datum)
    return datum


def _check_datum(d: MetaplecticDatum):
    for b in d.lambda_sharp:
        assert d.in_lambda_sharp(b)
    # every element of n * (dual of iota) lattice generator is reached: index check
    r = d.rank
    expected = 1
    diag, _, _ = smith([list(row) for row in d.base.iota])
    for s in diag:
        expected *= d.n // gcd(d.n, s)
    assert d.index() == expected
    for b in d.dual_simple_roots:
        assert d.in_lambda_sharp(b)
    lengths = [d.base.form(b, b) for b in d.dual_simple_roots]
    classify_cartan([list(row) for row in d.dual_cartan], lengths)
    assert len(d.dual_positive_roots) == len(d.base.positive_coroots)
    assert r == len(d.delta)


def dual_group_profile(datum: MetaplecticDatum) -> dict:
    coc = datum.cocenter
    gc = datum.group_cocenter
    images = {}
    for rep in coc.elements():
        nu = tuple(sum(rep[k] * datum.lambda_sharp[k][j] for k in range(datum.rank)) for j in range(datum.rank))
        w = datum.xi_weight(nu)
        assert all(c.denominator == 1 for c in w)
        images[coc.classify(rep)] = gc.classify([int(c) for c in w])
    injective = len(set(images.values())) == len(images)
    target = gc.torsion_order(datum.n)
    return {
        "dual_cartan_type": datum.system.cartan_type(),
        "cocenter": coc,
        "center_order": gc.order,
        "xi_report": {
            "injective": injective,
            "surjective_onto_Cn": injective and len(images) == target,
            "image_size": len(set(images.values())),
            "torsion_order": target,
        },
    }


def center_elements(base: RootDatum) -> list[tuple[Fraction, ...]]:
    """Coweight representatives (coordinates mod 1) of every element of Z(G)."""
    inv = inverse_rational([list(r) for r in base.cartan])
    gens = [tuple(c % 1 for c in row) for row in inv]
    seen = {tuple(Fraction(0) for _ in range(base.rank))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % 1 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


@dataclass(frozen=True)
class CentralCharacter:
    """Character of Z(G) given by a weight (fundamental-weight coordinates)."""

    weight: tuple[Fraction, ...]
    cocenter_class: tuple[int, ...]
    values: tuple[tuple[tuple[Fraction, ...], Fraction], ...]  # (coweight rep, argument mod 1)

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for _, v in self.values)

    def inverse_values(self) -> tuple[tuple[tuple[Fraction, ...], Fraction], ...]:
        return tuple((z, (-v) % 1) for z, v in self.values)


def xi_character(datum: MetaplecticDatum, nu) -> CentralCharacter:
    datum.require_sharp(nu)
    weight = datum.xi_weight(nu)
    ints = [int(c) for c in weight]
    values = tuple((z, sum(a * b for a, b in zip(z, weight)) % 1) for z in center_elements(datum.base))
    return CentralCharacter(weight, datum.group_cocenter.classify(ints), values)


def central_twist(datum: MetaplecticDatum, nu) -> CentralCharacter:
    return xi_character(datum, nu)


def twisted_weyl_shift(datum: MetaplecticDatum, w: WeylElement) -> Vec:
    return datum.twisted_weyl_shift(w)


@dataclass(frozen=True)
class LeviDatum:
    datum: MetaplecticDatum
    levi_nodes: tuple[int, ...]
    outside: tuple[int, ...]
    lambda_sharp_gp: tuple[Vec, ...]
    lambda_m0: tuple[Vec, ...]
    rho_check_m: tuple[Fraction, ...]  # pairings <alpha_k, rho_check_M>

    @property
    def base(self) -> RootDatum:
        return self.datum.base

    @cached_property
    def system(self) -> DualRootSystem:
        return DualRootSystem(self.datum, self.levi_nodes)

    @cached_property
    def cocenter(self) -> FiniteAbelianGroup:
        return self.datum.sublattice_quotient(self.levi_nodes)

    def project(self, mu) -> Vec:
        return tuple(mu[i] for i in self.outside)

    def lift(self, theta) -> Vec:
        out = [0] * self.base.rank
        for i, c in zip(self.outside, theta):
            out[i] = c
        return tuple(out)

    def positive_cone_generators(self) -> list[Vec]:
        k = len(self.outside)
        return [tuple(int(a == b) for b in range(k)) for a in range(k)]

    def in_cone(self, theta) -> bool:
        return len(theta) == len(self.outside) and all(c >= 0 for c in theta)

    def in_sharp_gp(self, theta) -> bool:
        if not self.outside:
            return True
        return solve_integer([list(b) for b in self.lambda_sharp_gp], theta) is not None

    def sharp_gp_index(self) -> int:
        if not self.outside:
            return 1
        return abs(determinant([list(b) for b in self.lambda_sharp_gp]))

    def kappa_m(self, theta) -> Vec:
        lifted = self.lift(theta)
        return tuple(-2 * self.base.h_dual * self.base.form(b, lifted) for b in self.lambda_m0)

    def levi_dual_cartan(self) -> list[list[int]]:
        return [[self.datum.dual_cartan[i][j] for j in self.levi_nodes] for i in self.levi_nodes]

    def sharp_class(self, nu) -> tuple[int, ...]:
        return self.cocenter.classify(self.datum.sharp_coordinates(nu))

    def w0_levi(self) -> WeylElement:
        x = tuple(2 * c for c in self.system.rho)
        word: list[int] = []
        while True:
            i = next((i for i in self.levi_nodes if self.base.pair(x, i) > 0), None)
            if i is None:
                return WeylElement(tuple(word))
            x = self.base.reflect(i, x)
            word.insert(0, i)


def build_levi(datum: MetaplecticDatum, levi_nodes) -> LeviDatum:
    r = datum.rank
    nodes = tuple(sorted(set(levi_nodes)))
    if any(i < 0 or i >= r for i in nodes):
        raise InputError(f"Levi nodes {nodes} outside 0..{r - 1}")
    outside = tuple(i for i in range(r) if i not in nodes)
    base = datum.base
    projected = [[b[i] for i in outside] for b in datum.lambda_sharp]
    sharp_gp = tuple(tuple(row) for row in hnf(projected)) if outside else ()
    if nodes:
        a = [[base.cartan[k][i] for i in nodes] for k in range(r)]
        m0 = tuple(tuple(row) for row in left_kernel(a, r))
    else:
        m0 = tuple(tuple(int(k == i) for k in range(r)) for i in range(r))
    # kappa(alpha_i) is a multiple of the simple root i for Levi nodes
    for i in nodes:
        e_i = tuple(int(k == i) for k in range(r))
        vals = [-2 * base.h_dual * base.form(e_i, tuple(int(k == j) for k in range(r))) for j in range(r)]
        col = [base.cartan[j][i] for j in range(r)]
        ratio = Fraction(vals[i], col[i])
        assert all(v == ratio * c for v, c in zip(vals, col)) and ratio.denominator == 1
    levi_roots = [p for p, coords in zip(base.positive_roots, base._root_coords)
                  if all(c == 0 or k in nodes for k, c in enumerate(coords))]
    rho_m = tuple(Fraction(sum(p[k] for p in levi_roots), 2) for k in range(r))
    levi = LeviDatum(datum, nodes, outside, sharp_gp, m0, rho_m)
    if outside:
        assert len(sharp_gp) == len(outside)
    return levi


def component_nonvanishing(levi: LeviDatum, theta) -> bool:
    big_n = levi.datum.N
    return all(c % big_n == 0 for c in levi.kappa_m(theta))
