"""Simple simply-connected root data in the simple-coroot basis.

Coweights are integer tuples of coefficients on the simple coroots. A weight
is stored as its tuple of pairings with the simple coroots. The Cartan entry
``cartan[i][j]`` is the pairing of coroot ``i`` with root ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .intlinalg import determinant

Vec = tuple[int, ...]

_RANK_RULES = {
    "A": (lambda r: r >= 1, "rank >= 1"),
    "B": (lambda r: r >= 2, "rank >= 2"),
    "C": (lambda r: r >= 2, "rank >= 2"),
    "D": (lambda r: r >= 4, "rank >= 4"),
    "E": (lambda r: r in (6, 7, 8), "rank in {6, 7, 8}"),
    "F": (lambda r: r == 4, "rank == 4"),
    "G": (lambda r: r == 2, "rank == 2"),
}

# classical values, used only as a cross-check of the computed number
DUAL_COXETER_TABLE = {
    "A": lambda r: r + 1,
    "B": lambda r: 2 * r - 1,
    "C": lambda r: r + 1,
    "D": lambda r: 2 * r - 2,
    "E": lambda r: {6: 12, 7: 18, 8: 30}[r],
    "F": lambda r: 9,
    "G": lambda r: 4,
}

POSITIVE_ROOT_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


class InadmissibleLabel(InputError):
    pass


@dataclass(frozen=True)
class CartanLabel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise InadmissibleLabel(f"unknown family {self.family!r}; expected one of ABCDEFG")
        ok, bound = _RANK_RULES[self.family]
        if not isinstance(self.rank, int) or not ok(self.rank):
            raise InadmissibleLabel(f"type {self.family}{self.rank} violates the rank bound: {bound}")

    @classmethod
    def parse(cls, text: str) -> "CartanLabel":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise InadmissibleLabel(f"cannot parse Cartan label {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _dynkin(label: CartanLabel):
    """Edges (0-based) and squared root lengths with Bourbaki numbering."""
    r, f = label.rank, label.family
    edges = [(i, i + 1) for i in range(r - 1)]
    lengths = [1] * r
    if f == "B":
        lengths = [2] * (r - 1) + [1]
    elif f == "C":
        lengths = [1] * (r - 1) + [2]
    elif f == "D":
        edges = [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    elif f == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, r - 1)]
    elif f == "F":
        lengths = [2, 2, 1, 1]
    elif f == "G":
        lengths = [1, 3]
    return edges, lengths


@dataclass(frozen=True)
class WeylElement:
    """Word in simple reflections; acts by applying the last letter first."""

    word: tuple[int, ...] = ()

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.word + other.word)

    def inverse(self) -> "WeylElement":
        return WeylElement(tuple(reversed(self.word)))

    def __len__(self):
        return len(self.word)


@dataclass(frozen=True)
class RootDatum:
    label: CartanLabel
    cartan: tuple[tuple[int, ...], ...]
    iota: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]  # as pairing tuples with the simple coroots
    h_dual: int
    w0: WeylElement
    _root_coords: tuple[Vec, ...] = field(repr=False, default=())

    @property
    def rank(self) -> int:
        return self.label.rank

    @property
    def rho_check(self) -> Vec:
        return (1,) * self.rank

    @property
    def kappa(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(-2 * self.h_dual * x for x in row) for row in self.iota)

    def pair(self, mu, j: int):
        """<mu, simple root j>."""
        return sum(mu[k] * self.cartan[k][j] for k in range(self.rank))

    def pairings(self, mu) -> tuple:
        return tuple(self.pair(mu, j) for j in range(self.rank))

    def form(self, mu, nu):
        r = self.rank
        return sum(mu[i] * self.iota[i][j] * nu[j] for i in range(r) for j in range(r))

    def height(self, mu):
        return sum(mu)

    def reflect(self, i: int, mu) -> tuple:
        p = self.pair(mu, i)
        return tuple(x - p if k == i else x for k, x in enumerate(mu))

    def act(self, w: WeylElement, mu) -> tuple:
        out = tuple(mu)
        for i in reversed(w.word):
            out = self.reflect(i, out)
        return out

    def is_dominant(self, mu) -> bool:
        return all(p >= 0 for p in self.pairings(mu))

    def dominance(self, mu) -> dict:
        word: list[int] = []
        cur = tuple(mu)
        while True:
            bad = next((i for i in range(self.rank) if self.pair(cur, i) < 0), None)
            if bad is None:
                break
            cur = self.reflect(bad, cur)
            word.insert(0, bad)
        return {"is_dominant": not word, "dominant_representative": cur, "w": WeylElement(tuple(word))}

    def orbit(self, mu) -> set:
        seen = {tuple(mu)}
        frontier = [tuple(mu)]
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(self.rank):
                    y = self.reflect(i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def weyl_order(self) -> int:
        return len(self.orbit(self.regular_coweight()))

    def regular_coweight(self) -> Vec:
        """Sum of positive coroots; pairs to 2 with every simple root."""
        return tuple(sum(c[k] for c in self.positive_coroots) for k in range(self.rank))

    def weyl_elements(self) -> list[WeylElement]:
        """All elements as words, one per element (enumerated via a regular orbit)."""
        start = self.regular_coweight()
        words = {start: WeylElement()}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(self.rank):
                    y = self.reflect(i, x)
                    if y not in words:
                        words[y] = WeylElement((i,) + words[x].word)
                        nxt.append(y)
            frontier = nxt
        return list(words.values())


def _close_positive(simple: list[Vec], reflect) -> list[Vec]:
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(len(simple)):
                y = reflect(i, x)
                if all(c >= 0 for c in y) and any(y) and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda v: (sum(v), v))


def build_root_datum(label: CartanLabel | str) -> RootDatum:
    if isinstance(label, str):
        label = CartanLabel.parse(label)
    r = label.rank
    edges, lengths = _dynkin(label)
    inner = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        inner[i][i] = Fraction(lengths[i])
    for i, j in edges:
        inner[i][j] = inner[j][i] = Fraction(-max(lengths[i], lengths[j]), 2)
    # cartan[i][j] = <coroot_i, root_j> = 2(r_i, r_j)/(r_i, r_i)
    cartan = [[int(2 * inner[i][j] / inner[i][i]) for j in range(r)] for i in range(r)]
    lmax = max(lengths)
    iota_q = [[2 * lmax * inner[i][j] / (lengths[i] * lengths[j]) for j in range(r)] for i in range(r)]
    assert all(x.denominator == 1 for row in iota_q for x in row)
    iota = [[int(x) for x in row] for row in iota_q]

    # positive coroots: s_i(mu) = mu - <mu, root_i> coroot_i
    def reflect_coroot(i, mu):
        p = sum(mu[k] * cartan[k][i] for k in range(r))
        return tuple(x - p if k == i else x for k, x in enumerate(mu))

    # roots in the simple-root basis: s_i(b) = b - <coroot_i, b> root_i
    def reflect_root(i, b):
        p = sum(cartan[i][k] * b[k] for k in range(r))
        return tuple(x - p if k == i else x for k, x in enumerate(b))

    unit = [tuple(int(k == i) for k in range(r)) for i in range(r)]
    pos_coroots = _close_positive(unit, reflect_coroot)
    root_coords = _close_positive(unit, reflect_root)
    pos_roots = [tuple(sum(cartan[i][k] * b[k] for k in range(r)) for i in range(r)) for b in root_coords]

    # 2 h iota(a_i, a_j) = sum over positive roots of 2 <a_i, root><a_j, root>
    total = [[sum(2 * p[i] * p[j] for p in pos_roots) for j in range(r)] for i in range(r)]
    ratio = Fraction(total[0][0], 2 * iota[0][0])
    assert ratio.denominator == 1
    h_dual = int(ratio)
    assert all(total[i][j] == 2 * h_dual * iota[i][j] for i in range(r) for j in range(r))

    proto = RootDatum(label, tuple(map(tuple, cartan)), tuple(map(tuple, iota)), tuple(pos_coroots),
                      tuple(pos_roots), h_dual, WeylElement(), tuple(root_coords))
    # longest element: drive the regular dominant coweight to its negative
    x = proto.regular_coweight()
    word: list[int] = []
    while True:
        i = next((i for i in range(r) if proto.pair(x, i) > 0), None)
        if i is None:
            break
        x = proto.reflect(i, x)
        word.insert(0, i)
    return RootDatum(label, proto.cartan, proto.iota, proto.positive_coroots, proto.positive_roots,
                     h_dual, WeylElement(tuple(word)), proto._root_coords)


def is_positive_definite(m) -> bool:
    return all(determinant([list(row[:k]) for row in m[:k]]) > 0 for k in range(1, len(m) + 1))
