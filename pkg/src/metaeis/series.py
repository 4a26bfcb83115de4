"""Function-field generating series over the dual weight lattice.

The twist by Q̄ℓ(k) on a k-th symmetric power is realized as multiplication
by q^{-k}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Callable, Mapping

from .errors import InputError
from .laurent import Laurent
from .reps import NilradicalDatum, kostant_elements
from .rootdata import Vec

TWIST_CONVENTION = "Ql(k) on the k-th symmetric power realized as q^-k"


# -- exact placeholder-linear coefficients ---------------------------------

class Lin:
    """Q-linear combination of placeholder symbols; the key "1" is the constant."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, Fraction | int] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c) -> "Lin":
        return cls({"1": c})

    @classmethod
    def symbol(cls, name: str) -> "Lin":
        return cls({name: 1})

    def is_constant(self) -> bool:
        return set(self.terms) <= {"1"}

    def constant(self) -> Fraction:
        return self.terms.get("1", Fraction(0))

    def __add__(self, other):
        other = _lin(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Lin(out)

    __radd__ = __add__

    def __mul__(self, other):
        other = _lin(other)
        if other.is_constant():
            c = other.constant()
            return Lin({k: v * c for k, v in self.terms.items()})
        if self.is_constant():
            return other * self
        raise ValueError("product of two placeholder terms is not linear")

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == _lin(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        if self.is_constant():
            return rational_str(self.constant())
        return {k: rational_str(v) for k, v in sorted(self.terms.items())}

    def __repr__(self):
        return f"Lin({self.to_json()})"


def _lin(x) -> Lin:
    if isinstance(x, Lin):
        return x
    if isinstance(x, (int, Fraction)):
        return Lin.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a series coefficient")


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- curves and local systems --------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _series_coeff(num, den_roots_q, k):
    """[s^k] num(s) / prod (1 - c s) for c in den_roots_q."""
    # expand 1/prod(1 - c s) up to s^k
    inv = [Fraction(1)] + [Fraction(0)] * k
    for c in den_roots_q:
        new = [Fraction(0)] * (k + 1)
        for j in range(k + 1):
            new[j] = sum(inv[i] * Fraction(c) ** (j - i) for i in range(j + 1))
        inv = new
    return sum(Fraction(num[i]) * inv[k - i] for i in range(min(k, len(num) - 1) + 1))


@dataclass(frozen=True)
class CurveDatum:
    q: int
    g: int
    zeta_numerator: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2 or not _is_prime_power(self.q):
            raise InputError(f"q = {self.q} is not a prime power")
        if self.g < 0:
            raise InputError("genus must be nonnegative")
        p = self.zeta_numerator
        if len(p) != 2 * self.g + 1:
            raise InputError(f"zeta numerator must have degree 2g = {2 * self.g}")
        if p[0] != 1:
            raise InputError("zeta numerator must satisfy P(0) = 1")
        for j in range(self.g + 1):
            if p[2 * self.g - j] != self.q ** (self.g - j) * p[j]:
                raise InputError(f"functional equation fails at s^{2 * self.g - j}")

    def zeta_coeff(self, k: int) -> Fraction:
        return _series_coeff(self.zeta_numerator, (1, self.q), k)

    def point_count(self, k: int) -> int:
        """#X(F_{q^k}) read off the numerator's reciprocal roots via Newton sums."""
        return self.q ** k + 1 - _power_sum(self.zeta_numerator, k)


def _power_sum(p, k):
    """Σ ω_i^k where P(s) = Π (1 - ω_i s)."""
    e = [(-1) ** j * c for j, c in enumerate(p)]
    deg = len(p) - 1
    sums = [0] * (k + 1)
    for m in range(1, k + 1):
        total = (-1) ** (m - 1) * m * (e[m] if m <= deg else 0)
        for i in range(1, m):
            total += (-1) ** (i - 1) * (e[i] if i <= deg else 0) * sums[m - i]
        sums[m] = total
    return sums[k]


def _is_prime_power(q: int) -> bool:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def zeta_from_counts(q: int, g: int, counts) -> CurveDatum:
    counts = list(counts)
    if g < 0:
        raise InputError("genus must be nonnegative")
    if len(counts) != g:
        raise InputError(f"expected {g} point counts, got {len(counts)}")
    sums = [None] + [q ** k + 1 - n for k, n in enumerate(counts, start=1)]
    for k in range(1, g + 1):
        if sums[k] ** 2 > 4 * g * g * q ** k:
            raise InputError(f"Weil bound violated at k = {k}: |{counts[k - 1]} - (q^{k} + 1)| > 2g q^{k}/2")
    e = [Fraction(1)]
    for k in range(1, g + 1):
        val = sum((-1) ** (i - 1) * e[k - i] * sums[i] for i in range(1, k + 1)) / k
        if val.denominator != 1:
            raise InputError(f"functional-equation consistency fails: coefficient of s^{k} is {val}")
        e.append(val)
    coeffs = [0] * (2 * g + 1)
    for k in range(g + 1):
        coeffs[k] = int((-1) ** k * e[k])
        coeffs[2 * g - k] = q ** (g - k) * coeffs[k]
    curve = CurveDatum(q, g, tuple(coeffs))
    for k in range(1, g + 1):
        assert curve.point_count(k) == counts[k - 1]
    return curve


def curve_from_json(data: Mapping) -> CurveDatum:
    try:
        q, g = int(data["q"]), int(data["g"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"curve file needs integer fields q and g ({exc})") from None
    if "zeta_numerator" in data:
        return CurveDatum(q, g, tuple(int(c) for c in data["zeta_numerator"]))
    if "point_counts" in data:
        return zeta_from_counts(q, g, [int(c) for c in data["point_counts"]])
    raise InputError("curve file needs point_counts or zeta_numerator")


@dataclass(frozen=True)
class LFactor:
    trivial: bool
    numerator: tuple[int, ...] = ()

    def coeff(self, curve: CurveDatum, k: int) -> Fraction:
        if self.trivial:
            return curve.zeta_coeff(k)
        return Fraction(self.numerator[k]) if k < len(self.numerator) else Fraction(0)

    def cohomology_dims(self, curve: CurveDatum) -> tuple[int, int, int]:
        if self.trivial:
            return (1, 2 * curve.g, 1)
        return (0, 2 * curve.g - 2, 0)


@dataclass(frozen=True)
class LocalSystemSpec:
    entries: dict[str, LFactor] = field(default_factory=dict)

    @classmethod
    def trivial(cls) -> "LocalSystemSpec":
        return cls({"*": LFactor(True)})

    @classmethod
    def from_json(cls, data: Mapping, curve: CurveDatum | None = None) -> "LocalSystemSpec":
        chars = data.get("characters") if isinstance(data, Mapping) else None
        if not isinstance(chars, Mapping):
            raise InputError('local-system file needs a "characters" object')
        entries = {}
        for key, val in chars.items():
            if val == "trivial":
                entries[key] = LFactor(True)
            elif isinstance(val, Mapping) and "numerator" in val:
                entries[key] = LFactor(False, tuple(int(c) for c in val["numerator"]))
            else:
                raise InputError(f"character {key!r}: expected \"trivial\" or {{\"numerator\": [...]}}")
        spec = cls(entries)
        if curve is not None:
            spec.validate(curve)
        return spec

    def validate(self, curve: CurveDatum):
        for key, f in self.entries.items():
            if f.trivial:
                continue
            if curve.g == 0:
                raise InputError(f"character {key!r}: genus 0 forces the trivial local system")
            if len(f.numerator) != 2 * curve.g - 1 or (f.numerator and f.numerator[0] != 1):
                raise InputError(f"character {key!r}: numerator must have degree 2g - 2 and constant term 1")

    def factor(self, key_vector: Vec, multiple: int | None = None) -> LFactor:
        exact = "[" + ",".join(str(c) for c in key_vector) + "]"
        if exact in self.entries:
            return self.entries[exact]
        if multiple is not None and f"{multiple}*nu" in self.entries:
            return self.entries[f"{multiple}*nu"]
        if "*" in self.entries:
            return self.entries["*"]
        raise InputError(f"local-system spec does not cover the character {exact}")


# -- formal series ---------------------------------------------------------------

@dataclass(frozen=True)
class FormalSeries:
    base: Vec
    coeffs: dict[Vec, Lin]
    height: int

    def __post_init__(self):
        for mu in self.coeffs:
            rel = tuple(a - b for a, b in zip(mu, self.base))
            if any(c < 0 for c in rel) or sum(rel) > self.height:
                raise ValueError(f"coefficient at {mu} lies outside the window")

    @classmethod
    def build(cls, base, coeffs, height) -> "FormalSeries":
        base = tuple(base)
        kept = {}
        for mu, c in coeffs.items():
            rel = tuple(a - b for a, b in zip(mu, base))
            if all(x >= 0 for x in rel) and sum(rel) <= height:
                c = _lin(c)
                if c:
                    kept[tuple(mu)] = c
        return cls(base, kept, height)

    def coeff(self, mu) -> Lin:
        return self.coeffs.get(tuple(mu), Lin())

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        base = tuple(min(a, b) for a, b in zip(self.base, other.base))
        h = min(self.height - sum(a - b for a, b in zip(self.base, base)),
                other.height - sum(a - b for a, b in zip(other.base, base)))
        out: dict[Vec, Lin] = {}
        for s in (self, other):
            for mu, c in s.coeffs.items():
                out[mu] = out.get(mu, Lin()) + c
        return FormalSeries.build(base, out, h)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        base = tuple(a + b for a, b in zip(self.base, other.base))
        h = min(self.height, other.height)
        out: dict[Vec, Lin] = {}
        for mu, c in self.coeffs.items():
            for nu, d in other.coeffs.items():
                key = tuple(a + b for a, b in zip(mu, nu))
                if sum(a - b for a, b in zip(key, base)) <= h:
                    out[key] = out.get(key, Lin()) + c * d
        return FormalSeries.build(base, out, h)


def l_series(curve: CurveDatum, spec: LocalSystemSpec, nu, height: int, multiple: int | None = 1) -> FormalSeries:
    nu = tuple(nu)
    if not any(nu):
        raise InputError("the character must be nonzero")
    lf = spec.factor(nu, multiple)
    q = Fraction(curve.q)
    coeffs = {}
    k = 0
    while k * sum(nu) <= height:
        coeffs[tuple(k * c for c in nu)] = lf.coeff(curve, k) / q ** k
        k += 1
    return FormalSeries.build(tuple(0 for _ in nu), coeffs, height)


def _j_multiples(nil: NilradicalDatum) -> dict[tuple[int, ...], int | None]:
    """For rank-one quotients, each J element as a multiple of the smallest image."""
    images = [p.image for p in nil.pieces]
    if len(nil.levi.outside) != 1:
        return {p.cls: None for p in nil.pieces}
    g = min(i[0] for i in images)
    return {p.cls: (p.image[0] // g if p.image[0] % g == 0 else None) for p in nil.pieces}


def eis_product_form(eis_cl: FormalSeries, nil: NilradicalDatum, curve: CurveDatum,
                    spec: LocalSystemSpec, height: int) -> FormalSeries:
    out = FormalSeries.build(eis_cl.base, eis_cl.coeffs, min(height, eis_cl.height))
    mults = _j_multiples(nil)
    for piece in nil.pieces:
        out = out * l_series(curve, spec, piece.image, height, mults[piece.cls])
    return out


def eis_sum_form(mu, eis_cl_oracle: Callable[[Vec], Lin | Fraction | int], nil: NilradicalDatum,
                curve: CurveDatum, spec: LocalSystemSpec, base=None) -> Lin:
    mu = tuple(mu)
    base = tuple(base) if base is not None else tuple(0 for _ in mu)
    window = tuple(a - b for a, b in zip(mu, base))
    if any(c < 0 for c in window):
        return Lin()
    mults = _j_multiples(nil)
    factors = {p.cls: spec.factor(p.image, mults[p.cls]) for p in nil.pieces}
    images = {p.cls: p.image for p in nil.pieces}
    q = Fraction(curve.q)
    total = Lin()
    for theta in _box(window):
        for elem in kostant_elements(nil, theta):
            weight = Fraction(1)
            for cls, k in elem.items():
                weight *= factors[cls].coeff(curve, k) / q ** k
            assert tuple(sum(k * images[c][i] for c, k in elem.items()) for i in range(len(mu))) == theta
            total = total + _lin(eis_cl_oracle(tuple(a - b for a, b in zip(mu, theta)))) * weight
    return total


def _box(upper):
    out = [()]
    for u in upper:
        out = [p + (c,) for p in out for c in range(u + 1)]
    return out


# -- symmetric powers of three-term complexes ------------------------------------

def _multiset(dim: int, k: int) -> int:
    return 1 if k == 0 else comb(dim + k - 1, k)


def sym_power_complex(h0: int, h1: int, h2: int, k: int) -> dict[int, int]:
    if min(h0, h1, h2, k) < 0:
        raise InputError("dimensions and k must be nonnegative")
    dims: dict[int, int] = {}
    for a in range(k + 1):
        for b in range(k - a + 1):
            c = k - a - b
            term = _multiset(h0, a) * comb(h1, b) * _multiset(h2, c)
            if term:
                dims[b + 2 * c] = dims.get(b + 2 * c, 0) + term
    return dims


# -- constant terms for SL2 -----------------------------------------------------

def cover_e(n: int) -> int:
    return n if n % 2 else n // 2


def _ih_part(kind: str, theta: int, n: int, g: int, case_shift: int, lf: LFactor | None, curve) -> dict:
    part = {"kind": kind, "theta": theta, "size": theta // n, "shift": case_shift}
    if lf is not None:
        h = lf.cohomology_dims(curve) if curve is not None else (1, 2 * g, 1)
        dims = sym_power_complex(*h, theta // n)
        poly = Laurent({-deg: dim for deg, dim in dims.items()}).shift(case_shift + theta // n)
        part["graded_dims"] = dims
        part["poly"] = poly
    return part


def constant_term(d: int, d1: int, n: int, g: int, spec: LocalSystemSpec | None = None,
                  curve: CurveDatum | None = None) -> dict:
    if n < 1:
        raise InputError("n must be positive")
    e = cover_e(n)
    if d1 % e:
        raise InputError(f"d1 = {d1} is not in e*Z with e = {e}")
    lf = None
    if spec is not None:
        if g == 0 and any(not f.trivial for f in spec.entries.values()):
            raise InputError("genus 0 forces the trivial local system")
        lf = spec.factor((n,), 1)
    cur = curve if curve is not None and curve.g == g else None
    if d1 > max(d, -d):
        return {"case": 1, "kind": "zero", "parts": []}
    if d < d1 <= -d:
        theta = -(d + d1)
        if theta % n:
            return {"case": 2, "kind": "zero", "parts": []}
        return {"case": 2, "kind": "single", "parts": [_ih_part("sigma_IH", theta, n, g, -(theta // n), lf, cur)]}
    if d >= d1 > -d:
        theta = d - d1
        if theta % n:
            return {"case": 3, "kind": "zero", "parts": []}
        return {"case": 3, "kind": "single",
                "parts": [_ih_part("IH", theta, n, g, 2 - 2 * g + theta // n, lf, cur)]}
    theta_s, theta_i = -(d + d1), d - d1
    if theta_s % n or theta_i % n:
        return {"case": 4, "kind": "zero", "parts": []}
    return {"case": 4, "kind": "triangle", "parts": [
        _ih_part("sigma_IH", theta_s, n, g, -(theta_s // n), lf, cur),
        _ih_part("IH", theta_i, n, g, 2 - 2 * g + theta_i // n, lf, cur),
    ]}
