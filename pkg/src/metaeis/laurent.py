"""Laurent polynomials in one variable v with integer coefficients."""
from __future__ import annotations

from collections.abc import Mapping


class Laurent:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {int(k): int(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent({0: other})
        return isinstance(other, Laurent) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return Laurent(out)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Laurent":
        return Laurent({k: c * v for k, v in self._c.items()})

    def shift(self, k: int) -> "Laurent":
        return Laurent({e + k: c for e, c in self._c.items()})

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return Laurent(out)

    def __pow__(self, k: int) -> "Laurent":
        out = Laurent.one()
        for _ in range(k):
            out = out * self
        return out

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c.values())

    def evaluate_at_one(self) -> int:
        return sum(self._c.values())

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "Laurent":
        return cls({int(k): int(c) for k, c in data.items()})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for exp in sorted(self._c, reverse=True):
            c = self._c[exp]
            if exp == 0:
                mono = str(abs(c))
            else:
                var = "v" if exp == 1 else f"v^{exp}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            text += sign + mono
        return text

    __repr__ = __str__
