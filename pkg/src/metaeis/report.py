"""Canonical JSON encoding of results."""
from __future__ import annotations

import json
from fractions import Fraction

from .laurent import Laurent
from .metaplectic import CentralCharacter, FiniteAbelianGroup
from .reps import Character
from .series import FormalSeries, Lin, TWIST_CONVENTION, rational_str
from .sl2 import ThetaModuleElement
from .stalks import StalkReport

SCHEMA = "metaeis-report/1"
CONVENTION = {
    "shift": "[k] -> v^k",
    "tate_twist": TWIST_CONVENTION,
    "coordinates": "simple-coroot basis of the coweight lattice",
    "nodes": "1-based Dynkin labels (Bourbaki)",
}


def vec_key(v) -> str:
    return "[" + ",".join(str(c) for c in v) + "]"


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, Laurent):
        return obj.to_json()
    if isinstance(obj, Lin):
        return obj.to_json()
    if isinstance(obj, FiniteAbelianGroup):
        return {"description": obj.describe(), "invariant_factors": list(obj.invariant_factors),
                "free_rank": obj.free_rank, "order": obj.order}
    if isinstance(obj, Character):
        return {"weights": {vec_key(k): v for k, v in sorted(obj.support.items())}, "dim": obj.dim,
                "highest_weight": to_jsonable(obj.highest)}
    if isinstance(obj, ThetaModuleElement):
        return [{"k": k, "shift": r, "mult": v} for (k, r), v in sorted(obj.coeffs.items())]
    if isinstance(obj, FormalSeries):
        return {"base": list(obj.base), "height": obj.height,
                "coefficients": {vec_key(k): to_jsonable(v) for k, v in sorted(obj.coeffs.items())}}
    if isinstance(obj, CentralCharacter):
        return {"weight": [rational_str(c) for c in obj.weight], "cocenter_class": list(obj.cocenter_class),
                "trivial": obj.is_trivial,
                "values": [{"center_element": [rational_str(c) for c in z], "argument": rational_str(v)}
                           for z, v in obj.values],
                "inverse_values": [{"center_element": [rational_str(c) for c in z], "argument": rational_str(v)}
                                   for z, v in obj.inverse_values()]}
    if isinstance(obj, StalkReport):
        return {"vanishes": obj.vanishes, "shift_polynomial": obj.shift_polynomial.to_json(),
                "shift_polynomial_text": str(obj.shift_polynomial), "parts": to_jsonable(list(obj.parts))}
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            key = vec_key(k) if isinstance(k, tuple) else str(k)
            out[key] = to_jsonable(v)
        return out
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def envelope(command: str, cartan: str | None, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "cartan": cartan, "convention": CONVENTION, "result": body}


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def parse_laurent(data: dict) -> Laurent:
    return Laurent.from_json(data)


def parse_vec_key(text: str) -> tuple[int, ...]:
    inner = text.strip()[1:-1]
    return tuple(int(c) for c in inner.split(",")) if inner else ()
