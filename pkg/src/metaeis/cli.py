"""Command-line front end. Every subcommand prints one JSON (or table) report."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .errors import FalsificationError, InputError
from .metaplectic import (build_levi, build_metaplectic, central_twist, component_nonvanishing,
                          dual_group_profile, twisted_weyl_shift, xi_character)
from .reps import branch, check_positive, graded_sym, irreducible_character, nilradical
from .report import dumps, envelope, to_jsonable
from .rootdata import CartanLabel, WeylElement, build_root_datum
from .series import (LocalSystemSpec, constant_term, curve_from_json, eis_product_form, eis_sum_form,
                     sym_power_complex)
from .sl2 import (SL2Context, ThetaModuleElement, eis_expand, fundamental_hecke, hecke_of_irreducible,
                  parity, stalk_table, theta_eigen_check, transport)
from .stalks import Decomposition, enumerate_b_theta, stalk_poincare, zastava_top

TRUNCATION_ENV = "METAEIS_TRUNCATION"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def default_truncation() -> int:
    raw = os.environ.get(TRUNCATION_ENV, "8")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{TRUNCATION_ENV}={raw!r} is not an integer") from None
    if value < 0:
        raise InputError(f"{TRUNCATION_ENV} must be nonnegative")
    return value


def _vec(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise InputError(f"cannot parse integer vector {text!r}") from None


def _nodes(text: str | None, rank: int) -> tuple[int, ...]:
    if not text:
        return ()
    nodes = _vec(text)
    for i in nodes:
        if not 1 <= i <= rank:
            raise InputError(f"Levi node {i} outside 1..{rank}")
    return tuple(i - 1 for i in nodes)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from None


def _datum(args):
    label = CartanLabel.parse(args.type)
    return build_metaplectic(build_root_datum(label), args.n)


def _check_len(vec, k, what):
    if len(vec) != k:
        raise InputError(f"{what} must have {k} coordinates, got {len(vec)}")


def _cells(text: str) -> ThetaModuleElement:
    pairs = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        k, _, r = item.partition(":")
        try:
            pairs.append((int(k), int(r or 0)))
        except ValueError:
            raise InputError(f"cannot parse cell {item!r}; expected k or k:shift") from None
    return ThetaModuleElement.from_pairs(pairs)


def cmd_dual_group(args):
    d = _datum(args)
    prof = dual_group_profile(d)
    body = {
        "n": d.n, "N": d.N, "lambda_sharp": [list(b) for b in d.lambda_sharp], "index": d.index(),
        "delta": list(d.delta), "dual_simple_roots": [list(b) for b in d.dual_simple_roots],
        "dual_cartan": [list(r) for r in d.dual_cartan], "dual_cartan_type": prof["dual_cartan_type"],
        "dual_positive_roots": [list(b) for b in d.dual_positive_roots], "rho_n": list(d.rho_n),
        "cocenter": prof["cocenter"].describe(), "cocenter_data": prof["cocenter"],
        "center_order": prof["center_order"], "xi_report": prof["xi_report"],
        "h_dual": d.base.h_dual, "iota": [list(r) for r in d.base.iota],
        "kappa": [list(r) for r in d.base.kappa],
    }
    if args.nu:
        nu = _vec(args.nu)
        _check_len(nu, d.rank, "--nu")
        body["xi_character"] = xi_character(d, nu)
        body["central_twist"] = central_twist(d, nu)
    if args.weyl is not None:
        word = tuple(i - 1 for i in _vec(args.weyl))
        if any(not 0 <= i < d.rank for i in word):
            raise InputError("Weyl word letters must be node labels 1..rank")
        body["twisted_weyl_shift"] = list(twisted_weyl_shift(d, WeylElement(word)))
    return str(d.base.label), body


def cmd_levi(args):
    d = _datum(args)
    levi = build_levi(d, _nodes(args.levi, d.rank))
    body = {
        "levi_nodes": [i + 1 for i in levi.levi_nodes], "quotient_nodes": [i + 1 for i in levi.outside],
        "lambda_sharp_gp": [list(b) for b in levi.lambda_sharp_gp], "sharp_index": levi.sharp_gp_index(),
        "lambda_m0": [list(b) for b in levi.lambda_m0], "rho_check_m": list(levi.rho_check_m),
        "levi_dual_cartan": levi.levi_dual_cartan(), "levi_type": levi.system.cartan_type(),
        "levi_cocenter": levi.cocenter.describe(),
    }
    if args.theta is not None:
        theta = _vec(args.theta)
        _check_len(theta, len(levi.outside), "--theta")
        body["kappa_m"] = list(levi.kappa_m(theta))
        body["component_nonvanishing"] = component_nonvanishing(levi, theta)
    return str(d.base.label), body


def cmd_branch(args):
    d = _datum(args)
    lam = _vec(args.weight)
    _check_len(lam, d.rank, "--weight")
    levi = build_levi(d, _nodes(args.levi, d.rank))
    pieces = branch(lam, levi)
    body = {
        "weight": list(lam), "levi_nodes": [i + 1 for i in levi.levi_nodes],
        "character": irreducible_character(d, lam),
        "branching": [{"highest_weight": list(nu), "multiplicity": m, "dim": levi.system.weyl_dimension(nu)}
                      for nu, m in sorted(pieces.items())],
    }
    return str(d.base.label), body


def _nil(args):
    d = _datum(args)
    levi = build_levi(d, _nodes(args.levi, d.rank))
    return d, levi, nilradical(levi)


def cmd_nilradical(args):
    d, levi, nil = _nil(args)
    pieces = [{"class": list(p.cls), "weights": [list(w) for w in p.weights], "highest_weight": list(p.highest_weight),
               "dim": p.dim, "image": list(p.image)} for p in nil.pieces]
    positive = all(check_positive(levi, _piece_char(p)) for p in nil.pieces)
    body = {"levi_nodes": [i + 1 for i in levi.levi_nodes], "pieces": pieces, "J_size": len(pieces),
            "levi_cocenter": levi.cocenter.describe(), "pieces_positive": positive}
    return str(d.base.label), body


def _piece_char(p):
    from .reps import Character
    return Character({w: 1 for w in p.weights})


def cmd_sym(args):
    d, levi, nil = _nil(args)
    theta = _vec(args.theta)
    _check_len(theta, len(levi.outside), "--theta")
    if not levi.in_cone(theta):
        raise InputError(f"theta {theta} is outside the positive cone")
    res = graded_sym(nil, theta, args.m)
    body = {"theta": list(theta), "m": args.m, "sym_dim": res["sym_dim"],
            "env_dim": res.get("env_dim", 0),
            "env_character": [{"highest_weight": list(nu), "multiplicity": k} for nu, k in sorted(res["env_character"].items())],
            "kostant_elements": [{"assignment": [{"class": list(c), "n": k} for c, k in e.assignment], "size": e.size}
                                 for e in enumerate_b_theta(nil, theta)]}
    return str(d.base.label), body


def cmd_stalk(args):
    d, levi, nil = _nil(args)
    k = len(levi.outside)
    parts = []
    for chunk in filter(None, (c.strip() for c in (args.parts or "").split(";"))):
        vec, _, mult = chunk.partition(":")
        v = _vec(vec)
        _check_len(v, k, "each part")
        try:
            parts.append((v, int(mult or 1)))
        except ValueError:
            raise InputError(f"cannot parse part {chunk!r}") from None
    dec = Decomposition.of(parts) if parts else Decomposition.empty(k)
    rep = stalk_poincare(nil, dec)
    return str(d.base.label), {"theta": list(dec.theta), "size": dec.size, "report": rep}


def cmd_zastava(args):
    d, levi, nil = _nil(args)
    theta = _vec(args.theta)
    _check_len(theta, len(levi.outside), "--theta")
    res = zastava_top(nil, theta)
    body = {"theta": list(theta), "degree_bound": res["degree_bound"], "vanishes": res["vanishes"],
            "top_dim": res["top_dim"],
            "top_module": [{"highest_weight": list(nu), "multiplicity": k} for nu, k in sorted(res["top_module"].items())]}
    return str(d.base.label), body


def _curve_spec(args):
    curve = curve_from_json(_load_json(args.curve)) if args.curve else None
    spec = None
    if args.local_system:
        spec = LocalSystemSpec.from_json(_load_json(args.local_system), curve)
    return curve, spec


def cmd_eis_series(args):
    from .checks import sl2_eis_window
    curve, spec = _curve_spec(args)
    if curve is None:
        raise InputError("--curve is required")
    spec = spec or LocalSystemSpec.trivial()
    spec.validate(curve)
    h = args.height if args.height is not None else default_truncation()
    d = build_metaplectic(build_root_datum("A1"), args.n)
    nil = nilradical(build_levi(d, ()))
    cl = sl2_eis_window(args.n, h)
    prod = eis_product_form(cl, nil, curve, spec, h)
    rows = []
    agree = True
    for mu in range(h + 1):
        a = prod.coeff((mu,))
        b = eis_sum_form((mu,), cl.coeff, nil, curve, spec)
        agree &= a == b
        rows.append({"mu": mu, "product_form": a, "sum_form": b})
    body = {"n": args.n, "q": curve.q, "g": curve.g, "zeta_numerator": list(curve.zeta_numerator),
            "height": h, "coefficients": rows, "agree": agree}
    return "A1", body


def cmd_constant_term(args):
    curve, spec = _curve_spec(args)
    if curve is not None and curve.g != args.g:
        raise InputError(f"--g {args.g} disagrees with the curve file genus {curve.g}")
    res = constant_term(args.d, args.d1, args.n, args.g, spec, curve)
    return "A1", res


def cmd_sl2(args):
    ctx = SL2Context(args.n)
    k_max = args.kmax if getattr(args, "kmax", None) is not None else default_truncation()
    if args.sl2_cmd == "hecke":
        elt = _cells(args.cells)
        out = fundamental_hecke(ctx, elt) if args.m == 1 else hecke_of_irreducible(ctx, args.m, elt)
        body = {"n": ctx.n, "e": ctx.e, "m": args.m, "input": elt, "output": out}
    elif args.sl2_cmd == "eigen":
        res = theta_eigen_check(ctx, args.m)
        body = {"n": ctx.n, "m": args.m, "aut": res["aut"], "eigen_poly": str(res["eigen_poly"]),
                "eigen_poly_coefficients": res["eigen_poly"], "holds": res["holds"]}
    elif args.sl2_cmd == "eis":
        out = eis_expand(ctx, args.d, args.nontrivial, k_max)
        body = {"n": ctx.n, "d": args.d, "nontrivial": args.nontrivial, "k_max": k_max, "expansion": out,
                "parity": parity(ctx, args.d)}
    elif args.sl2_cmd == "stalks":
        r_max = args.rmax if args.rmax is not None else 4 * ctx.n
        rows = []
        for r in range(args.d + 1, r_max + 1):
            res = stalk_table(ctx, args.d, r)
            rows.append({"r": r, **res})
        body = {"n": ctx.n, "d": args.d, "rows": rows}
    else:
        target = SL2Context(args.m)
        elt = _cells(args.cells)
        out = transport(ctx, target, elt)
        body = {"n": ctx.n, "m": target.n, "input": elt, "output": out}
    return "A1", body


def cmd_selftest(args):
    names = set(args.suite) if args.suite else None
    res = checks.run_all(names)
    summary = {name: {"pass": not fails, "failures": fails[:20]} for name, fails in res["results"].items()}
    body = {"suites": summary, "checked_values": res["checked_values"],
            "all_pass": all(v["pass"] for v in summary.values())}
    return None, body


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metaeis", description="Metaplectic Eisenstein series, decategorified.")
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(sp, levi=False):
        sp.add_argument("--type", required=True, help="Cartan label such as A2 or G2")
        sp.add_argument("--n", type=int, required=True, help="cover degree")
        if levi:
            sp.add_argument("--levi", default="", help="comma-separated Levi nodes (1-based)")

    sp = sub.add_parser("dual-group")
    group_args(sp)
    sp.add_argument("--nu", help="sublattice vector for the central character")
    sp.add_argument("--weyl", help="Weyl word (1-based letters) for the twisted shift")
    sp.set_defaults(func=cmd_dual_group)

    sp = sub.add_parser("levi")
    group_args(sp, levi=True)
    sp.add_argument("--theta")
    sp.set_defaults(func=cmd_levi)

    sp = sub.add_parser("branch")
    group_args(sp, levi=True)
    sp.add_argument("--weight", required=True)
    sp.set_defaults(func=cmd_branch)

    sp = sub.add_parser("nilradical")
    group_args(sp, levi=True)
    sp.set_defaults(func=cmd_nilradical)

    sp = sub.add_parser("sym")
    group_args(sp, levi=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.set_defaults(func=cmd_sym)

    sp = sub.add_parser("stalk")
    group_args(sp, levi=True)
    sp.add_argument("--parts", default="", help="parts as 'v1,v2:mult;...'")
    sp.set_defaults(func=cmd_stalk)

    sp = sub.add_parser("zastava")
    group_args(sp, levi=True)
    sp.add_argument("--theta", required=True)
    sp.set_defaults(func=cmd_zastava)

    sp = sub.add_parser("eis-series")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--local-system")
    sp.add_argument("--height", type=int)
    sp.set_defaults(func=cmd_eis_series)

    sp = sub.add_parser("constant-term")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--d1", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", type=int, default=0)
    sp.add_argument("--curve")
    sp.add_argument("--local-system")
    sp.set_defaults(func=cmd_constant_term)

    sp = sub.add_parser("sl2")
    s2 = sp.add_subparsers(dest="sl2_cmd", required=True, parser_class=_Parser)
    h = s2.add_parser("hecke")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--m", type=int, default=1)
    h.add_argument("--cells", default="0", help="cells as 'k:shift,...'")
    ei = s2.add_parser("eigen")
    ei.add_argument("--n", type=int, required=True)
    ei.add_argument("--m", type=int, default=1)
    es = s2.add_parser("eis")
    es.add_argument("--n", type=int, required=True)
    es.add_argument("--d", type=int, required=True)
    es.add_argument("--nontrivial", action="store_true")
    es.add_argument("--kmax", type=int)
    st = s2.add_parser("stalks")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--d", type=int, required=True)
    st.add_argument("--rmax", type=int)
    tr = s2.add_parser("transport")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--m", type=int, required=True)
    tr.add_argument("--cells", default="0")
    sp.set_defaults(func=cmd_sl2)

    sp = sub.add_parser("selftest")
    sp.add_argument("--suite", action="append", choices=sorted(checks.SUITES))
    sp.set_defaults(func=cmd_selftest)
    return p


def _table(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += _table(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            lines += _table(x, f"{prefix}{i}.")
    else:
        lines.append(f"{prefix[:-1]}: {json.dumps(obj, sort_keys=True)}")
    return lines


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cartan, body = args.func(args)
        report = envelope(args.command if args.command != "sl2" else f"sl2 {args.sl2_cmd}", cartan, body)
        if args.format == "table":
            out.write("\n".join(_table(to_jsonable(report))) + "\n")
        else:
            out.write(dumps(report))
        if args.command == "selftest" and not body["all_pass"]:
            return 2
        return 0
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except (FalsificationError, AssertionError) as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
