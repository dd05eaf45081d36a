"""Command-line front end: ``aperiodica <command> ...``.

Exit status 0 on success, 1 when the mathematics refuses (bad configuration,
precision exhausted, failed check), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from . import betanum, capcore, selfsim, substderive, wordcomb
from .capcore import CapParams, Window
from .exactnum import TAU, QuadraticReal, qsqrt
from .literals import LiteralError, parse_number
from .morphism import Morphism, fixed_prefix

def _fibonacci():
    params, window = capcore.mechanical_config(1 / TAU, 0, "lower")
    return params.eps, params.eta, window.c, window.length, window.left_closed


PRESETS = {
    # lower mechanical word with slope 1/tau
    "fibonacci": _fibonacci,
    # three-letter word over Z[sqrt 2]
    "ternary-sqrt2": lambda: (-1 / qsqrt(2), 1 / qsqrt(2), QuadraticReal(0), -2 + 2 * qsqrt(2), True),
}


def _number(text: str):
    try:
        return parse_number(text)
    except LiteralError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact(text: str) -> QuadraticReal:
    try:
        return parse_number(text, exact=True)
    except LiteralError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def _add_config(p: argparse.ArgumentParser, preset: bool = True) -> None:
    if preset:
        p.add_argument("--preset", choices=sorted(PRESETS), help="named configuration")
    p.add_argument("--eps", type=_number, help="star-space slope")
    p.add_argument("--eta", type=_number, help="physical slope")
    p.add_argument("--c", type=_number, help="window start (default 0)")
    p.add_argument("--len", dest="length", type=_number, help="window length")
    p.add_argument("--right-closed", action="store_true", help="use (c, c+len] instead of [c, c+len)")


def _config(args, parser) -> tuple[CapParams, Window]:
    if getattr(args, "preset", None):
        eps, eta, c, length, left = PRESETS[args.preset]()
        eps = args.eps if args.eps is not None else eps
        eta = args.eta if args.eta is not None else eta
        c = args.c if args.c is not None else c
        length = args.length if args.length is not None else length
        left = left and not args.right_closed
    else:
        missing = [f for f in ("eps", "eta", "length") if getattr(args, f) is None]
        if missing:
            parser.error("missing " + ", ".join("--" + ("len" if f == "length" else f) for f in missing) + " (or --preset)")
        eps, eta, length = args.eps, args.eta, args.length
        c = args.c if args.c is not None else QuadraticReal(0)
        left = not args.right_closed
    return CapParams(eps, eta), Window(c, length, left)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _s(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_gen(args, parser) -> str:
    params, window = _config(args, parser)
    g = capcore.generate(params, window, args.left, args.right)
    if args.format == "word":
        return g.word + "\n"
    letters = g.left + g.right
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "p", "q", "value", "star", "letter"])
        for i, pt in enumerate(g.points):
            idx = i - g.origin_index
            w.writerow([idx, pt.p, pt.q, pt.value, pt.star, letters[i] if i < len(letters) else ""])
        return buf.getvalue()
    return _dump(
        {
            "eps": _s(params.eps),
            "eta": _s(params.eta),
            "window": _s(window),
            "word": g.word,
            "origin_index": g.origin_index,
            "points": [pt.to_json() for pt in g.points],
        }
    )


def cmd_analyze(args, parser) -> str:
    if args.what == "dn":
        if args.eps is None:
            parser.error("--what dn needs --eps")
        pts = wordcomb.dn_breakpoints(args.eps, args.n)
        return _dump({"eps": _s(args.eps), "n": args.n, "breakpoints": [_s(x) for x in pts]})
    params, window = _config(args, parser)
    n = args.n
    if args.what == "factors":
        fs = wordcomb.factors(params, window, n)
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["factor", "lo", "hi", "density"])
            for word in fs.words:
                lo, hi = fs.cells[word]
                w.writerow([word, lo, hi, fs.density(word)])
            return buf.getvalue()
        return _dump({"n": n, "factors": {w: [_s(a) for a in fs.cells[w]] for w in fs.words}})
    if args.what == "complexity":
        rows = []
        for k in range(1, n + 1):
            rep = wordcomb.complexity(params, window, k)
            rows.append({"n": k, "count": rep.count, "regime": rep.regime, "n0": rep.n0})
        return _dump({"complexity": rows})
    if args.what == "special":
        sp = wordcomb.special_factors(params, window, n, args.side)
        return _dump({"n": n, "side": args.side, "special": [{"word": s.word, "extensions": list(s.extensions)} for s in sp]})
    dens = wordcomb.densities(params, window, n)
    return _dump({"n": n, "densities": {w: _s(r) for w, r in dens.items()}})


def cmd_rauzy(args, parser) -> str:
    params, window = _config(args, parser)
    g = wordcomb.rauzy(params, window, args.n, weighted=not args.no_weights)
    if args.reduce:
        g = wordcomb.reduce(g)
    if args.format == "json":
        return _dump(g.to_json())
    return g.to_dot(weights=not args.no_weights)


def cmd_dn(args, parser) -> str:
    pts = wordcomb.dn_breakpoints(args.eps, args.n)
    out = {"eps": _s(args.eps), "n": args.n, "breakpoints": [_s(x) for x in pts]}
    if args.factors:
        lo = max(-args.eps, 1 + args.eps)
        params = CapParams(args.eps, 1 - args.eps)
        sets = []
        prev = lo
        for x in pts:
            mid = (prev + x) / 2
            sets.append({"length": f"({prev}, {x})", "factors": wordcomb.factors(params, Window(0, mid), args.n).words})
            sets.append({"length": _s(x), "factors": wordcomb.factors(params, Window(0, x), args.n).words})
            prev = x
        out["factor_sets"] = sets
    return _dump(out)


def cmd_beta(args, parser) -> str:
    try:
        basis = betanum.BetaBasis.parse(args.beta)
    except (LiteralError, ValueError) as exc:
        parser.error(f"--beta: {exc}")
    out: dict = {"beta": _s(basis.beta)}
    if basis.profile is not None:
        out["polynomial"] = basis.profile.poly_str()
    if args.expand is not None:
        out["expansion"] = str(betanum.greedy_expand(args.expand, basis, args.depth))
    if args.renyi:
        dev = betanum.renyi_development(basis)
        out["renyi"] = {"preperiod": list(dev.preperiod), "period": list(dev.period), "text": str(dev)}
    if args.admissible is not None:
        out["admissible"] = betanum.parry_admissible(args.admissible, basis)
    if args.integers is not None:
        z = betanum.beta_integers(basis, args.integers)
        out["integers"] = [_s(x) for x in z.points]
        out["gap_word"] = z.word
        out["gaps"] = {a: _s(g) for a, g in z.gap_values.items()}
    if args.subst:
        out["substitution"] = betanum.beta_substitution(basis).to_json()
    if args.equivalence:
        eq = betanum.cap_equivalence(basis, args.points)
        out["equivalence"] = {
            "exists": eq.exists,
            "window": None if eq.window is None else _s(eq.window),
            "checked": eq.checked,
            "agrees": eq.agrees,
            "obstruction": eq.obstruction,
        }
    return _dump(out)


def cmd_selfsim(args, parser) -> str:
    if args.morphism:
        try:
            m = Morphism.parse(args.morphism)
        except ValueError as exc:
            parser.error(f"--morphism: {exc}")
        geo = selfsim.geometric_representation(m, args.points)
        return _dump(
            {
                "matrix": [list(r) for r in geo.matrix.rows],
                "eigenvalue": _s(geo.eigenvalue),
                "lengths": {a: _s(v) for a, v in geo.lengths.items()},
                "self_similar": geo.self_similar,
                "points": [_s(z) for z in geo.points[: args.points + 1]],
            }
        )
    params, window = _config(args, parser)
    out: dict = {}
    check = selfsim.check_selfsimilar_config(params, window)
    out["self_similar"] = check.ok
    out["reason"] = check.reason
    if args.find or args.verify:
        f = selfsim.find_factor(params, window)
        out["factor"] = f.to_json()
        if args.verify:
            rep = selfsim.verify_inclusion(f, params, window, args.verify)
            out["inclusion"] = {"ok": rep.ok, "checked": rep.checked, "witness": None if rep.witness is None else rep.witness.to_json()}
    return _dump(out)


def cmd_subst(args, parser) -> str:
    eta = args.eta if args.eta is not None else None
    eps = args.eps
    c = args.c if args.c is not None else QuadraticReal(0)
    if eta is None:
        eta = eps.conjugate() if eps.conjugate() > 0 else -1 - eps.conjugate()
    params, window = CapParams(eps, eta), Window(c, args.length)
    res = substderive.derive(params, window, gamma_power=args.gamma_power)
    out = res.to_json()
    if args.merge:
        out["merged"] = substderive.merge_letters(res.morphism, args.merge, res.projection).to_json()
    if args.iterate is not None:
        out["iterations"] = [str(substderive.iterate(res.morphism, res.initial, k)) for k in range(args.iterate + 1)]
    if args.verify:
        rep = substderive.verify_projection(res, params, window, args.verify)
        out["verification"] = {"ok": rep.ok, "checked": rep.checked, "mismatch": None if rep.mismatch is None else list(rep.mismatch)}
        if not rep.ok:
            sys.stdout.write(_dump(out))
            raise _DomainError(f"projection mismatch at {rep.mismatch}")
    return _dump(out)


class _DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# golden replay
# ---------------------------------------------------------------------------


def _golden_default() -> dict:
    return json.loads(resources.files("aperiodica").joinpath("golden.json").read_text())


def _ternary():
    e = -1 / qsqrt(2)
    return CapParams(e, -e), Window(0, -2 - 4 * e)


def _check_subst() -> dict:
    params, window = _ternary()
    res = substderive.derive(params, window)
    sq = res.morphism.power(2)
    merged = substderive.merge_letters(res.morphism, 2, res.projection)
    gen = capcore.generate(params, window, 6, 6)
    return {
        "gamma": _s(res.gamma),
        "points": [_s(x) for x in res.points],
        "images": dict(res.morphism.images),
        "jumps": dict(res.jumps),
        "initial": "|".join(res.initial),
        "projection": dict(res.projection),
        "rounds": [str(substderive.iterate(res.morphism, res.initial, k)) for k in range(3)],
        "lattice": [[p.p, p.q] for p in gen.points],
        "coded": gen.word,
        "projected": str(res.word(6)),
        "verified": substderive.verify_projection(res, params, window, 10_000).ok,
        "equal_squares": sq.images["0"] == sq.images["1"],
        "merged": dict(merged.images),
    }


def _check_fibonacci() -> dict:
    params, window = capcore.mechanical_config(1 / TAU, 0, "lower")
    out = {}
    for n in (3, 4, 5):
        out[f"L{n}"] = sorted(wordcomb.factors(params, window, n).renamed(capcore.BINARY))
    for n in (3, 4):
        g = wordcomb.rauzy(params, window, n)
        out[f"rauzy{n}"] = [len(g.vertices), len(g.edges)]
    return out


def _check_dn() -> dict:
    eps = -1 / TAU
    pts = wordcomb.dn_breakpoints(eps, 4)
    params = CapParams(eps, TAU)
    lengths = []
    prev = max(-eps, 1 + eps)
    for x in pts:
        lengths += [(prev + x) / 2, x]
        prev = x
    return {
        "breakpoints": [_s(x) for x in pts],
        "factor_sets": [wordcomb.factors(params, Window(0, ell), 4).words for ell in lengths],
    }


def _check_beta() -> dict:
    out = {}
    for key, basis in (("tau", betanum.BetaBasis(TAU)), ("3,1,-", betanum.BetaBasis.from_poly(3, 1, "-"))):
        eq = betanum.cap_equivalence(basis, 1000)
        z = betanum.beta_integers(basis, 1000)
        out[key] = {
            "renyi": str(betanum.renyi_development(basis)),
            "window": _s(eq.window),
            "agrees": eq.agrees,
            "substitution": str(betanum.beta_substitution(basis)),
            "fixed_point": z.word[:999] == fixed_prefix(betanum.beta_substitution(basis), "A", 999),
        }
    out["2,2,+"] = {"exists": betanum.cap_equivalence(betanum.BetaBasis.from_poly(2, 2, "+")).exists}
    return out


def _check_selfsim() -> dict:
    fib = CapParams(-1 / TAU, TAU), Window(0, 1)
    tern = _ternary()
    f1 = selfsim.find_factor(*fib)
    f2 = selfsim.find_factor(*tern)
    return {
        "fibonacci": _s(f1.gamma),
        "fibonacci_inclusion": selfsim.verify_inclusion(f1, *fib, 1000).ok,
        "ternary": _s(f2.gamma),
        "ternary_inclusion": selfsim.verify_inclusion(f2, *tern, 1000).ok,
    }


CHECKS = {
    "subst": _check_subst,
    "fibonacci": _check_fibonacci,
    "dn": _check_dn,
    "beta": _check_beta,
    "selfsim": _check_selfsim,
}


def _diff(expected, actual, path: str = "") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            sub = f"{path}.{k}" if path else str(k)
            if k not in actual:
                out.append(f"{sub}: missing from computed result")
            elif k not in expected:
                out.append(f"{sub}: not in golden file")
            else:
                out += _diff(expected[k], actual[k], sub)
        return out
    if expected != actual:
        return [f"{path}: expected {json.dumps(expected)}, got {json.dumps(actual)}"]
    return []


def golden_check(only: list[str] | None = None, golden: dict | None = None) -> dict:
    """Recompute every golden example; returns ``{name: list of differences}``."""
    golden = _golden_default() if golden is None else golden
    names = only or list(CHECKS)
    report = {}
    for name in names:
        if name not in golden:
            report[name] = [f"{name}: no golden entry"]
            continue
        report[name] = _diff(golden[name], CHECKS[name]())
    return report


def cmd_golden_check(args, parser) -> str:
    golden = None
    if args.golden:
        try:
            golden = json.loads(Path(args.golden).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise _DomainError(f"cannot read golden file: {exc}") from None
    report = golden_check(args.only, golden)
    summary = {name: {"ok": not diffs, "differences": diffs} for name, diffs in report.items()}
    text = _dump({"checks": summary, "ok": all(v["ok"] for v in summary.values())})
    if not all(v["ok"] for v in summary.values()):
        sys.stdout.write(text)
        failed = ", ".join(k for k, v in summary.items() if not v["ok"])
        raise _DomainError(f"golden mismatch in: {failed}")
    return text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aperiodica", description="Cut-and-project sequences and their words.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("gen", help="generate points and the coded word")
    _add_config(p)
    p.add_argument("--left", type=_natural, default=0, help="points left of the origin")
    p.add_argument("--right", type=_natural, default=20, help="points right of the origin")
    p.add_argument("--format", choices=("json", "csv", "word"), default="json")
    p.set_defaults(command_parser=p, func=cmd_gen)

    p = sub.add_parser("analyze", help="factors, complexity, special factors, densities, D_n")
    _add_config(p)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--what", choices=("factors", "complexity", "special", "density", "dn"), default="factors")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(command_parser=p, func=cmd_analyze)

    p = sub.add_parser("rauzy", help="Rauzy graph as DOT or JSON")
    _add_config(p)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--reduce", action="store_true", help="contract in/out-degree-one vertices")
    p.add_argument("--no-weights", action="store_true")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(command_parser=p, func=cmd_rauzy)

    p = sub.add_parser("dn", help="window lengths where C(n) < 2n+1")
    p.add_argument("--eps", type=_exact, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--factors", action="store_true", help="also list the factor sets")
    p.set_defaults(command_parser=p, func=cmd_dn)

    p = sub.add_parser("beta", help="beta-expansions and beta-integers")
    p.add_argument("--beta", required=True, help='literal, or "m,n,+" / "m,n,-" for x^2 = m x +/- n')
    p.add_argument("--expand", type=_number)
    p.add_argument("--depth", type=_positive, default=32)
    p.add_argument("--renyi", action="store_true")
    p.add_argument("--admissible", metavar="DIGITS")
    p.add_argument("--integers", type=_number, metavar="BOUND")
    p.add_argument("--subst", action="store_true")
    p.add_argument("--equivalence", action="store_true")
    p.add_argument("--points", type=_positive, default=1000)
    p.set_defaults(command_parser=p, func=cmd_beta)

    p = sub.add_parser("selfsim", help="self-similarity factors and geometric representations")
    _add_config(p)
    p.add_argument("--check", action="store_true")
    p.add_argument("--find", action="store_true")
    p.add_argument("--verify", type=_positive, metavar="N")
    p.add_argument("--morphism", help='e.g. "A->AB, B->A" for the geometric representation')
    p.add_argument("--points", type=_positive, default=20)
    p.set_defaults(command_parser=p, func=cmd_selfsim)

    p = sub.add_parser("subst", help="derive a substitution generating the coded word")
    p.add_argument("--eps", type=_exact, required=True)
    p.add_argument("--eta", type=_number)
    p.add_argument("--c", type=_exact)
    p.add_argument("--len", dest="length", type=_exact, required=True)
    p.add_argument("--gamma-power", type=_positive, default=1)
    p.add_argument("--merge", type=_positive, metavar="K", help="merge letters using the K-th power")
    p.add_argument("--iterate", type=_natural, metavar="N")
    p.add_argument("--verify", type=_positive, metavar="N")
    p.set_defaults(command_parser=p, func=cmd_subst)

    p = sub.add_parser("paper-check", help="replay the worked examples against the golden file")
    p.add_argument("--only", action="append", choices=sorted(CHECKS))
    p.add_argument("--golden", metavar="PATH")
    p.set_defaults(command_parser=p, func=cmd_golden_check)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--eps -1/sqrt(2)`` into ``--eps=-1/sqrt(2)``; argparse would read the value as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt and nxt.startswith("-") and not nxt.startswith("--") and len(nxt) > 1:
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        text = args.func(args, args.command_parser)
    except (_DomainError, ValueError, ArithmeticError) as exc:
        print(f"aperiodica: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
