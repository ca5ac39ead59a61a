"""Command-line driver.

Exit codes: 0 the command completed with a positive result, 1 the result is
a hypothesis or feasibility failure (the full report is still printed),
2 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .deriv import ChainError, DegreeCap, extend, restricts_to
from .dsl import DerivationSpec, ParseError, default_names, format_spec, parse_polynomial, parse_polynomials, parse_spec
from .engine import (
    FAMILIES,
    ClassificationError,
    ClassificationReport,
    DeskBounds,
    FamilyError,
    classify,
)
from .isotropy import PolyMap, commute_check, enumerate_commuting_triangular
from .oracles import OracleVerdict, image_membership, kernel_into_subring, shamsuddin_obstruction, subring_image_scan
from .poly import ArityError, Polynomial, format_poly
from .report import Report, input_digest
from .starcone import ZeroImageError, candidate_matrices, check_star, parse_matrix


class InputError(ValueError):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_fraction(t) for t in text.split(",") if t.strip())


def _cap(text: str) -> DegreeCap:
    if text == "inf":
        return DegreeCap(None)
    try:
        return DegreeCap(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cap must be a nonnegative integer or 'inf': {text!r}") from None


class _Context:
    """Loaded inputs plus the raw texts that go into the report digest."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.files: dict[str, str] = {}

    def read(self, path: str) -> str:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.files[Path(path).name] = text
        return text

    def spec(self) -> DerivationSpec:
        if self.args.spec is None:
            raise InputError("--spec is required for this command")
        return parse_spec(self.read(self.args.spec))


def _poly(p: Polynomial, names) -> str:
    return format_poly(p, names[: p.arity])


def _verdict(v: OracleVerdict, names) -> dict:
    out = {"status": v.status, "bound": v.bound}
    if v.found:
        out["witness"] = _poly(v.witness, names)
        for k, x in v.extras.items():
            out[k] = _poly(x, names)
    return out


def _map_text(rho: PolyMap, names) -> str:
    return "(" + ", ".join(_poly(p, names) for p in rho.images) + ")"


def cmd_derive(ctx: _Context):
    spec = ctx.spec()
    chain = spec.chain()
    dn = extend(chain)
    names = spec.names
    result = {
        "ring": ", ".join(names),
        "base_arity": chain.base_arity,
        "images": {name: _poly(h, names) for name, h in zip(names, dn.images)},
        "restricts_to_base": restricts_to(dn, chain.base),
    }
    if ctx.args.apply is not None:
        f = parse_polynomial(ctx.args.apply, names)
        result["apply"] = {"input": _poly(f, names), "image": _poly(dn(f), names)}
    return result, 0


def cmd_check_star(ctx: _Context):
    if ctx.args.matrix is not None:
        verdict = check_star(parse_matrix(ctx.args.matrix))
        result = {"matrix": ctx.args.matrix.strip(), "holds": verdict.holds,
                  "witness": " ".join(map(str, verdict.witness)) if verdict.witness else None}
        return result, 0 if verdict.holds else 1
    spec = ctx.spec()
    try:
        cands = candidate_matrices(spec.base)
    except ZeroImageError as exc:
        return {"holds": False, "reason": str(exc)}, 1
    rows, first = [], None
    for cand in cands:
        v = check_star(cand)
        rows.append({"matrix": str(cand), "holds": v.holds,
                     "witness": " ".join(map(str, v.witness)) if v.witness else None})
        if v.holds and first is None:
            first = str(cand)
    return {"candidates": rows, "holds": first is not None, "star_matrix": first}, 0 if first else 1


def _derivation(ctx: _Context, spec: DerivationSpec):
    chain = spec.chain()
    if ctx.args.base:
        return chain.base, spec.base_names
    return extend(chain), spec.names


def cmd_image_membership(ctx: _Context):
    spec = ctx.spec()
    d, names = _derivation(ctx, spec)
    target = parse_polynomial(ctx.args.target, names)
    v = image_membership(d, target, ctx.args.bound)
    return {"target": _poly(target, names), "verdict": _verdict(v, names)}, 0 if v.found else 1


def cmd_no_units(ctx: _Context):
    spec = ctx.spec()
    chain = spec.chain()
    names = spec.names
    var = ctx.args.var
    if var not in names:
        raise InputError(f"unknown variable {var!r}")
    j = names.index(var) + 1
    if j <= chain.base_arity:
        cap = ctx.args.cap if ctx.args.cap is not None else spec.cap
        v = subring_image_scan(chain.base, j, cap, ctx.args.bound)
        result = {"mode": "base-image", "variable": var, "cap": str(cap), "verdict": _verdict(v, names)}
    else:
        h_bound = ctx.args.image_bound if ctx.args.image_bound is not None else ctx.args.bound
        v = kernel_into_subring(extend(chain), j, ctx.args.bound, h_bound, base_arity=chain.base_arity)
        result = {"mode": "extension-kernel", "variable": var, "image_bound": h_bound, "verdict": _verdict(v, names)}
    return result, 1 if v.found else 0


def cmd_shamsuddin(ctx: _Context):
    spec = ctx.spec()
    d, names = _derivation(ctx, spec)
    a = parse_polynomial(ctx.args.a, names)
    b = parse_polynomial(ctx.args.b, names)
    v = shamsuddin_obstruction(d, a, b, ctx.args.bound)
    result = {"a": _poly(a, names), "b": _poly(b, names), "verdict": _verdict(v, names),
              "extension_simple_obstructed": v.found}
    return result, 1 if v.found else 0


def cmd_commute(ctx: _Context):
    spec = ctx.spec()
    d, names = _derivation(ctx, spec)
    images = parse_polynomials(ctx.args.map, names)
    if len(images) != len(names):
        raise InputError(f"map needs {len(names)} images, got {len(images)}")
    rho = PolyMap(tuple(images))
    res = commute_check(rho, d)
    result = {"map": _map_text(rho, names), "commutes": res.commutes}
    if not res.commutes:
        result["first_mismatch"] = names[res.index - 1]
        result["difference"] = _poly(res.difference, names)
    return result, 0 if res.commutes else 1


def cmd_isotropy_search(ctx: _Context):
    spec = ctx.spec()
    d, names = _derivation(ctx, spec)
    coeffs = ctx.args.coeffs
    if 0 not in coeffs or 1 not in coeffs:
        raise InputError("the coefficient set must contain 0 and 1")
    maps = enumerate_commuting_triangular(d, ctx.args.tail_degree, coeffs)
    rendered = [_map_text(m.as_map(), names) for m in maps]
    only = all(m.as_map().translation_constant() is not None for m in maps)
    result = {"tail_degree": ctx.args.tail_degree, "coeffs": ",".join(str(c) for c in sorted(set(coeffs))),
              "maps": rendered, "only_last_variable_translations": only}
    return result, 0 if only else 1


def _family(ctx: _Context):
    a = ctx.args
    links = [t for t in (a.links or "").split(";") if t.strip()]

    def need(name):
        value = getattr(a, name)
        if value is None:
            raise InputError(f"--{name} is required for family {a.family}")
        return value

    if a.family == "cor212":
        return FAMILIES[a.family](need("m"), a.g if a.g is not None else "1", need("n"), links)
    return FAMILIES[a.family](need("m1"), need("m2"), need("n"), links)


def _bounds(ctx: _Context) -> DeskBounds:
    a = ctx.args
    return DeskBounds(oracle=a.bound, tail_degree=a.tail_degree, coeffs=tuple(sorted(set(a.coeffs))),
                      samples=a.samples)


def _classification(rep: ClassificationReport, names) -> dict:
    return {
        "chain": {"base_arity": rep.chain.base_arity, "n": rep.chain.arity, "cap": str(rep.chain.cap),
                  "images": {nm: _poly(h, names) for nm, h in zip(names, extend(rep.chain).images)}},
        "hypotheses": [
            {"which": s.which, "method": s.method, "outcome": s.outcome, "bound": s.bound,
             "citation": s.citation, "detail": s.detail}
            for s in rep.statuses
        ],
        "star_matrix": str(rep.star_matrix) if rep.star_matrix else None,
        "isotropy_conclusion": rep.isotropy_conclusion,
        "simplicity_conclusion": rep.simplicity_conclusion,
        "simplicity_witness": _poly(rep.simplicity_witness, names) if rep.simplicity_witness else None,
        "certification_level": rep.certification_level,
        "desk_bounds": str(rep.bounds),
        "confirmations": {
            "translation_family": rep.translation_check,
            "translation_samples": ",".join(str(c) for c in rep.bounds.samples),
            "samples_certify_all_c": rep.translation_samples_certify,
            "commuting_triangular_maps": [_map_text(m.as_map(), names) for m in rep.commuting_maps],
            "only_last_variable_translations": rep.enumeration_only_translations,
            "link_simplicity": [
                {"variable": names[rep.chain.base_arity + c.link], **_verdict(c.verdict, names)}
                for c in rep.link_checks.checks
            ],
        },
        "notes": rep.notes,
    }


def cmd_classify(ctx: _Context):
    if ctx.args.family:
        fam = _family(ctx)
        spec, notes = fam.spec(), fam.notes
    else:
        spec, notes = ctx.spec(), ()
    rep = classify(spec.chain(), spec.flags, _bounds(ctx), notes)
    result = _classification(rep, spec.names)
    return result, 0 if rep.isotropy_conclusion == "TranslationsInXn" else 1


def cmd_family(ctx: _Context):
    if not ctx.args.family:
        raise InputError("--family is required")
    fam = _family(ctx)
    text = format_spec(fam.spec())
    if ctx.args.output:
        Path(ctx.args.output).write_text(text)
    return {"family": fam.name, "params": fam.params, "spec": text.splitlines(), "notes": list(fam.notes)}, 0


COMMANDS = {
    "derive": cmd_derive,
    "check-star": cmd_check_star,
    "image-membership": cmd_image_membership,
    "no-units": cmd_no_units,
    "shamsuddin": cmd_shamsuddin,
    "commute": cmd_commute,
    "isotropy-search": cmd_isotropy_search,
    "classify": cmd_classify,
    "family": cmd_family,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="derivbench", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("kv", "json"), default="kv")
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_arg(p, required=False, base=True):
        p.add_argument("--spec", required=required, help="derivation spec file")
        if base:
            p.add_argument("--base", action="store_true", help="use the base derivation instead of the extension")

    def family_args(p):
        p.add_argument("--family", choices=sorted(FAMILIES))
        p.add_argument("--m1", type=int)
        p.add_argument("--m2", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--g", help="polynomial in x1 (cor212)")
        p.add_argument("--n", type=int)
        p.add_argument("--links", help="links separated by ';', e.g. \"x2; x3^2\"")

    p = sub.add_parser("derive", help="print the (extended) derivation", parents=[common])
    spec_arg(p, required=True, base=False)
    p.add_argument("--apply", help="polynomial to apply the derivation to")

    p = sub.add_parser("check-star", help="cone-triviality test on an exponent matrix", parents=[common])
    p.add_argument("--matrix", help='rows separated by ";", e.g. "2 1; 3 0"')
    spec_arg(p, base=False)

    p = sub.add_parser("image-membership", help="is the target d(r) for some r of bounded degree?", parents=[common])
    spec_arg(p, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, default=8)

    p = sub.add_parser("no-units", help="bounded search for images in k[x_j]", parents=[common])
    spec_arg(p, required=True, base=False)
    p.add_argument("--var", required=True)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--cap", type=_cap)
    p.add_argument("--image-bound", type=int)

    p = sub.add_parser("shamsuddin", help="search r with d(r) = a*r + b", parents=[common])
    spec_arg(p, required=True)
    p.add_argument("--a", default="0")
    p.add_argument("--b", required=True)
    p.add_argument("--bound", type=int, default=8)

    p = sub.add_parser("commute", help="does a polynomial map commute with d?", parents=[common])
    spec_arg(p, required=True)
    p.add_argument("--map", required=True, help='comma-separated images, e.g. "x1, x2, x3 + 5"')

    p = sub.add_parser("isotropy-search", help="commuting triangular maps over a finite grid", parents=[common])
    spec_arg(p, required=True)
    p.add_argument("--tail-degree", type=int, default=2)
    p.add_argument("--coeffs", type=_fraction_list, default=(Fraction(-1), Fraction(0), Fraction(1)))

    for name, helptext in (("classify", "run the full classification"), ("family", "build a built-in family")):
        p = sub.add_parser(name, help=helptext, parents=[common])
        family_args(p)
        if name == "classify":
            spec_arg(p, base=False)
            p.add_argument("--bound", type=int, default=8)
            p.add_argument("--tail-degree", type=int, default=2)
            p.add_argument("--coeffs", type=_fraction_list, default=(Fraction(-1), Fraction(0), Fraction(1)))
            p.add_argument("--samples", type=_fraction_list,
                           default=(Fraction(0), Fraction(1), Fraction(-1), Fraction(2)))
        else:
            p.add_argument("--output", help="also write the spec file here")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    ctx = _Context(args)
    try:
        result, code = COMMANDS[args.command](ctx)
    except (InputError, ParseError, FamilyError, ChainError, ClassificationError, ArityError,
            IndexError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    params = {k: v for k, v in vars(args).items() if k not in ("format", "output")}
    report = Report(args.command, input_digest(args.command, params, ctx.files), result)
    stdout.write(report.render(args.format))
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
