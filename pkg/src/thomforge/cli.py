"""Batch command line: parse presentation files, dispatch, render text/JSON.

Exit codes: 0 success, 1 bad input (unreadable file, parse error, violated
operation precondition), 2 mathematically meaningful negative verdict
(invalid presentation under `validate`, formality obstruction, undefined
Massey product, impure Euler class), so batch studies can script against
the distinction.

Output is deterministic: a fixed seed (``--seed``, default 0) is recorded in
every JSON document and drives nothing else unless a subcommand samples.
The THOMFORGE_TRUNCATE environment variable supplies a default cutoff when
``--up-to`` is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .algebra import CdgaPresentation
from .cohomology import cohomology, h_block
from .errors import ParseError, ThomforgeError, ValidationError
from .grammar import make_cdga, parse_expression, presentation_to_json, presentation_to_text
from .hodge import check_euler_purity, thom_mhs, weights_from_splitting
from .massey import AlgebraOps, contains_zero, thom_triple_correspondence, triple_massey
from .minimal import minimal_model
from .quillen import euler_dual_map, quadratic_dual_dgl, quillen_thom_model
from .thom import ring_table, thom_cohomology, thom_model
from .weight import formality_certificate, positivity, weighted_cohomology

SCHEMA = "thomforge/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FINDING = 2


@dataclass
class RunConfig:
    subcommand: str
    fmt: str
    seed: int
    up_to: int | None


def _default_up_to(args):
    if getattr(args, "up_to", None) is not None:
        return args.up_to
    env = os.environ.get("THOMFORGE_TRUNCATE")
    return int(env) if env else None


def _load(path, up_to_hint=None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}")
    return make_cdga(text)


def _emit(out, payload, text_lines, fmt):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2, default=str))
        out.write("\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def _betti_lines(report, up_to, label="H"):
    lines = []
    for n in range(up_to + 1):
        dim = report.dims.get(n, 0)
        reps = report.representatives.get(n, [])
        rep_str = ", ".join(f"[{r}]" for r in reps)
        suffix = f"  reps: {rep_str}" if reps else ""
        weights = ""
        if report.weight_dims is not None:
            per = report.weight_dims.get(n) or {}
            if per:
                weights = "  weights: " + " ".join(f"{p}:{d}" for p, d in sorted(per.items()))
        lines.append(f"{label}^{n}: dim {dim}{suffix}{weights}")
    return lines


def _report_payload(report, up_to):
    degrees = []
    for n in range(up_to + 1):
        entry = {
            "degree": n,
            "dim": report.dims.get(n, 0),
            "representatives": [str(r) for r in report.representatives.get(n, [])],
        }
        if report.weight_dims is not None:
            entry["weights"] = {str(p): d for p, d in (report.weight_dims.get(n) or {}).items()}
        degrees.append(entry)
    return degrees


def cmd_validate(args, out, cfg):
    try:
        pres = _load(args.input)
    except ValidationError as exc:
        _emit(out, _base_payload(cfg) | {"valid": False, "error": str(exc)}, [f"INVALID: {exc}"], cfg.fmt)
        return EXIT_FINDING
    lines = [f"{args.input}: d^2 = 0 OK ({len(pres.generators)} generators, truncate {pres.truncation_degree})"]
    payload = _base_payload(cfg) | {
        "valid": True,
        "presentation": presentation_to_json(pres),
    }
    if pres.weighted:
        pos = positivity(pres)
        lines.append(f"weights: compatible, positive: {'yes' if pos else 'no'}")
        payload["positive_weights"] = pos
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def cmd_cohomology(args, out, cfg):
    pres = _load(args.input)
    up_to = cfg.up_to if cfg.up_to is not None else pres.truncation_degree - 1
    report = weighted_cohomology(pres, up_to) if pres.weighted else cohomology(pres, up_to)
    lines = [f"cohomology of {args.input} up to degree {up_to}"]
    lines += _betti_lines(report, up_to)
    payload = _base_payload(cfg) | {"degrees": _report_payload(report, up_to)}
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def _parse_euler(pres, text):
    element, _ = parse_expression(text, pres)
    return element


def cmd_thom(args, out, cfg):
    pres = _load(args.base)
    e = _parse_euler(pres, args.euler)
    model = thom_model(pres, e, args.rank)
    up_to = cfg.up_to if cfg.up_to is not None else model.truncation_degree - 1
    up_to = min(up_to, model.truncation_degree - 1)
    report = thom_cohomology(model, up_to)
    lines = [f"Thom model: base {args.base}, e = {e}, rank {args.rank}"]
    lines += _betti_lines(report, up_to, label="H~")
    table = ring_table(model, up_to)
    lines.append("ring table (nonzero products of representatives):")
    products = []
    for (k, i, l, j), coords in sorted(table.items()):
        if not coords:
            continue
        terms = " + ".join(
            f"{c}*[{report.representatives[k + l][m]}]" for m, c in sorted(coords.items())
        )
        lines.append(f"  [{report.representatives[k][i]}] * [{report.representatives[l][j]}] = {terms}")
        products.append(
            {
                "left": [k, i],
                "right": [l, j],
                "value": {str(m): str(c) for m, c in sorted(coords.items())},
            }
        )
    payload = _base_payload(cfg) | {
        "euler": str(e),
        "rank": args.rank,
        "degrees": _report_payload(report, up_to),
        "ring_table": products,
    }
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def cmd_formality(args, out, cfg):
    pres = _load(args.input)
    if not pres.weighted:
        raise ValidationError("weight_violation", "formality checks need a weighted presentation")
    up_to = cfg.up_to if cfg.up_to is not None else pres.truncation_degree - 2
    cert = formality_certificate(pres, up_to)
    payload = _base_payload(cfg) | {"pure": cert.pure, "up_to": up_to}
    if cert.pure:
        lines = [
            f"formality certificate issued up to degree {up_to}",
            f"truncation inclusion quasi-iso: {'yes' if cert.inclusion_report.ok else 'NO'}",
            f"projection to cohomology quasi-iso: {'yes' if cert.projection_report.ok else 'NO'}",
        ]
        payload["inclusion_ok"] = cert.inclusion_report.ok
        payload["projection_ok"] = cert.projection_report.ok
        _emit(out, payload, lines, cfg.fmt)
        return EXIT_OK if cert.ok else EXIT_FINDING
    lines = ["formality obstructed; impure cohomology blocks (degree, weight, dim):"]
    for (n, p, dim) in cert.obstructions:
        lines.append(f"  ({n}, {p}): dim {dim}")
    payload["obstructions"] = [{"degree": n, "weight": p, "dim": d} for n, p, d in cert.obstructions]
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_FINDING


def cmd_minimal_model(args, out, cfg):
    pres = _load(args.input)
    result = minimal_model(pres, args.up_to)
    lines = [f"minimal model up to degree {args.up_to}"]
    lines.append(presentation_to_text(result.model).rstrip("\n"))
    lines.append("morphism images:")
    for g in result.model.generators:
        lines.append(f"  {g.name} -> {result.morphism.images[g.name]}")
    lines.append(f"quasi-isomorphism up to {args.up_to}: {'yes' if result.quasi_iso.ok else 'NO'}")
    lines.append(f"injective on H^{args.up_to + 1}: {'yes' if result.injective_above else 'NO'}")
    payload = _base_payload(cfg) | {
        "model": presentation_to_json(result.model),
        "images": {g.name: str(result.morphism.images[g.name]) for g in result.model.generators},
        "quasi_iso": result.quasi_iso.ok,
        "injective_above": result.injective_above,
        "stages": [
            {"degree": s.degree, "added": s.added, "iterations": s.iterations, "capped": s.capped}
            for s in result.stages
        ],
    }
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK if (result.quasi_iso.ok and not result.capped) else EXIT_FINDING


def cmd_massey(args, out, cfg):
    pres = _load(args.input)
    classes = []
    for text in args.classes:
        element, _ = parse_expression(text, pres)
        classes.append(element)
    if len(classes) != 3:
        raise ValidationError("degree_mismatch", "exactly three classes are required")
    x, y, z = classes
    if args.thom:
        if args.euler is None:
            raise ValidationError("euler_inhomogeneous", "--thom needs --euler")
        e = _parse_euler(pres, args.euler)
        rank = args.rank if args.rank is not None else (0 if e.is_zero() else e.degree)
        model = thom_model(pres, e, rank)
        product = triple_massey(model, model.suspend(x), model.suspend(y), model.suspend(z))
        correspondence = thom_triple_correspondence(pres, e, x, y, z)
    else:
        product = triple_massey(pres, x, y, z)
        correspondence = None
    payload = _base_payload(cfg) | {"defined": product.defined}
    if not product.defined:
        lines = [f"Massey product undefined: {product.obstruction}"]
        payload["obstruction"] = product.obstruction
        _emit(out, payload, lines, cfg.fmt)
        return EXIT_FINDING
    zero = contains_zero(product)
    lines = [
        f"Massey product defined in degree {product.degree}",
        f"representative: {product.representative}",
        f"indeterminacy dimension: {product.indeterminacy_dim} (inside H of dim {product.hdim})",
        f"contains zero: {'yes' if zero else 'no'}",
    ]
    payload |= {
        "degree": product.degree,
        "representative": str(product.representative),
        "indeterminacy_dim": product.indeterminacy_dim,
        "hdim": product.hdim,
        "contains_zero": zero,
    }
    if correspondence is not None:
        lines.append(f"Thom correspondence consistent: {'yes' if correspondence.ok else 'NO'}")
        payload["thom_correspondence_ok"] = correspondence.ok
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def cmd_quillen(args, out, cfg):
    ring = _load(args.cohomology)
    for g in ring.generators:
        if not ring.differential_of(g.name).is_zero():
            raise ValidationError("non_quadratic", "the cohomology input must have zero differential")
    e = _parse_euler(ring, args.euler)
    rank = args.rank if args.rank is not None else (0 if e.is_zero() else e.degree)
    up_to = cfg.up_to if cfg.up_to is not None else ring.truncation_degree - 1
    base_dgl = quadratic_dual_dgl(ring, up_to)
    phi = euler_dual_map(ring, e)
    model = quillen_thom_model(base_dgl, phi, rank)
    lines = [f"Lie model of the Thom space (rank {rank}, e = {e})"]
    lines.append("generators:")
    for g in model.generators:
        lines.append(f"  {g.name} : degree {g.degree}")
    lines.append("differential:")
    any_terms = False
    for g in model.generators:
        terms = (model.quadratic or {}).get(g.name, [])
        if terms:
            any_terms = True
            body = " + ".join(f"{c}*[{a},{b}]" for c, a, b in terms)
            lines.append(f"  d({g.name}) = {body}")
    if not any_terms:
        lines.append("  d = 0")
    payload = _base_payload(cfg) | {
        "rank": rank,
        "euler": str(e),
        "generators": [{"name": g.name, "degree": g.degree} for g in model.generators],
        "differential": {
            g.name: [[str(c), a, b] for c, a, b in (model.quadratic or {}).get(g.name, [])]
            for g in model.generators
            if (model.quadratic or {}).get(g.name)
        },
    }
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def cmd_hodge_thom(args, out, cfg):
    pres = _load(args.input)
    e = _parse_euler(pres, args.euler)
    k = args.chern_rank
    pure = check_euler_purity(pres, e, k)
    if not pure:
        payload = _base_payload(cfg) | {"pure": False}
        _emit(out, payload, [f"Euler class is not pure of type ({k},{k}); no mixed-Hodge Thom model"], cfg.fmt)
        return EXIT_FINDING
    filtered = thom_mhs(pres, e, k)
    sw = weights_from_splitting(pres)
    up_to = cfg.up_to if cfg.up_to is not None else min(filtered.model.truncation_degree, 2 * k + 6)
    lines = [f"mixed-Hodge Thom model: rank {k} twist, e = {e}"]
    lines.append(f"base splitting positive: {'yes' if sw.positive else 'no'}; smooth bound: {'yes' if sw.smooth_bound else 'no'}")
    rows = []
    for n in range(2 * k, up_to + 1):
        for powers in pres.basis(n - 2 * k):
            t = filtered.type_of(powers)
            rows.append((n, pres.powers_str(powers), t))
    for n, mono, t in rows:
        lines.append(f"  degree {n}: w[{mono}] type ({t[0]},{t[1]}) weight {t[0] + t[1]}")
    payload = _base_payload(cfg) | {
        "pure": True,
        "chern_rank": k,
        "positive": sw.positive,
        "smooth_bound": sw.smooth_bound,
        "classes": [
            {"degree": n, "class": mono, "type": list(t), "weight": t[0] + t[1]} for n, mono, t in rows
        ],
    }
    _emit(out, payload, lines, cfg.fmt)
    return EXIT_OK


def _base_payload(cfg):
    return {"schema": SCHEMA, "command": cfg.subcommand, "seed": cfg.seed}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thomforge",
        description="exact computations with finitely presented cdgas, Thom models, "
        "weight decompositions, Massey products, and Lie models",
    )
    parser.add_argument("--version", action="version", version=f"thomforge {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, up_to=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        if up_to:
            p.add_argument("--up-to", dest="up_to", type=int, default=None)

    p = sub.add_parser("validate", help="parse and validate a presentation file")
    p.add_argument("input")
    common(p, up_to=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="Betti table with representatives")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("thom", help="Betti and ring table of a Thom model")
    p.add_argument("--base", required=True)
    p.add_argument("--euler", required=True)
    p.add_argument("--rank", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_thom)

    p = sub.add_parser("formality", help="purity certificate or obstruction list")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_formality)

    p = sub.add_parser("minimal-model", help="minimal model of a presentation")
    p.add_argument("--input", required=True)
    p.add_argument("--up-to", dest="up_to", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_minimal_model)

    p = sub.add_parser("massey", help="triple Massey product with indeterminacy")
    p.add_argument("--input", required=True)
    p.add_argument("--classes", nargs=3, required=True)
    p.add_argument("--thom", action="store_true")
    p.add_argument("--euler")
    p.add_argument("--rank", type=int)
    common(p, up_to=False)
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("quillen", help="Lie model of a Thom space over a formal base")
    p.add_argument("--cohomology", required=True)
    p.add_argument("--euler", required=True)
    p.add_argument("--rank", type=int)
    common(p)
    p.set_defaults(func=cmd_quillen)

    p = sub.add_parser("hodge-thom", help="Tate-twisted bigrading of a Thom model")
    p.add_argument("--input", required=True)
    p.add_argument("--euler", required=True)
    p.add_argument("--chern-rank", dest="chern_rank", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_hodge_thom)

    return parser


def run(argv, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    cfg = RunConfig(
        subcommand=args.subcommand,
        fmt=args.format,
        seed=args.seed,
        up_to=_default_up_to(args),
    )
    try:
        return args.func(args, out, cfg)
    except ParseError as exc:
        out.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except ValidationError as exc:
        out.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except ThomforgeError as exc:
        out.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
