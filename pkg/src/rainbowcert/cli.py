"""Command line: certify, render, batch, verify.

Exit codes: 0 certified, 2 inconclusive (or a certificate that fails to verify),
3 input error.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .braid import parse_braid
from .certificate import verify
from .diagram import rainbow_closure_diagram
from .diagram_io import load_diagram, load_json
from .errors import CertError, InputError
from .pipeline import Config, batch, certify, explain, summary_table
from .render import render_svg

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 2, 3


def _source(args):
    if args.braid:
        return parse_braid(args.braid)
    text = Path(args.diagram).read_text(encoding="utf-8")
    return load_json(text) if text.lstrip().startswith("{") else load_diagram(text)


def _add_input(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid", help='e.g. "p=2;1,1,1"')
    g.add_argument("--diagram", help="diagram file (.ldg text or JSON)")


def _config(args):
    return Config(
        target=args.target,
        epsilon=None if args.epsilon is None else Fraction(args.epsilon),
        gap=args.gap,
        oracle_box=args.oracle_box,
        constraints=tuple(args.constraint) if args.constraint else None,
        max_len=args.max_len,
    )


def _add_config(p):
    p.add_argument("--target", help="chord word to certify, e.g. α1 or a4")
    p.add_argument("--epsilon", help="candidate slack, a rational such as 1/1000")
    p.add_argument("--gap", type=int, default=100, help="factor used by << in constraints")
    p.add_argument("--oracle-box", type=int, default=None, help="also run the integer oracle with this box")
    p.add_argument("--constraint", action="append", help="action constraint, repeatable")
    p.add_argument("--max-len", type=int, default=6)


def cmd_certify(args):
    cert = certify(_source(args), _config(args))
    if args.emit:
        Path(args.emit).write_text(cert.to_json(), encoding="utf-8")
    if args.explain:
        print(explain(cert), end="")
    else:
        c = cert.data["conclusion"]
        print(f"{cert.data['verdict']['kind']}: {c['status']} (tb={cert.data['knot']['tb']}, tight={c['tight']})")
    return EXIT_OK if cert.certified else EXIT_INCONCLUSIVE


def cmd_render(args):
    src = _source(args)
    d = src if hasattr(src, "crossing_order") else rainbow_closure_diagram(src)
    data = render_svg(d)
    if args.svg == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.svg).write_bytes(data)
    return EXIT_OK


def cmd_batch(args):
    results = batch(args.family, _config(args), args.pmax, args.qmax, args.rmax, args.cache, args.workers)
    print(summary_table(results), end="")
    ok = all("error" not in r and r["conclusion"]["ch_vanishes"] for _, r in results)
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_verify(args):
    try:
        data = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    except ValueError as exc:
        print(f"not a certificate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    bad = verify(data)
    for line in bad:
        print(line)
    if bad:
        return EXIT_INCONCLUSIVE
    print("certificate verified")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="rainbowcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("certify", help="certify vanishing contact homology after +1 surgery")
    _add_input(p)
    _add_config(p)
    p.add_argument("--emit", help="write the certificate JSON here")
    p.add_argument("--explain", action="store_true", help="print the proof narrative")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("render", help="draw the diagram as SVG")
    _add_input(p)
    p.add_argument("--svg", required=True, help="output file, or - for stdout")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("batch", help="certify a whole family")
    p.add_argument("--family", required=True, choices=["torus", "twisted", "n2"])
    p.add_argument("--pmax", type=int, default=6)
    p.add_argument("--qmax", type=int, default=7)
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--cache", help="directory for cached certificates")
    p.add_argument("--workers", type=int, default=1)
    _add_config(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify", help="re-check a certificate offline")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CertError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
