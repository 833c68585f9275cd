"""Command line front end.

Every verb is a thin wrapper: parse flags, call the library, format CSV or
a diagram/DOT file.  Outputs are deterministic — the same flags and seed
always produce byte-identical bytes.  Exit codes: 0 success, 2 bad usage
or bad input data, 3 a resource cap was hit, 4 I/O failure, 1 anything
unexpected.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from contextlib import nullcontext

from .diagram import Diagram, DiagramError
from .errors import ResourceCapError
from .groups import DiagramGroup, distance, element_ball
from .presentation import PRESETS, PresentationError, parse_presentation, word_str
from . import embedding, thompson, universal, wreath, zwrz

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_IO = 4


def _out_stream(path):
    if path and path != "-":
        return open(path, "w", newline="")
    return nullcontext(sys.stdout)


def _csv(stream):
    return csv.writer(stream, lineterminator="\n")


def _presentation(args):
    if getattr(args, "pres", None):
        with open(args.pres) as fh:
            return parse_presentation(fh.read())
    return PRESETS[args.preset]


def _load_diagram(pres, path, max_cells=None):
    with open(path) as fh:
        d = Diagram.from_text(pres, fh.read())
    if max_cells is not None and d.cell_count > max_cells:
        raise ResourceCapError(f"{path}: {d.cell_count} cells exceed the cap {max_cells}")
    return d


def _element(pres, diagram):
    return DiagramGroup(pres, diagram.top_word).element(diagram)


def _parse_signs(text, count, seed):
    """Sign strings: '++-…', 'random', or 'random:SEED'."""
    if text is None:
        return [1] * count
    if text.startswith("random"):
        _, _, s = text.partition(":")
        rng = random.Random(int(s) if s else seed)
        return [rng.choice((1, -1)) for _ in range(count)]
    if len(text) != count or set(text) - {"+", "-"}:
        raise ValueError(f"need {count} signs out of +- (or 'random[:seed]')")
    return [1 if c == "+" else -1 for c in text]


def cmd_reduce(args):
    pres = _presentation(args)
    d = _load_diagram(pres, args.infile, args.max_cells)
    r = d.reduce()
    w = _csv(sys.stdout)
    w.writerow(["top", "cells_in", "cells_out", "code"])
    w.writerow([word_str(d.top_word), d.cell_count, r.cell_count, r.code])
    if args.out:
        with _out_stream(args.out) as fh:
            fh.write(r.to_text())
    return EXIT_OK


def cmd_mul(args):
    pres = _presentation(args)
    if len(args.infile) < 2:
        raise ValueError("mul needs at least two --in files")
    ds = [_load_diagram(pres, p, args.max_cells) for p in args.infile]
    prod = ds[0]
    for d in ds[1:]:
        prod = prod * d
    if args.max_cells is not None and prod.cell_count > args.max_cells:
        raise ResourceCapError(f"product has {prod.cell_count} cells, cap {args.max_cells}")
    r = prod.reduce()
    w = _csv(sys.stdout)
    w.writerow(["top", "bottom", "cells", "code"])
    w.writerow([word_str(r.top_word), word_str(r.bot_word), r.cell_count, r.code])
    if args.out:
        with _out_stream(args.out) as fh:
            fh.write(r.to_text())
    return EXIT_OK


def cmd_dist(args):
    pres = _presentation(args)
    d1 = _load_diagram(pres, args.infile[0], args.max_cells)
    d2 = _load_diagram(pres, args.infile[1], args.max_cells)
    g1, g2 = _element(pres, d1), _element(pres, d2)
    w = _csv(sys.stdout)
    w.writerow(["dist"])
    w.writerow([distance(g1, g2)])
    return EXIT_OK


def cmd_embed(args):
    pres = _presentation(args)
    d1 = _load_diagram(pres, args.infile[0], args.max_cells)
    d2 = _load_diagram(pres, args.infile[1], args.max_cells)
    g1, g2 = _element(pres, d1), _element(pres, d2)
    w = _csv(sys.stdout)
    w.writerow(["sq_norm1", "sq_norm2", "sq_dist", "dist"])
    w.writerow([len(embedding.phi(g1)), len(embedding.phi(g2)),
                embedding.sq_dist(g1, g2), distance(g1, g2)])
    return EXIT_OK


def cmd_export_dot(args):
    pres = _presentation(args)
    d = _load_diagram(pres, args.infile, args.max_cells)
    with _out_stream(args.out) as fh:
        fh.write(d.to_dot())
    return EXIT_OK


def cmd_f_skew(args):
    fam = thompson.skew_family(args.n, args.max_ball)
    signs = _parse_signs(args.signs, len(fam.members), args.seed)
    prod = thompson.signed_product(fam, signs)
    with _out_stream(args.out) as fh:
        w = _csv(fh)
        w.writerow(["kind", "index", "sign", "cells", "expected"])
        for i, (g, s) in enumerate(zip(fam.members, signs)):
            w.writerow(["member", i, s, g.cell_count, 2 * args.n + 4])
        w.writerow(["product", "", "", prod.cell_count, 3 * 2 ** (args.n + 1) - 2])
        if len(fam.members) <= 4:
            # skewed-cube report over all 0/1 exponent products
            points = []
            for mask in range(1 << len(fam.members)):
                g = thompson.F_GROUP.identity()
                for i, m in enumerate(fam.members):
                    if (mask >> i) & 1:
                        g = g * m
                points.append(frozenset(embedding.phi(g)))
            rep = wreath.skew_cube_check(points, sq=lambda a, b: len(a ^ b))
            w.writerow(["cube", "", "", "", ""])
            w.writerow(["cube_dim", "", "", rep.dim, ""])
            w.writerow(["cube_edge_sq_sum", "", "", rep.edge_sq_sum, ""])
            w.writerow(["cube_diag_sq_sum", "", "", rep.diag_sq_sum, ""])
            w.writerow(["cube_max_edge_sq", "", "", rep.max_edge_sq, ""])
            w.writerow(["cube_min_diag_sq", "", "", rep.min_diag_sq, ""])
            w.writerow(["cube_holds", "", "", int(rep.holds), ""])
    return EXIT_OK


def cmd_f_ball(args):
    rows = thompson.ball_rows(args.radius, max_elements=args.max_ball)
    with _out_stream(args.out) as fh:
        w = _csv(fh)
        w.writerow(["code", "length", "cells"])
        w.writerows(rows)
    return EXIT_OK


def cmd_u_rewrite(args):
    d = _load_diagram(universal.UNIVERSAL_U, args.infile, args.max_cells)
    g = universal.U_GROUP.element(d)
    rep = universal.u_rewrite_report(g.diagram)
    w = _csv(sys.stdout)
    w.writerow(["cells", "k", "m", "extracted", "rewritten", "length", "bound", "margin"])
    w.writerow([rep.n_cells, rep.k, rep.m,
                thompson.xword_str(rep.letters), thompson.xword_str(rep.rewritten),
                rep.length, rep.bound, rep.bound - rep.length])
    return EXIT_OK


def _lamp_str(e):
    return ",".join(f"{p}:{v}" for p, v in e.lamps)


def cmd_wreath_len(args):
    e = wreath.parse_welem(args.elem)
    w = _csv(sys.stdout)
    w.writerow(["b", "lamps", "length_closed", "length_dp"])
    w.writerow([e.shift, _lamp_str(e),
                wreath.parr_length(wreath.Z_ORACLE, e, method="closed"),
                wreath.parr_length(wreath.Z_ORACLE, e, method="dp")])
    return EXIT_OK


def cmd_wreath_wr2(args):
    Z = wreath.Z_ORACLE
    fam = wreath.xn_family(Z, args.n, args.max_ball)
    signs = _parse_signs(args.signs, len(fam), args.seed)
    prod = wreath.signed_support_product(Z, fam, signs)
    plen = wreath.parr_length(Z, prod)
    bound = args.n * wreath.growth(Z, args.n)
    with _out_stream(args.out) as fh:
        w = _csv(fh)
        w.writerow(["kind", "b", "sign", "length", "bound_low", "bound_high"])
        for (b, _), member, s in zip(Z.ball_with_lengths(args.n), fam, signs):
            w.writerow(["member", b, s, wreath.parr_length(Z, member),
                        2 * args.n + 1, 3 * args.n + 1])
        w.writerow(["product", "", "", plen, bound + 1, ""])
    return EXIT_OK


def cmd_growth(args):
    if args.h == "z":
        oracle = wreath.Z_ORACLE
    else:
        oracle = wreath.wreath_oracle(wreath.Z_ORACLE)
    with _out_stream(args.out) as fh:
        w = _csv(fh)
        w.writerow(["n", "ball"] + [f"n{k}" for k in range(2, 7)])
        for n in range(args.max + 1):
            w.writerow([n, wreath.growth(oracle, n, args.max_ball)]
                       + [n ** k for k in range(2, 7)])
    return EXIT_OK


def cmd_zwrz_embed(args):
    e = wreath.parse_welem(args.elem)
    g = zwrz.zwrz_to_diagram(e)
    w = _csv(sys.stdout)
    w.writerow(["b", "lamps", "cells", "sq_norm"])
    w.writerow([e.shift, _lamp_str(e), g.cell_count, len(embedding.phi(g))])
    if args.out:
        with _out_stream(args.out) as fh:
            fh.write(g.diagram.to_text())
    return EXIT_OK


def cmd_zwrz_propb(args):
    rows = zwrz.propb_rows(args.radius, args.max_ball)
    max_cpl = max_lpc = 0.0
    with _out_stream(args.out) as fh:
        w = _csv(fh)
        w.writerow(["kind", "b", "lamps", "bfs_len", "walk_len", "cells",
                    "cells_per_len", "len_per_cells"])
        for e, bfs_len, walk_len, cells in rows:
            if bfs_len:
                cpl = cells / bfs_len
                lpc = bfs_len / cells
                max_cpl = max(max_cpl, cpl)
                max_lpc = max(max_lpc, lpc)
                ratios = [f"{cpl:.6f}", f"{lpc:.6f}"]
            else:
                ratios = ["", ""]
            w.writerow(["elem", e.shift, _lamp_str(e),
                        bfs_len, walk_len, cells] + ratios)
        w.writerow(["max", "", "", "", "", "", f"{max_cpl:.6f}", f"{max_lpc:.6f}"])
    return EXIT_OK


def cmd_selftest(args):
    rng = random.Random(args.seed if args.seed is not None else 0)
    x0 = thompson.f_generator(0)
    assert x0.cell_count == 4
    print("ok generator x0 has 4 cells")
    for _ in range(40):
        from .diagram import random_diagram
        from .presentation import UNIVERSAL_U
        d = random_diagram(UNIVERSAL_U, ("a",), rng.randrange(0, 12), rng)
        codes = {d.reduce(random.Random(s)).code for s in range(3)}
        assert len(codes) == 1
    print("ok dipole cancellation is order independent (40 diagrams)")
    G = thompson.F_GROUP
    for _ in range(15):
        g1 = G.random_element(rng.randrange(0, 7), rng)
        g2 = G.random_element(rng.randrange(0, 7), rng)
        assert embedding.sq_dist(g1, g2) == distance(g1, g2)
    print("ok squared embedding distance equals diagram distance (15 pairs)")
    e = wreath.WreathElement(0, ((-1, 1), (2, 3)))
    assert wreath.parr_length(wreath.Z_ORACLE, e) == 10
    print("ok wreath length example evaluates to 10")
    for _ in range(25):
        e = zwrz.random_zwrz_element(rng)
        assert zwrz.diagram_to_zwrz(zwrz.zwrz_to_diagram(e)) == e
    print("ok wreath/diagram dictionary round trips (25 elements)")
    rep = universal.u_rewrite_report(universal.u_generator(4).diagram)
    assert thompson.xword_str(rep.rewritten) == "x0^-2 x2 x0^2"
    print("ok three-generator rewriting golden example")
    print("selftest passed")
    return EXIT_OK


def _common(sub, *, infile=0, out=False, pres=False, seed=False, caps=False):
    if pres:
        sub.add_argument("--preset", choices=sorted(PRESETS), default=None,
                         help="built-in presentation")
        sub.add_argument("--pres", metavar="FILE", default=None,
                         help="presentation file (overrides --preset)")
    if infile == 1:
        sub.add_argument("--in", dest="infile", required=True, metavar="FILE",
                         help="diagram file")
    elif infile == 2:
        sub.add_argument("--in", dest="infile", action="append", required=True,
                         metavar="FILE", help="diagram file (give twice)")
    if out:
        sub.add_argument("--out", default=None, metavar="FILE",
                         help="output path ('-' for stdout)")
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="random seed")
    if caps:
        sub.add_argument("--max-cells", type=int, default=None,
                         help="abort if a diagram exceeds this many cells")
        sub.add_argument("--max-ball", type=int, default=None,
                         help="abort if a ball exceeds this many elements")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dg", description="Diagram groups over semigroup presentations.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("reduce", help="cancel all dipoles in a diagram")
    _common(p, infile=1, out=True, pres=True, caps=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mul", help="stack diagrams and reduce")
    _common(p, infile=2, out=True, pres=True, caps=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("dist", help="diagram distance between two elements")
    _common(p, infile=2, pres=True, caps=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("embed", help="cell-set embedding report for two elements")
    _common(p, infile=2, pres=True, caps=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("export-dot", help="write a diagram as Graphviz DOT")
    _common(p, infile=1, out=True, pres=True, caps=True)
    p.set_defaults(func=cmd_export_dot)

    f = sub.add_parser("f", help="Thompson group commands").add_subparsers(
        dest="fcmd", required=True)
    p = f.add_parser("skew", help="commuting family, signed product, cube report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--signs", default=None, help="'++-…' or 'random[:seed]'")
    _common(p, out=True, seed=True, caps=True)
    p.set_defaults(func=cmd_f_skew)
    p = f.add_parser("ball", help="breadth-first ball with lengths and cell counts")
    p.add_argument("--radius", type=int, required=True)
    _common(p, out=True, caps=True)
    p.set_defaults(func=cmd_f_ball)

    u = sub.add_parser("u", help="universal group commands").add_subparsers(
        dest="ucmd", required=True)
    p = u.add_parser("rewrite", help="rewrite an (a,a)-diagram over three generators")
    _common(p, infile=1, caps=True)
    p.set_defaults(func=cmd_u_rewrite)

    wr = sub.add_parser("wreath", help="wreath product commands").add_subparsers(
        dest="wcmd", required=True)
    p = wr.add_parser("len", help="word length of a wreath element")
    p.add_argument("--h", choices=["z"], default="z", help="base group")
    p.add_argument("--elem", required=True, help="'b=<int>; phi=<pos>:<val>,…'")
    p.set_defaults(func=cmd_wreath_len)
    p = wr.add_parser("wr2", help="lamp-conjugate family and signed product lengths")
    p.add_argument("--h", choices=["z"], default="z", help="base group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--signs", default=None, help="'++-…' or 'random[:seed]'")
    _common(p, out=True, seed=True, caps=True)
    p.set_defaults(func=cmd_wreath_wr2)

    p = sub.add_parser("growth", help="ball sizes against power curves")
    p.add_argument("--h", choices=["z", "zwrz"], required=True,
                   help="group to measure (integers, or their wreath square)")
    p.add_argument("--max", type=int, required=True)
    _common(p, out=True, caps=True)
    p.set_defaults(func=cmd_growth)

    zw = sub.add_parser("zwrz", help="wreath/diagram dictionary commands").add_subparsers(
        dest="zcmd", required=True)
    p = zw.add_parser("embed", help="diagram image and squared norm of a wreath element")
    p.add_argument("--elem", required=True, help="'b=<int>; phi=<pos>:<val>,…'")
    _common(p, out=True)
    p.set_defaults(func=cmd_zwrz_embed)
    p = zw.add_parser("propb", help="length/cell-count ratios over a ball")
    p.add_argument("--radius", type=int, required=True)
    _common(p, out=True, caps=True)
    p.set_defaults(func=cmd_zwrz_propb)

    p = sub.add_parser("selftest", help="run a quick built-in check suite")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "preset", "unset") is None and getattr(args, "pres", None) is None:
        parser.error("one of --preset or --pres is required")
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DiagramError, PresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
