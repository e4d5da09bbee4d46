"""Command-line front end.

Exit codes: 0 success, 1 bad input data or a failed verification,
2 usage error.  ``-`` in place of a file name reads standard input.
"""

from __future__ import annotations

import argparse
import sys
from importlib.resources import files

from . import fpgroup, h1twist, homology_rep, linalg, surface


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if path.startswith("bundled:"):
        return bundled(path[len("bundled:"):])
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        # bare names of shipped data files, e.g. "tn3.pres"
        if "/" not in path and files("twistsub").joinpath("data", path).is_file():
            return bundled(path)
        raise DomainError(f"cannot read {path}: no such file") from None
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def bundled(name: str) -> str:
    """Text of a data file shipped with the package (mn3.pres, tn3.pres, n3.rep)."""
    res = files("twistsub").joinpath("data", name)
    if not res.is_file():
        raise DomainError(f"no bundled file {name!r}")
    return res.read_text(encoding="utf-8")


def _spec(args) -> surface.SurfaceSpec:
    try:
        return surface.SurfaceSpec(args.g, args.s, args.n)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def cmd_snf(args, out):
    A = linalg.parse_matrix(_read(args.file))
    form = linalg.snf(A)
    out.write(linalg.format_matrix(form.S))
    if args.certificates:
        out.write("# U\n" + linalg.format_matrix(form.U))
        out.write("# V\n" + linalg.format_matrix(form.V))
    if args.invariants:
        out.write(f"# cokernel {linalg.invariant_factors(A, A.cols)}\n")


def cmd_abelianize(args, out):
    P = fpgroup.parse_presentation(_read(args.file))
    out.write(f"{fpgroup.abelianization(P)}\n")


def _parse_assignments(items, what):
    result = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise DomainError(f"bad {what} {item!r}; expected name=value")
        result[key] = value
    return result


def cmd_rs(args, out):
    P = fpgroup.parse_presentation(_read(args.file))
    raw = _parse_assignments(args.hom, "--hom")
    images = {}
    for name, value in raw.items():
        if name not in P.alphabet:
            raise DomainError(f"--hom names unknown generator {name!r}")
        try:
            images[name] = int(value)
        except ValueError:
            raise DomainError(f"--hom value for {name} is not an integer") from None
    phi = fpgroup.FiniteQuotientHom(args.mod, images)
    U = None
    if args.transversal:
        reps = {}
        for label, text in _parse_assignments(args.transversal, "--transversal").items():
            try:
                reps[int(label)] = fpgroup.word(text.replace(",", " "), P.alphabet)
            except ValueError as exc:
                raise DomainError(f"--transversal {label}: {exc}") from None
        reps.setdefault(0, ())
        U = fpgroup.Transversal(reps)
    R = fpgroup.reidemeister_schreier(P, phi, U)
    if args.simplify:
        R = fpgroup.tietze_simplify(R)
    out.write(fpgroup.format_presentation(R))


def cmd_polygon(args, out):
    model = surface.build_polygon(_spec(args))
    out.write(model.word + "\n")
    out.write(surface.glue(model).summary() + "\n")


def cmd_h1_surface(args, out):
    spec = _spec(args)
    out.write(f"H1({spec}) = {surface.surface_h1(spec)}\n")


def cmd_h1_twist(args, out):
    spec = _spec(args)
    try:
        out.write(h1twist.headline(spec) + "\n")
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.explain:
        out.write(h1twist.explain(spec))


def _relation(text: str, alphabet):
    lhs, sep, rhs = text.partition("=")
    if not sep:
        raise DomainError(f"relation {text!r} has no '='")
    return fpgroup.word(lhs, alphabet), fpgroup.word(rhs, alphabet)


def cmd_verify(args, out):
    spec = surface.SurfaceSpec(*args.surface)
    try:
        rep = homology_rep.load_representation(_read(args.config), spec)
    except ValueError as exc:
        raise DomainError(f"representation rejected: {exc}") from None
    for name in rep.names:
        d = homology_rep.det_hom(rep, ((name, 1),))
        out.write(f"D({name}) = {d:+d}\n")
    ok = True
    if args.pres:
        P = fpgroup.parse_presentation(_read(args.pres))
        missing = [g for g in P.alphabet if g not in rep.matrices]
        if missing:
            raise DomainError(f"presentation generators missing from config: {missing}")
        for k, r in enumerate(P.relators, 1):
            holds = homology_rep.evaluate(rep, r).is_identity()
            ok &= holds
            out.write(f"relator {k}: {'identity' if holds else 'NOT identity'}: "
                      f"{fpgroup.format_word(r)}\n")
    for text in args.relation or []:
        lhs, rhs = _relation(text, rep.names)
        holds = homology_rep.verify_relation(rep, lhs, rhs)
        ok &= holds
        out.write(f"relation {'holds' if holds else 'FAILS'}: {text.strip()}\n")
    return 0 if ok else 1


def cmd_indices(args, out):
    try:
        a, b, c, total = homology_rep.subgroup_indices(surface.SurfaceSpec(args.genus, 0, args.n))
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    out.write(f"n!={a} 2^n={b} 2={c} total={total}\n")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistsub",
        description="Exact computations for twist subgroups of nonorientable mapping class groups.",
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    s.add_argument("file")
    s.add_argument("--certificates", action="store_true", help="also print U and V")
    s.add_argument("--invariants", action="store_true", help="also print the cokernel")
    s.set_defaults(func=cmd_snf)

    s = sub.add_parser("abelianize", help="abelianization of a presentation file")
    s.add_argument("file")
    s.set_defaults(func=cmd_abelianize)

    s = sub.add_parser("rs", help="Reidemeister-Schreier presentation of a kernel onto Z/m")
    s.add_argument("file")
    s.add_argument("--hom", action="append", metavar="NAME=VALUE",
                   help="image of a generator; unspecified generators map to 0")
    s.add_argument("--mod", type=_positive, required=True, metavar="M")
    s.add_argument("--transversal", action="append", metavar="LABEL=WORD",
                   help="coset representative, letters separated by commas; 0 defaults to the empty word")
    s.add_argument("--simplify", action="store_true", help="apply Tietze simplification")
    s.set_defaults(func=cmd_rs)

    for name, func, helptext in (
        ("polygon", cmd_polygon, "cut polygon word and cell complex summary"),
        ("h1-surface", cmd_h1_surface, "integral H1 of the surface from its cell complex"),
        ("h1-twist", cmd_h1_twist, "H1 of the twist subgroup"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("g", type=_positive)
        s.add_argument("s", type=_nonneg)
        s.add_argument("n", type=_nonneg)
        if name == "h1-twist":
            s.add_argument("--explain", action="store_true", help="append the relation ledger")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="validate a homology representation and check relations")
    s.add_argument("config")
    s.add_argument("--surface", nargs=3, type=_nonneg, default=(3, 0, 0), metavar=("G", "S", "N"))
    s.add_argument("--pres", help="presentation whose relators should act trivially")
    s.add_argument("--relation", action="append", metavar="'LHS = RHS'")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("indices", help="index of the twist subgroup in the mapping class group")
    s.add_argument("n", type=_nonneg)
    s.add_argument("--genus", type=_positive, default=3)
    s.set_defaults(func=cmd_indices)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args, out)
    except (DomainError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"twistsub {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
