"""Command line interface.

Subcommands: bounds, series, relations, protogroup, characters, galois.
Exit codes: 0 success, 1 internal error, 2 unsupported instance,
3 resource cap, 4 singular expansion point.

The galois subcommand refuses to run without --degree-override: the
unconditional degree bound is astronomically large by construction, so
it is printed symbolically instead of being executed, and results under
an override are labeled relative to that degree.
"""

import argparse
import sys
from fractions import Fraction

from .errors import DgalError
from .groups import characters_generators, identity_component
from .pipeline import PipelineConfig, galois_group, proto_galois
from .systems import OdeSystem


def _load_system(path):
    with open(path) as fh:
        return OdeSystem.from_document(fh.read())


def _point(sys_, text):
    return sys_.R.const.from_fraction(Fraction(text))


def _strategy(args):
    if getattr(args, "order", None) is not None:
        return ("explicit", args.order)
    if getattr(args, "stabilize", None) is not None:
        return ("stabilize", args.stabilize)
    return None


def _config(sys_, args, degree):
    a = _point(sys_, args.point) if args.point is not None else None
    return PipelineConfig(degree=degree, a=a, ell=args.coeff_degree,
                          order_strategy=_strategy(args))


def cmd_bounds(args):
    from . import bounds as B
    n = args.n
    expr = B.proto_galois_degree_bound(n)
    print("degree_bound(n=%d) = %s" % (n, B.render(expr)))
    mag = B.evaluate(expr, bit_cap=args.exact_bit_cap) \
        if args.exact_bit_cap is not None else B.evaluate(expr)
    if mag.is_exact:
        print("value = %s" % mag.exact_int())
    else:
        ll = mag.loglog2()
        print("log2(log2(value)) in [%s, %s]" % (ll.a, ll.b))
    k1, k2, k3 = B.kappas(n)
    for name, e in [("kappa1", k1), ("kappa2", k2), ("kappa3", k3),
                    ("iterations", B.iteration_bound(n))]:
        print("%s = %s" % (name, B.render(e)))
    return 0


def cmd_series(args):
    sys_ = _load_system(args.system)
    a = _point(sys_, args.point) if args.point is not None \
        else sys_.R.const.one
    G = sys_.fundamental_series(a, args.order)
    k = G.field
    for i in range(G.n):
        for j in range(G.n):
            s = G.entry(i, j)
            print("Gamma[%d][%d]: %s" % (
                i + 1, j + 1, ", ".join(k.format(c) for c in s.coeffs)))
    return 0


def _relation_ideal(args):
    from .relations import default_window, order_bound, relation_ideal
    sys_ = _load_system(args.system)
    a = _point(sys_, args.point) if args.point is not None \
        else sys_.R.const.one
    d, ell = args.degree, args.coeff_degree
    strategy = _strategy(args) or ("stabilize", default_window(sys_, d))
    N, rigorous = order_bound(sys_, a, d, ell, strategy)
    return sys_, relation_ideal(sys_, a, d, ell, N, rigorous=rigorous)


def cmd_relations(args):
    _sys, rel = _relation_ideal(args)
    print("order_used: %d" % rel.order_used)
    print("rigorous: %s" % ("yes" if rel.rigorous else "no"))
    for P in rel.basis:
        print("relation: %s" % rel.ring.format(P))
    return 0


def cmd_protogroup(args):
    from .groups import stabilizer_group, verify_group_axioms
    _sys, rel = _relation_ideal(args)
    H = stabilizer_group(rel)
    verify_group_axioms(H, rel)
    print("verified: yes")
    for g in H.generators:
        print("generator: %s" % H.ring.format(g))
    if not H.generators:
        print("generator-free: full group")
    return 0


def cmd_characters(args):
    from .groups import stabilizer_group, verify_group_axioms
    _sys, rel = _relation_ideal(args)
    H = stabilizer_group(rel)
    verify_group_axioms(H, rel)
    Hc = identity_component(H)
    chars = characters_generators(Hc, args.degree)
    print("rank: %d" % len(chars))
    for ch in chars:
        print("character: %s" % ch.ring.format(ch.poly))
    return 0


def cmd_galois(args):
    sys_ = _load_system(args.system)
    if args.degree_override is None:
        from . import bounds as B
        expr = B.proto_galois_degree_bound(sys_.n)
        print("refusing to run: the unconditional degree bound is not "
              "executable at desk scale.")
        print("symbolic degree bound: %s" % B.render(expr))
        print("pass --degree-override D to run relative to degree D.")
        return 2
    cfg = _config(sys_, args, args.degree_override)
    desc = galois_group(sys_, cfg)
    sys.stdout.write(desc.to_document())
    return 0


def _add_common(p, with_degree=True):
    p.add_argument("--system", required=True, help="system document file")
    p.add_argument("--point", help="expansion point (a rational number)")
    if with_degree:
        p.add_argument("--degree", type=int, required=True,
                       help="relation degree cap")
    p.add_argument("--coeff-degree", type=int, default=2, dest="coeff_degree",
                   help="rational coefficient degree cap")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--order", type=int, help="explicit truncation order")
    group.add_argument("--stabilize", type=int,
                       help="rank stabilization window")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dgal",
        description="differential Galois groups of linear ODE systems "
                    "over the rational functions, in exact arithmetic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="print the symbolic degree bound tower")
    p.add_argument("--n", type=int, default=1, help="system dimension")
    p.add_argument("--exact-bit-cap", type=int, default=None,
                   dest="exact_bit_cap",
                   help="bit cap for exact bound evaluation")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("series", help="truncated fundamental matrix")
    p.add_argument("--system", required=True)
    p.add_argument("--point")
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("relations", help="relation ideal basis")
    _add_common(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("protogroup", help="stabilizer of the relation ideal")
    _add_common(p)
    p.set_defaults(func=cmd_protogroup)

    p = sub.add_parser("characters",
                       help="character lattice of the identity component")
    _add_common(p)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("galois", help="full Galois group computation")
    p.add_argument("--system", required=True)
    p.add_argument("--point")
    p.add_argument("--degree-override", type=int, default=None,
                   dest="degree_override",
                   help="run relative to this relation degree")
    p.add_argument("--coeff-degree", type=int, default=2,
                   dest="coeff_degree")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--order", type=int)
    group.add_argument("--stabilize", type=int)
    p.set_defaults(func=cmd_galois)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DgalError as err:
        print("error: %s" % err, file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
