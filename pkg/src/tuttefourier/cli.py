"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 size guard exceeded, 3 verification
failure.  All output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import flows as fl
from . import graphpoly as gp
from . import tutte as tt
from .enumerate import SizeGuardError
from .fourier import parse_zqfun
from .graph import GraphError, build_family, graph_stats, parse_graph, plane_embedding
from .verify import (
    REL_TOL,
    _jsonable,
    check_alon_tarsi,
    check_coeff_thm,
    check_corpus,
    check_l2_thm,
    check_macwilliams,
    check_penrose,
    check_prop_constant,
    check_tarsi,
    describe,
)

TOL_ENV = "TUTTEFOURIER_TOL"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def parse_complex(text: str) -> complex:
    values = parse_zqfun(text)
    if values.size != 1:
        raise ValueError(f"expected one complex literal, got {text!r}")
    return complex(values[0])


def _number(z: complex):
    """Plain real when the imaginary part vanishes, so exact integer inputs stay integral."""
    if z.imag == 0:
        return int(z.real) if z.real.is_integer() else z.real
    return z


def parse_family(text: str):
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"bad family {text!r}") from None
    if len(nums) > 2:
        raise ValueError(f"bad family {text!r}")
    name = parts[0]
    m = nums[0] if nums else (4 if name == "k4" else 3)
    n = nums[1] if len(nums) > 1 else None
    return name, m, n


def load_graph(args):
    if bool(args.graph) == bool(args.family):
        raise InputError("give exactly one of --graph FILE or --family name:m[:n]")
    if args.graph:
        try:
            with open(args.graph) as fh:
                return parse_graph(fh.read())
        except OSError as exc:
            raise InputError(str(exc)) from None
    name, m, n = parse_family(args.family)
    return build_family(name, m, n)


def load_kernel(args, q: int) -> gp.RestrictedKernel:
    if args.g is not None:
        g = parse_zqfun(args.g)
        if g.size != q:
            raise ValueError(f"--g has {g.size} values but q = {q}")
        return gp.RestrictedKernel(tuple(g), args.s, args.t)
    if args.kernel == "petersen":
        return gp.petersen_kernel(q)
    if args.kernel == "score":
        return gp.score_kernel(q)
    if args.kernel == "prop-constant":
        return gp.prop_constant_kernel(q, _need(args, "y"), _need(args, "w"))
    raise ValueError(f"unknown kernel {args.kernel!r}")


def parse_matrix(text: str) -> np.ndarray:
    rows = [parse_zqfun(r) for r in text.split(";")]
    if any(r.size != len(rows) for r in rows):
        raise ValueError("--matrix must be square: rows separated by ';'")
    return np.array(rows, dtype=complex)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required here")
    return parse_complex(value)


def _vectors(P) -> list:
    return [[int(x) for x in row] for row in P]


def cmd_stats(args, G):
    st = graph_stats(G)
    return {"vertices": G.vertex_count, "edges": G.edge_count, "k": st.k, "r": st.r, "n": st.n}


def cmd_tutte(args, G):
    T = tt.tutte_subset(G) if args.method == "subset" else tt.tutte_dc(G)
    out = {"coeffs": T.to_json()}
    if args.x is not None and args.y is not None:
        out["value"] = T.evaluate(_number(parse_complex(args.x)), _number(parse_complex(args.y)))
    return out


def cmd_potts(args, G):
    q = args.q
    if args.matrix:
        W = parse_matrix(args.matrix)
        out = {"q": W.shape[0], "partition": tt.potts_partition(G, W)}
        hit = tt.tg_matrix_test(W)
        out["constant_diagonal"] = None if hit is None else {"w": hit[0], "y": hit[1]}
        if args.probe:
            rep = tt.tg_family_probe(W, args.probe)
            out["probe"] = {
                "consistent": rep.consistent,
                "first_violation": rep.first_violation,
                "params": rep.params,
                "note": rep.note,
            }
        return out
    w, y = _need(args, "w"), _need(args, "y")
    return {
        "q": q,
        "w": w,
        "y": y,
        "partition": tt.potts_partition(G, tt.hamming_kernel(q, w, y)),
        "closed": tt.potts_closed(G, q, w, y),
    }


def cmd_chromatic(args, G):
    out = {"q": args.q, "value": tt.chromatic_value(G, args.q)}
    if args.y is not None:
        y = _number(parse_complex(args.y))
        out["monochromial"] = tt.monochromial(G, args.q, y)
    return out


def cmd_tensions(args, G):
    P = fl.tensions(G, args.q) if args.s == 1 else fl.image_S(fl.CoboundaryMap(G, args.q, args.s))
    return {"q": args.q, "s": args.s, "count": int(P.shape[0]),
            "hamming": fl.hamming_we(P, G.edge_count), "vectors": _vectors(P)}


def cmd_flows(args, G):
    if args.s == 1:
        P = fl.q1_flows(G, args.q) if args.q1 else fl.flows(G, args.q)
    else:
        P = fl.kernel_ST(fl.CoboundaryMap(G, args.q, args.s))
    return {"q": args.q, "s": args.s, "count": int(P.shape[0]),
            "hamming": fl.hamming_we(P, G.edge_count), "vectors": _vectors(P)}


def cmd_expand(args, G):
    k = load_kernel(args, args.q)
    F = gp.expand(G, k)
    return {"q": args.q, "s": k.s, "t": k.t, "coeffs": F.to_json(),
            "l2_sq": gp.l2_norm_sq(F), "l0": gp.l0_norm(F)}


def cmd_l2(args, G):
    k = load_kernel(args, args.q)
    ok, Y, W = gp.l2_tg_predicate(k)
    return {
        "q": args.q,
        "l2_sq": gp.l2_norm_sq(gp.expand(G, k)),
        "flow_side": gp.l2_flow_rhs(G, args.q, k),
        "image_side": gp.l2_image_rhs(G, args.q, k),
        "tutte_evaluation": {"holds": ok, "Y": Y, "W": W},
    }


def cmd_coeff(args, G):
    k = load_kernel(args, args.q)
    if args.a is None:
        raise InputError("--a exponent vector is required")
    a = [int(x) % args.q for x in args.a.split(",")]
    if len(a) != G.vertex_count:
        raise ValueError("exponent vector length must equal the vertex count")
    return {
        "exponents": a,
        "direct": gp.coefficient(gp.expand(G, k), a),
        "coset": gp.coset_coeff(G, args.q, k, a),
    }


def cmd_verify(args, G, tol):
    ident = args.identity
    if ident == "corpus":
        qs = [int(x) for x in args.qs.split(",")] if args.qs else [2, 3]
        summary = check_corpus(qs, args.max_vertices, args.max_edges, args.kernels, args.seed, tol)
        return summary.to_dict(), summary.failures == 0
    if ident == "penrose":
        if args.rotation:
            rotation = [[int(e) for e in part.split(",")] for part in args.rotation.split(";")]
        else:
            name, m, _ = parse_family(args.family or "")
            G, rotation = plane_embedding(name, m)
        rep = check_penrose(G, rotation, tol)
    elif ident == "alon-tarsi":
        rep = check_alon_tarsi(G, args.q, tol)
    elif ident == "tarsi":
        rep = check_tarsi(G, args.q, tol)
    elif ident == "prop-constant":
        rep = check_prop_constant(G, args.q, _need(args, "y"), _need(args, "w"), tol)
    elif ident == "coeff-thm":
        rep = check_coeff_thm(G, args.q, load_kernel(args, args.q), tol, seed=args.seed)
    elif ident == "l2-thm":
        rep = check_l2_thm(G, args.q, load_kernel(args, args.q), tol, seed=args.seed)
    elif ident == "macwilliams":
        if args.g is not None:
            weights = parse_zqfun(args.g)
        else:
            rng = np.random.default_rng(args.seed)
            weights = rng.normal(size=args.q) + 1j * rng.normal(size=args.q)
        rep = check_macwilliams(G, args.q, weights, tol, seed=None if args.g else args.seed)
    else:
        raise InputError(f"unknown identity {ident!r}")
    return rep.to_dict(), rep.passed


IDENTITIES = ("alon-tarsi", "tarsi", "prop-constant", "coeff-thm", "l2-thm",
              "macwilliams", "penrose", "corpus")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tuttefourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, q_default=3):
        p.add_argument("--graph", help="graph file (vertices/edge lines)")
        p.add_argument("--family", help="built-in family name:m[:n], e.g. cycle:3")
        p.add_argument("--q", type=int, default=q_default)
        p.add_argument("--s", type=int, default=1)
        p.add_argument("--t", type=int, default=1)
        p.add_argument("--g", help="g values, e.g. 1,-1,0")
        p.add_argument("--kernel", default="petersen", choices=("petersen", "score", "prop-constant"))
        p.add_argument("--x")
        p.add_argument("--y")
        p.add_argument("--w")
        p.add_argument("--tol", type=float)
        p.add_argument("--output", help="write JSON here instead of stdout")
        return p

    for name in ("stats", "potts", "chromatic", "tensions", "expand", "l2"):
        common(sub.add_parser(name))
    common(sub.add_parser("tutte")).add_argument("--method", choices=("dc", "subset"), default="dc")
    common(sub.add_parser("flows")).add_argument("--q1", action="store_true", help="(q,1)-flows only")
    common(sub.add_parser("coeff")).add_argument("--a", help="exponent vector, e.g. 1,0,2")
    sub.choices["potts"].add_argument("--matrix", help="edge kernel rows, e.g. 1,2;3,4")
    sub.choices["potts"].add_argument("--probe", type=int, help="run the TG family probe up to m")
    v = common(sub.add_parser("verify"))
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--rotation", help="penrose: incident edges per vertex, e.g. 0,1,2;...")
    v.add_argument("--qs", help="corpus: comma-separated q values")
    v.add_argument("--max-vertices", type=int, default=4)
    v.add_argument("--max-edges", type=int, default=6)
    v.add_argument("--kernels", type=int, default=5, help="corpus: random kernels per graph and q")
    return parser


COMMANDS = {
    "stats": cmd_stats,
    "tutte": cmd_tutte,
    "potts": cmd_potts,
    "chromatic": cmd_chromatic,
    "tensions": cmd_tensions,
    "flows": cmd_flows,
    "expand": cmd_expand,
    "l2": cmd_l2,
    "coeff": cmd_coeff,
}


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        tol = args.tol if args.tol is not None else float(os.environ.get(TOL_ENV, REL_TOL))
        ok = True
        if args.command == "verify":
            needs_graph = args.identity not in ("corpus", "penrose") or args.rotation
            G = load_graph(args) if needs_graph else None
            out, ok = cmd_verify(args, G, tol)
        else:
            G = load_graph(args)
            out = COMMANDS[args.command](args, G)
            out = {"graph": describe(G), **out} if args.command == "stats" else out
        text = dumps(out)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text, file=stdout)
        return 0 if ok else 3
    except SizeGuardError as exc:
        print(json.dumps({"error": str(exc), "kind": "size-guard"}), file=stdout)
        return 2
    except (InputError, GraphError, ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc), "kind": "input"}), file=stdout)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
