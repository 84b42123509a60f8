"""Command line: ``pendantpack <command> ...``.

Exit codes: 0 success, 1 usage or unreadable input, 2 precondition
(factor too weak, bad certificate, instance over the oracle bound),
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import platform
import re
import sys
import time
from importlib import metadata
from pathlib import Path

from . import _accel
from .constructor import FactorCertificates, certify, construct, factor_specs
from .digraph import (
    Digraph,
    bidirected_path,
    complete_symmetric,
    directed_cycle,
    directed_path,
    random_strong,
)
from .errors import (
    InstanceTooLarge,
    InternalContractViolation,
    NotArborescence,
    PendantPackError,
    PreconditionViolated,
)
from .maxflow import find_fan, find_iddp
from .oracle import tau3, tau_S_r
from .product import ProductDigraph, cartesian_product
from .trees import (
    OutTree,
    TerminalSpec,
    TreeFamily,
    assemble_tree,
    family_from_dict,
    family_to_dot,
    verify_family,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3

BENCH_COLUMNS = (
    "n", "product_vertices", "product_arcs",
    "flow_s", "lifting_s", "assembly_s", "verification_s", "total_s",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# io helpers


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None


def _load_digraph(path) -> tuple[Digraph, dict]:
    data = _load_json(path)
    return Digraph.from_dict(data), data


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


class Run:
    """Collects inputs, outputs and timings for the manifest."""

    def __init__(self, args, command):
        self.args = args
        self.command = command
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}
        self.timings: dict[str, float] = {}
        self.t0 = time.perf_counter()

    def read(self, path):
        self.inputs[str(path)] = _sha256(path)
        return path

    def emit(self, text: str, path=None):
        """Write to ``path`` (or ``--out``), else stdout."""
        target = path or self.args.out
        if target is None:
            sys.stdout.write(text)
            return
        Path(target).write_text(text)
        self.outputs[str(target)] = _sha256(target)

    def manifest(self, extra=None):
        if self.args.out is None:
            return
        self.timings.setdefault("total_s", time.perf_counter() - self.t0)
        data = {
            "command": self.command,
            "argv": sys.argv[1:],
            "seed": self.args.seed,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "versions": _versions(),
            "timings": self.timings,
        }
        if extra:
            data.update(extra)
        Path(str(self.args.out) + ".manifest.json").write_text(_dump(data))


def _versions() -> dict:
    out = {"python": platform.python_version(), "backend": _accel.BACKEND}
    for dist in ("artifact", "numpy", "numba"):
        try:
            out[dist] = metadata.version(dist)
        except metadata.PackageNotFoundError:
            out[dist] = None
    return out


_PAIR = re.compile(r"^\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$")


def parse_terminal(token: str, dims: tuple[int, int] | None) -> int:
    """A flat id like ``7`` or a coordinate pair like ``(1,3)``."""
    token = token.strip()
    if token.isdigit():
        return int(token)
    m = _PAIR.match(token)
    if not m:
        raise UsageError(f"cannot parse terminal {token!r}; use a flat id or (i,j)")
    if dims is None:
        raise UsageError(f"terminal {token!r} given as a pair but the host has no factor sizes")
    i, j = int(m.group(1)), int(m.group(2))
    n, k = dims
    if not (0 <= i < n and 0 <= j < k):
        raise UsageError(f"terminal {token!r} outside the {n}x{k} product")
    return i * k + j


def parse_spec(tokens, dims) -> TerminalSpec:
    """Three terminals; the first one is the root."""
    if len(tokens) != 3:
        raise UsageError(f"need exactly three terminals, got {len(tokens)}")
    ts = [parse_terminal(t, dims) for t in tokens]
    if len(set(ts)) != 3:
        raise UsageError(f"terminals must be distinct, got {ts}")
    return TerminalSpec(tuple(ts), ts[0])


def _dims(data: dict):
    sizes = data.get("factor_sizes")
    return tuple(sizes) if sizes else None


# commands


def cmd_gen(args, run: Run):
    kind, params = args.kind, args.params
    try:
        if kind == "random-strong":
            if len(params) != 2:
                raise UsageError("random-strong takes N and P")
            g = random_strong(int(params[0]), float(params[1]), args.seed)
        else:
            if len(params) != 1:
                raise UsageError(f"{kind} takes one size parameter")
            size = int(params[0])
            g = {
                "bipath": bidirected_path,
                "dipath": directed_path,
                "dicycle": directed_cycle,
                "complete-sym": complete_symmetric,
            }[kind](size)
    except ValueError as exc:
        if isinstance(exc, PendantPackError):
            raise
        raise UsageError(f"bad parameter: {exc}") from None
    run.emit(g.to_dot() if args.format == "dot" else _dump(g.to_dict()))
    run.manifest({"kind": kind, "params": params})
    return EXIT_OK


def cmd_product(args, run: Run):
    d, _ = _load_digraph(run.read(args.d_file))
    h, _ = _load_digraph(run.read(args.h_file))
    p = cartesian_product(d, h)
    if args.format == "dot":
        run.emit(p.graph.to_dot("product"))
    else:
        data = p.graph.to_dict()
        data["factor_sizes"] = [p.n, p.m]
        run.emit(_dump(data))
    run.manifest()
    return EXIT_OK


def _read_certificate(path, g: Digraph, run: Run):
    data = _load_json(run.read(path))
    try:
        ell = int(data["tau3"])
        trees = [OutTree.from_dict(t, g) for t in data.get("trees", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionViolated(f"certificate {path} is malformed: {exc}") from None
    return ell, trees


def _swap(p: ProductDigraph, swapped: ProductDigraph, v: int) -> int:
    i, j = p.decode(v)
    return swapped.encode(j, i)


def cmd_construct(args, run: Run):
    d, _ = _load_digraph(run.read(args.d_file))
    h, _ = _load_digraph(run.read(args.h_file))
    p = cartesian_product(d, h)
    spec = parse_spec(args.terminals, (p.n, p.m))
    for t in spec.terminals:
        if t >= p.graph.n:
            raise UsageError(f"terminal {t} outside the product ({p.graph.n} vertices)")
    work_d, work_h, work_p, work_spec = d, h, p, spec
    if args.swap_factors:
        work_d, work_h = h, d
        work_p = cartesian_product(h, d)
        work_spec = TerminalSpec(
            tuple(_swap(p, work_p, t) for t in spec.terminals), _swap(p, work_p, spec.root)
        )
    t0 = time.perf_counter()
    ell = hh = None
    d_trees = h_trees = None
    d_cert, h_cert = (args.h_cert, args.d_cert) if args.swap_factors else (args.d_cert, args.h_cert)
    d_spec, h_spec = factor_specs(work_p, work_spec)
    try:
        if d_cert:
            ell, d_trees = _read_certificate(d_cert, work_d, run)
        if h_cert:
            hh, h_trees = _read_certificate(h_cert, work_h, run)
    except NotArborescence as exc:
        raise PreconditionViolated(f"certificate tree rejected: {exc}") from None
    ell = args.ell if args.ell is not None else ell
    hh = args.h if args.h is not None else hh
    if ell is None or hh is None or (d_spec is not None and d_trees is None) or (h_spec is not None and h_trees is None):
        try:
            auto = certify(work_d, work_h, work_p, work_spec, ell, hh, force=args.force)
        except InstanceTooLarge as exc:
            raise PreconditionViolated(f"no certificate given and the oracle refuses: {exc}") from None
        ell, hh = auto.ell, auto.h
        d_trees = d_trees if d_trees is not None else auto.d_trees
        h_trees = h_trees if h_trees is not None else auto.h_trees
    certs = FactorCertificates(ell, hh, d_trees, h_trees)
    run.timings["certify_s"] = time.perf_counter() - t0
    try:
        family, trace = construct(work_d, work_h, work_p, work_spec, certs)
    except InternalContractViolation as exc:
        if exc.trace is not None:
            sys.stderr.write(_dump(exc.trace.to_dict()))
        raise
    run.timings.update({f"{k}_s": v for k, v in trace.timings.items()})
    if args.swap_factors:
        trees = []
        for t in family.trees:
            arcs = [(_swap(work_p, p, u), _swap(work_p, p, v)) for u, v in t.arcs]
            trees.append(assemble_tree(p.graph, spec.root, arcs))
        family = TreeFamily(p.graph, spec, trees)
    report = verify_family(family)
    if args.format == "dot":
        run.emit(family_to_dot(family, labels=lambda v: str(p.decode(v))))
    else:
        run.emit(_dump({"spec": spec.to_dict(), "trees": family.to_list()}))
    if args.out is not None or args.trace:
        trace_path = args.trace or str(args.out) + ".trace.json"
        run.emit(_dump(trace.to_dict()), trace_path)
    run.manifest({"spec": spec.to_dict(), "ell": ell, "h": hh, "case": trace.case})
    if not report.valid:
        sys.stderr.write(_dump(report.to_dict()))
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args, run: Run):
    host, data = _load_digraph(run.read(args.host_file))
    fam_data = _load_json(run.read(args.family_file))
    spec = parse_spec(args.terminals, _dims(data)) if args.terminals else None
    try:
        family = family_from_dict(fam_data, host, spec)
    except NotArborescence as exc:
        report = {"valid": False, "size": None, "assembly": {"condition": exc.condition, "witness": exc.witness}}
        run.emit(_dump(report))
        return EXIT_VERIFY
    report = verify_family(family)
    run.emit(_dump(report.to_dict()))
    run.manifest()
    return EXIT_OK if report.valid else EXIT_VERIFY


def cmd_tau3(args, run: Run):
    host, _ = _load_digraph(run.read(args.host_file))
    t0 = time.perf_counter()
    result = tau3(host, force=args.force, workers=args.workers)
    run.timings["oracle_s"] = time.perf_counter() - t0
    run.emit(_dump(result.to_dict()))
    run.manifest()
    return EXIT_OK


def cmd_tau_sr(args, run: Run):
    host, data = _load_digraph(run.read(args.host_file))
    spec = parse_spec(args.terminals, _dims(data))
    result = tau_S_r(host, spec, force=args.force)
    run.emit(_dump(result.to_dict()))
    run.manifest()
    return EXIT_OK


def cmd_iddp(args, run: Run):
    g, _ = _load_digraph(run.read(args.file))
    paths = find_iddp(g, args.u, args.v, args.l)
    run.emit(_dump({"paths": [list(pth.vertices) for pth in paths]}))
    run.manifest()
    return EXIT_OK


def cmd_fan(args, run: Run):
    g, _ = _load_digraph(run.read(args.file))
    fan = find_fan(g, args.z, args.u)
    run.emit(_dump({"target": fan.target, "paths": [list(pth.vertices) for pth in fan.paths]}))
    run.manifest()
    return EXIT_OK


def cmd_export_dot(args, run: Run):
    host, data = _load_digraph(run.read(args.host_file))
    if args.family_file:
        fam = family_from_dict(_load_json(run.read(args.family_file)), host)
        dims = _dims(data)
        labels = (lambda v: str(divmod(v, dims[1]))) if dims else None
        run.emit(family_to_dot(fam, labels=labels))
    else:
        run.emit(host.to_dot())
    run.manifest()
    return EXIT_OK


def bench_rows(sizes, repeats: int = 3) -> list[dict]:
    """Best-of-``repeats`` phase timings for ``construct`` on K_n x K_n with
    terminals in three distinct rows and columns."""
    rows = []
    for n in sizes:
        if n < 4:
            raise UsageError(f"bench sizes must be >= 4, got {n}")
        k = complete_symmetric(n)
        p = cartesian_product(k, k)
        spec = TerminalSpec((p.encode(0, 0), p.encode(1, 1), p.encode(2, 2)), p.encode(0, 0))
        best = None
        for _ in range(max(1, repeats)):
            t0 = time.perf_counter()
            certs = certify(k, k, p, spec)
            _, trace = construct(k, k, p, spec, certs)
            total = time.perf_counter() - t0
            sample = dict(trace.timings, total=total)
            if best is None or sample["total"] < best["total"]:
                best = sample
        rows.append(
            {
                "n": n,
                "product_vertices": p.graph.n,
                "product_arcs": len(p.graph.arcs),
                "flow_s": best["flow"],
                "lifting_s": best["lifting"],
                "assembly_s": best["assembly"],
                "verification_s": best["verification"],
                "total_s": best["total"],
            }
        )
    return rows


def cmd_bench(args, run: Run):
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    rows = bench_rows(sizes, args.repeats)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in row.items()})
    run.emit(buf.getvalue())
    run.manifest({"sizes": sizes})
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--out", default=None, help="output file (default stdout); also writes <out>.manifest.json")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--force", action="store_true", help="run the oracle above its size bound")

    parser = _Parser(prog="pendantpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a digraph")
    g.add_argument("kind", choices=("bipath", "dipath", "dicycle", "complete-sym", "random-strong"))
    g.add_argument("params", nargs="+")
    g.set_defaults(func=cmd_gen)

    pr = sub.add_parser("product", parents=[common], help="Cartesian product of two digraph files")
    pr.add_argument("d_file")
    pr.add_argument("h_file")
    pr.set_defaults(func=cmd_product)

    c = sub.add_parser("construct", parents=[common], help="build l+h disjoint pendant trees in D x H")
    c.add_argument("d_file")
    c.add_argument("h_file")
    c.add_argument("terminals", nargs=3, help="root first; flat ids or (i,j) pairs")
    c.add_argument("--d-cert", help='JSON {"tau3": l, "trees": [...]} for D')
    c.add_argument("--h-cert", help='JSON {"tau3": h, "trees": [...]} for H')
    c.add_argument("--ell", type=int, help="override tau_3(D)")
    c.add_argument("--h", type=int, help="override tau_3(H)")
    c.add_argument("--trace", help="trace JSON path (default <out>.trace.json)")
    c.add_argument("--swap-factors", action="store_true", help="run with the factor roles exchanged")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a family of pendant trees")
    v.add_argument("host_file")
    v.add_argument("family_file")
    v.add_argument("--terminals", nargs=3, help="spec when the family file carries none")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tau3", parents=[common], help="exact tau_3 (small hosts)")
    t.add_argument("host_file")
    t.add_argument("--workers", type=int, default=1)
    t.set_defaults(func=cmd_tau3)

    ts = sub.add_parser("tau-sr", parents=[common], help="exact tau_{S,r} for one spec")
    ts.add_argument("host_file")
    ts.add_argument("terminals", nargs=3, help="root first")
    ts.set_defaults(func=cmd_tau_sr)

    i = sub.add_parser("iddp", parents=[common], help="internally disjoint u->v paths")
    i.add_argument("file")
    i.add_argument("u", type=int)
    i.add_argument("v", type=int)
    i.add_argument("l", type=int)
    i.set_defaults(func=cmd_iddp)

    f = sub.add_parser("fan", parents=[common], help="fan from Z into u")
    f.add_argument("file")
    f.add_argument("u", type=int)
    f.add_argument("z", type=int, nargs="+")
    f.set_defaults(func=cmd_fan)

    e = sub.add_parser("export-dot", parents=[common], help="DOT for a host, optionally with a family")
    e.add_argument("host_file")
    e.add_argument("family_file", nargs="?")
    e.set_defaults(func=cmd_export_dot)

    b = sub.add_parser("bench", parents=[common], help="phase timings on K_n x K_n as CSV")
    b.add_argument("--sizes", default="5,10,15,20")
    b.add_argument("--repeats", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already printed
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    run = Run(args, args.command)
    try:
        return args.func(args, run)
    except UsageError as exc:
        sys.stderr.write(f"pendantpack: {exc}\n")
        return EXIT_USAGE
    except (PreconditionViolated, InstanceTooLarge) as exc:
        sys.stderr.write(f"pendantpack: precondition: {exc}\n")
        return EXIT_PRECONDITION
    except InternalContractViolation as exc:
        sys.stderr.write(f"pendantpack: verification: {exc}\n")
        return EXIT_VERIFY
    except PendantPackError as exc:
        sys.stderr.write(f"pendantpack: {exc.code}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"pendantpack: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
