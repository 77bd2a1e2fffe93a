"""Command line interface: ``polyid <command> [FILE ...]``.

Exit codes: 0 success, 1 bad input, 2 instance out of scope, 3 Groebner
budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import DEFAULT_BUDGET
from .errors import (
    BoundaryTouch,
    IoFailure,
    NotConvex,
    OutOfScope,
    PolyidError,
    ResourceLimit,
)
from .grid import Polyomino, classify, components, corner_report
from .instance import Instance, emit_instance, parse_instance, random_instance
from .intervals import lambda_family, special_interval
from .render import render_svg
from .toric import (
    build_toric_map,
    inner_minor_generators,
    markov_basis,
    vertex_universe,
    verify_theorem,
)

EXIT_OK, EXIT_INPUT, EXIT_SCOPE, EXIT_LIMIT = 0, 1, 2, 3


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def load(path: str) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance(text, name=Path(path).stem)


def resolve_context(inst: Instance, simple: bool):
    """Context for the interval family, or None for the simple-polyomino route."""
    p = inst.polyomino
    if simple:
        if not classify(p).simple:
            raise OutOfScope("--simple given but the polyomino has a hole")
        return None
    if inst.q is not None:
        rect, q = inst.rect, inst.q
    else:
        rect = p.bounding_box
        missing = frozenset(rect.cells()) - p.cells
        if not missing:
            raise OutOfScope("nothing removed from the rectangle; use --simple")
        if len(components(missing)) != 1:
            raise OutOfScope("removed cells do not form one polyomino")
        q = Polyomino(missing)
    try:
        special_interval(rect, q)
    except (BoundaryTouch, NotConvex) as exc:
        raise OutOfScope(f"{exc}; use --simple for simple polyominoes") from exc
    return rect, q


def budget_from(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("POLYID_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def header(inst: Instance) -> list[str]:
    return [f"instance: {inst.name}", f"cells: {len(inst.polyomino)}"]


def cmd_classify(inst: Instance, args) -> str:
    flags = classify(inst.polyomino)
    rep = corner_report(inst.polyomino)
    lines = header(inst)
    lines += [f"{k}: {yes_no(v)}" for k, v in flags.as_dict().items()]
    lines += [
        f"outside_corners: {len(rep.outside)}",
        f"inside_corners: {len(rep.inside)}",
        f"interior_vertices: {len(rep.interior)}",
        f"boundary_vertices: {len(rep.boundary)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_minors(inst: Instance, args) -> str:
    uni = vertex_universe(inst.polyomino)
    gens = inner_minor_generators(inst.polyomino)
    lines = [f"# {len(gens)} inner minors"] + [g.render(uni) for g in gens]
    return "\n".join(lines) + "\n"


def _lambda(inst: Instance, args):
    return lambda_family(inst.polyomino, resolve_context(inst, args.simple))


def cmd_lambda(inst: Instance, args) -> str:
    lam = _lambda(inst, args)
    lines = [f"# |Lambda| = {len(lam)}"]
    lines += [f"u[{k}] = {lam.label(k)}" for k in range(len(lam))]
    return "\n".join(lines) + "\n"


def cmd_alpha(inst: Instance, args) -> str:
    t = build_toric_map(inst.polyomino, _lambda(inst, args))
    uni = t.u_universe
    lines = [f"x[{v.x},{v.y}] -> {t.alpha[v].render(uni)}" for v in t.vertices]
    return "\n".join(lines) + "\n"


def cmd_markov(inst: Instance, args) -> str:
    t = build_toric_map(inst.polyomino, _lambda(inst, args))
    mb = markov_basis(t, budget_from(args))
    uni = t.universe
    lines = [f"# {len(mb.binomials)} generators, lattice rank {len(mb.lattice.vectors)}"]
    lines += [g.render(uni) for g in mb.binomials]
    return "\n".join(lines) + "\n"


def cmd_verify(inst: Instance, args) -> str:
    p = inst.polyomino
    lam = _lambda(inst, args)
    cert = verify_theorem(p, lam, budget_from(args))
    flags = classify(p)
    lines = header(inst) + [
        f"simple: {yes_no(flags.simple)}",
        f"mode: {'simple' if lam.special is None else 'rectangle-minus-convex'}",
    ]
    text = "\n".join(lines) + "\n" + cert.report()
    if args.timings:
        text += f"seconds: {cert.seconds:.3f}\n"
    return text


COMMANDS = {
    "classify": cmd_classify,
    "minors": cmd_minors,
    "lambda": cmd_lambda,
    "alpha": cmd_alpha,
    "markov": cmd_markov,
    "verify": cmd_verify,
}


def run_one(command: str, path: str, args) -> tuple[int, str, str]:
    """Run one command on one file; returns (exit code, stdout, stderr)."""
    try:
        inst = load(path)
        return EXIT_OK, COMMANDS[command](inst, args), ""
    except OutOfScope as exc:
        return EXIT_SCOPE, "", f"{path}: out of scope: {exc}\n"
    except ResourceLimit as exc:
        return EXIT_LIMIT, "", f"{path}: {exc}\n"
    except PolyidError as exc:
        return EXIT_INPUT, "", f"{path}: {type(exc).__name__}: {exc}\n"


def _worker(job):
    command, path, args = job
    return run_one(command, path, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyid", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted([*COMMANDS, "random", "render"]))
    ap.add_argument("files", nargs="*", metavar="FILE")
    ap.add_argument("--simple", action="store_true", help="use the simple-polyomino interval family")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--rect", default="5x5", help="MxN cells for 'random' (width x height)")
    ap.add_argument("--budget", type=int, default=None, help="S-pair budget (env POLYID_BUDGET)")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timings", action="store_true", help="append wall-clock seconds to verify reports")
    ap.add_argument("-o", "--out", default=None)
    return ap


def write_out(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc.strerror}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    try:
        if args.command == "random":
            try:
                w, h = (int(v) for v in args.rect.lower().split("x"))
            except ValueError:
                raise PolyidError(f"--rect expects MxN, got {args.rect!r}") from None
            write_out(emit_instance(random_instance(w, h, args.seed)), args.out)
            return EXIT_OK
        if not args.files:
            raise PolyidError(f"'{args.command}' needs at least one FILE")
        if args.command == "render":
            inst = load(args.files[0])
            try:
                lam = lambda_family(inst.polyomino, resolve_context(inst, args.simple))
            except OutOfScope:
                lam = lambda_family(inst.polyomino)
            write_out(render_svg(inst.polyomino, lam), args.out)
            return EXIT_OK
    except PolyidError as exc:
        sys.stderr.write(f"polyid: {exc}\n")
        return EXIT_INPUT

    jobs = [(args.command, path, args) for path in args.files]
    started = time.perf_counter()
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(job) for job in jobs]
    code = EXIT_OK
    chunks = []
    for status, out, err in results:
        if err:
            sys.stderr.write(err)
        chunks.append(out)
        code = max(code, status)
    text = ("\n" if len(chunks) > 1 else "").join(c for c in chunks if c)
    try:
        write_out(text, args.out)
    except IoFailure as exc:
        sys.stderr.write(f"polyid: {exc}\n")
        return EXIT_INPUT
    if args.timings:
        sys.stderr.write(f"total seconds: {time.perf_counter() - started:.3f}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
