"""Command-line surface: inspect codes, build systems, run verifications.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error, 3 resource guard exceeded.  JSON output carries a top-level
"schema_version": 1; per-check timing fields are informational and not
part of the deterministic surface.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import codes as codes_mod
from . import laurent as laurent_mod
from . import rigidity as rigidity_mod
from . import windows as windows_mod
from .codes import BinaryCode
from .errors import (
    CodeFileError,
    DegenerateCodeError,
    GuardExceededError,
    UnsupportedDimensionError,
)
from .windows import WindowConfig, cube

__all__ = ["main", "build_parser"]

SCHEMA_VERSION = 1


def _load_code(path: str) -> BinaryCode:
    with open(path, "r", encoding="ascii") as fh:
        return codes_mod.parse_generator_file(fh.read())


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _emit_json(args: argparse.Namespace, payload: dict) -> None:
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    _emit(args, json.dumps(body, indent=2))


def _guard_kwargs(args: argparse.Namespace) -> dict:
    out = {}
    if getattr(args, "max_sites", None) is not None:
        out["max_sites"] = args.max_sites
    return out


def cmd_inspect(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    dual = codes_mod.dual(code)
    cert = codes_mod.is_integrally_nondegenerate(code)
    info = {
        "length": code.length,
        "dim": code.dim,
        "generators": [str(v) for v in code.basis.row_vectors()],
        "weight_class": codes_mod.weight_class(code),
        "self_orthogonal": codes_mod.is_self_orthogonal(code),
        "self_dual": dual == code,
        "contains_all_ones": codes_mod.contains_all_ones(code),
        "dual_dim": dual.dim,
        "integrally_nondegenerate": cert.verdict,
        "kernel_witness": None if cert.verdict else list(cert.kernel_witness),
    }
    if args.json:
        _emit_json(args, info)
        return 0
    lines = [
        f"length: {info['length']}",
        f"dim: {info['dim']}",
        f"weight class: {info['weight_class']}",
        f"self-orthogonal: {_yn(info['self_orthogonal'])}",
        f"self-dual: {_yn(info['self_dual'])}",
        f"contains all-ones: {_yn(info['contains_all_ones'])}",
        f"dual dim: {info['dual_dim']}",
    ]
    if cert.verdict:
        lines.append("integrally non-degenerate: yes")
    else:
        witness = ",".join(str(x) for x in cert.kernel_witness)
        lines.append(f"integrally non-degenerate: no, kernel witness ({witness})")
    _emit(args, "\n".join(lines))
    return 0


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_dual(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    d = codes_mod.dual(code)
    if args.json:
        _emit_json(
            args,
            {
                "length": d.length,
                "dim": d.dim,
                "generators": [str(v) for v in d.basis.row_vectors()],
            },
        )
    else:
        _emit(args, codes_mod.render_generator_file(d, header=f"dual, dim {d.dim}").rstrip("\n"))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    with open(args.configfile, "r", encoding="utf-8") as fh:
        config = WindowConfig.from_json_dict(json.load(fh))
    space = windows_mod.build_window_space(config.box, code, **_guard_kwargs(args))
    ok = windows_mod.contains(space, config)
    if args.json:
        _emit_json(
            args,
            {
                "valid": ok,
                "box": {"lower": list(config.box.lower), "upper": list(config.box.upper)},
                "constraint_rank": space.rank,
            },
        )
    else:
        _emit(args, "VALID" if ok else "INVALID")
    return 0 if ok else 1


def cmd_construct(args: argparse.Namespace) -> int:
    system = rigidity_mod.construct_system(args.d)
    if args.json:
        _emit_json(args, rigidity_mod.describe_system(system))
        return 0
    lines = [f"dimension: {system.d}", f"code (dim {system.code.dim}):"]
    lines.extend("  " + str(v) for v in system.code.basis.row_vectors())
    lines.append(f"product code (dim {system.product_code.dim}):")
    lines.extend("  " + str(v) for v in system.product_code.basis.row_vectors())
    _emit(args, "\n".join(lines))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = rigidity_mod.run_full_verification(
        args.d,
        box_size=args.box,
        samples=args.samples,
        seed=args.seed,
        **_guard_kwargs(args),
    )
    if args.json:
        _emit_json(args, report.to_dict())
    else:
        lines = []
        for check in report.checks:
            tag = "PASS" if check.passed else "FAIL"
            lines.append(f"{tag} {check.name} ({check.millis:.1f} ms)")
            if not check.passed and check.witness is not None:
                lines.append(f"     witness: {check.witness}")
        verdict = "PASS" if report.passed else "FAIL"
        lines.append(f"RESULT: {verdict} ({len(report.checks)} checks, d={args.d})")
        _emit(args, "\n".join(lines))
    return 0 if report.passed else 1


def cmd_entropy(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    sizes = list(range(2, args.box + 1)) or [args.box]
    profile = windows_mod.entropy_profile(code, sizes, **_guard_kwargs(args))
    verdict = laurent_mod.entropy_verdict(code)
    if args.json:
        _emit_json(
            args,
            {
                "sizes": sizes,
                "ratios": [str(v) for v in profile],
                "verdict": verdict,
            },
        )
        return 0
    lines = []
    for n, ratio in zip(sizes, profile):
        sites = n**code.length
        lines.append(f"N={n}: log2 count {ratio * sites} over {sites} sites = {ratio}")
    lines.append(f"verdict: {verdict}")
    _emit(args, "\n".join(lines))
    return 0


def _parse_int_csv(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def cmd_mixing_witness(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    n = _parse_int_csv(args.n)
    if len(n) != code.length:
        raise ValueError(f"n has {len(n)} entries, the code has length {code.length}")
    if not any(n):
        raise ValueError("n must be nonzero")
    try:
        w = laurent_mod.mixing_certificate(code, n)
    except DegenerateCodeError as exc:
        witness = list(exc.kernel_witness) if exc.kernel_witness is not None else None
        if args.json:
            _emit_json(
                args,
                {"n": list(n), "degenerate": True, "kernel_witness": witness},
            )
        else:
            _emit(args, f"degenerate code, kernel witness {tuple(witness or ())}")
        return 1
    b = codes_mod.support_sum(n, w)
    if args.json:
        _emit_json(
            args,
            {
                "n": list(n),
                "degenerate": False,
                "witness": str(w),
                "support_sum": b,
            },
        )
    else:
        _emit(args, f"witness codeword {w} with support sum {b}")
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    space = windows_mod.build_window_space(
        cube(code.length, args.box), code, **_guard_kwargs(args)
    )
    config = windows_mod.sample(space, args.seed)
    if args.json:
        payload = config.to_json_dict()
        payload["seed"] = args.seed
        payload["log2_count"] = windows_mod.log2_count(space)
        _emit_json(args, payload)
    else:
        _emit(args, config.to_bit_string())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starshift",
        description="Binary-code group shifts: window engines and symmetry verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, guard: bool = False) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("-o", dest="output", metavar="PATH", help="write the report to a file")
        if guard:
            p.add_argument(
                "--max-sites", type=int, default=None, help="override the site-count guard"
            )

    p = sub.add_parser("inspect", help="report the basic facts of a code file")
    p.add_argument("codefile")
    common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("dual", help="print the dual code")
    p.add_argument("codefile")
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("check", help="check a window configuration against a code")
    p.add_argument("codefile")
    p.add_argument("configfile", help="JSON window configuration")
    common(p, guard=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="print the standard code pair for a dimension")
    p.add_argument("-d", type=int, required=True, help="dimension, at least 8")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the full verification suite for a dimension")
    p.add_argument("-d", type=int, required=True, help="dimension, at least 8")
    p.add_argument("--box", type=int, default=2, help="box side length (default 2)")
    p.add_argument("--samples", type=int, default=100, help="sampled triples (default 100)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common(p, guard=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("entropy", help="per-site log-count profile of a code")
    p.add_argument("codefile")
    p.add_argument("--box", type=int, default=3, help="largest box side (default 3)")
    common(p, guard=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("mixing-witness", help="separating codeword for an integer vector")
    p.add_argument("codefile")
    p.add_argument("--n", required=True, help="comma-separated integers, one per coordinate")
    common(p)
    p.set_defaults(func=cmd_mixing_witness)

    p = sub.add_parser("sample", help="draw a seeded uniform window solution")
    p.add_argument("codefile")
    p.add_argument("--box", type=int, default=2, help="box side length (default 2)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common(p, guard=True)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CodeFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
