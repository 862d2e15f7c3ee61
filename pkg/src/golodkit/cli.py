"""Command-line interface: ideal files in, JSON or text reports out.

Exit codes: 0 success, 1 a requested check evaluated false, 2 parse or usage
error, 3 valid but unsupported input, 4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import permutations

from . import __version__
from .dcalc import Permutation, d_ideal
from .errors import (
    DegreeBoundError,
    GolodkitError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedInputError,
)
from .golod import (
    check_d_sigma_golod,
    check_strongly_d_golod,
    stretched_ideal,
    stretched_permutation,
    sum_family_ideal,
)
from .groebner import IdealGens
from .koszul import build_chain, cycle_dump, verify_basis, verify_zero_map
from .monomial import (
    MonomialIdeal,
    integral_closure,
    mi_colon,
    mi_intersect,
    mi_power,
    mi_saturate,
    symbolic_power,
)
from .parser import format_ideal_file, parse_ideal_file
from .poincare import golod_equality, poincare_k, serre_bound
from .randgen import random_monomial
from .resolution import betti_numbers, minimalize, parse_complex, taylor_complex
from .ring import GF, PolyRing, QQ

SCHEMA_VERSION = 1

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "golodkit report",
    "type": "object",
    "required": [
        "schema_version", "command", "inputs", "results",
        "checks", "timings", "tool_version", "seed",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "details"],
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "details": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
        "tool_version": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)
    seed: int | None = None
    json_output: bool = False  # presentation flag, not part of the report body

    def add_check(self, name: str, passed: bool, details: str = ""):
        self.checks.append({"name": name, "passed": bool(passed), "details": details})

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "timings": self.timings,
            "tool_version": __version__,
            "seed": self.seed,
        }


def _ideal_strs(ideal) -> list:
    if isinstance(ideal, MonomialIdeal):
        return [str(p) for p in ideal.as_polys()]
    return [str(f) for f in ideal.gens]


def _series_dict(series) -> dict:
    return {"trunc": series.trunc, "coeffs": list(series.coeffs)}


def _parse_perm(text: str, n: int) -> Permutation:
    if text == "reverse":
        return Permutation.reversal(n)
    if text == "id":
        return Permutation.identity(n)
    try:
        images = [int(t) for t in text.split(",")]
    except ValueError:
        raise PreconditionError(f"bad permutation {text!r}") from None
    return Permutation(images)


def _load_ideal(path: str, field_tag: str | None):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if field_tag:
        lines = text.splitlines()
        for k, line in enumerate(lines):
            if line.strip() and not line.strip().startswith("#"):
                head = line.strip()
                bracket = head.index("[")
                lines[k] = f"ring {field_tag}{head[bracket:]}"
                break
        text = "\n".join(lines)
    return parse_ideal_file(text)


def _field_from_tag(tag: str):
    if tag == "Q":
        return QQ
    if tag.startswith("F"):
        return GF(int(tag[1:]))
    raise PreconditionError(f"unknown field {tag!r}; use Q or F<p>")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GOLODKIT_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# command implementations; each returns (exit_code, report)


def cmd_d_ideal(args, report):
    ring, ideal, meta = _load_ideal(args.file, args.field)
    sigma = _perm_for(args, meta, ring.n)
    target = ideal.as_monomial_ideal() or ideal
    D = d_ideal(target, sigma)
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.inputs["perm"] = str(sigma)
    report.results["d_ideal"] = _ideal_strs(D)
    return 0


def _perm_for(args, meta, n):
    if getattr(args, "perm", None):
        return _parse_perm(args.perm, n)
    if "perm" in meta:
        return meta["perm"]
    return Permutation.identity(n)


def cmd_check(args, report):
    ring, ideal, meta = _load_ideal(args.file, args.field)
    target = ideal.as_monomial_ideal() or ideal
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.inputs["mode"] = args.mode
    if args.mode == "strong":
        threads = _threads()
        if threads > 1 and isinstance(target, IdealGens):
            cert = _threaded_strong(target, threads)
        else:
            cert = check_strongly_d_golod(target)
        name = "strongly-d-Golod"
    else:
        sigma = Permutation.identity(ring.n) if args.mode == "d" else _perm_for(args, meta, ring.n)
        cert = check_d_sigma_golod(target, sigma)
        report.inputs["perm"] = str(sigma)
        name = "d-Golod" if args.mode == "d" else "d-sigma-Golod"
    report.results["holds"] = cert.holds
    report.results["d_gens"] = [str(p) for p in cert.d_gens]
    if cert.witness is not None:
        report.results["witness"] = str(cert.witness)
        report.results["witness_factors"] = [str(p) for p in cert.witness_factors]
    report.add_check(name, cert.holds, cert.describe())
    return 0 if cert.holds else 1


def _threaded_strong(ideal, threads):
    perms = [Permutation(p) for p in permutations(range(1, ideal.ring.n + 1))]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        certs = list(pool.map(lambda s: check_d_sigma_golod(ideal, s), perms))
    for cert in certs:
        if not cert.holds:
            from .golod import GolodCertificate

            return GolodCertificate(ideal, "all", False, cert.d_gens,
                                    cert.witness, cert.witness_factors)
    from .golod import GolodCertificate

    return GolodCertificate(ideal, "all", True)


def _monomial_or_unsupported(ideal, what: str) -> MonomialIdeal:
    mono = ideal if isinstance(ideal, MonomialIdeal) else ideal.as_monomial_ideal()
    if mono is None:
        raise UnsupportedInputError(f"{what} requires a monomial ideal")
    return mono


def cmd_betti(args, report):
    _, ideal, _ = _load_ideal(args.file, args.field)
    mono = _monomial_or_unsupported(ideal, "betti")
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.results["betti"] = list(betti_numbers(mono))
    return 0


def _resolution_for(args, ideal):
    if getattr(args, "complex", None):
        with open(args.complex, "r", encoding="utf-8") as fh:
            return parse_complex(fh.read())
    mono = _monomial_or_unsupported(
        ideal, "resolution-backed commands (supply --complex otherwise)"
    )
    return minimalize(taylor_complex(mono))


def cmd_koszul_cycles(args, report):
    _, ideal, _ = _load_ideal(args.file, args.field)
    C = _resolution_for(args, ideal)
    report.inputs["ideal"] = _ideal_strs(ideal)
    dump = cycle_dump(C, args.i)
    report.results["cycles"] = dump.splitlines()
    report.results["betti"] = list(C.ranks)
    return 0


def cmd_verify(args, report):
    ring, ideal, meta = _load_ideal(args.file, args.field)
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.inputs["what"] = args.what
    if args.what == "chain":
        C = _resolution_for(args, ideal)
        count = 0
        for i in range(1, C.length + 1):
            for j in range(1, C.ranks[i] + 1):
                build_chain(C, i, j)  # raises on any identity failure
                count += 1
        report.results["chains_verified"] = count
        report.add_check("chain-identities", True, f"{count} chains verified exactly")
        return 0
    mono = _monomial_or_unsupported(ideal, f"verify --what {args.what}")
    if args.what == "basis":
        rep = verify_basis(mono)
        report.results["betti"] = list(rep.betti)
        report.results["homology"] = list(rep.homology)
        report.add_check("cycle-basis", rep.ok, "; ".join(rep.failures) or "basis confirmed")
        return 0 if rep.ok else 1
    sigma = _perm_for(args, meta, ring.n)
    rep = verify_zero_map(mono, sigma)
    report.inputs["perm"] = str(sigma)
    report.results["coefficients_checked"] = len(rep.entries)
    report.add_check(
        "zero-map", rep.ok,
        f"{len(rep.entries)} cycle coefficients lie in d_sigma(I)",
    )
    return 0


def _progress(message: str):
    print(message, file=sys.stderr)


def cmd_poincare(args, report):
    ring, ideal, _ = _load_ideal(args.file, args.field)
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.inputs["trunc"] = args.trunc
    target = ideal.as_monomial_ideal() or ideal
    pk = poincare_k(target, args.trunc, args.trunc, progress=_progress)
    report.results["poincare"] = _series_dict(pk.series)
    report.results["complete"] = not pk.partial
    if pk.degree_bound is not None:
        report.results["internal_degree_bound"] = pk.degree_bound
    if args.serre or args.golod_eq:
        mono = _monomial_or_unsupported(ideal, "--serre/--golod-eq")
        if args.serre:
            report.results["serre"] = _series_dict(
                serre_bound(betti_numbers(mono), ring.n, args.trunc)
            )
        if args.golod_eq:
            eq = golod_equality(target, args.trunc)
            report.results["golod_eq"] = {
                "equal_up_to": eq.equal_up_to,
                "leq_everywhere": eq.leq_everywhere,
                "note": eq.note,
            }
            report.add_check("serre-leq", eq.leq_everywhere,
                             "coefficientwise bound holds")
            report.add_check("golod-equality", eq.equal, eq.note)
            return 0 if eq.equal else 1
    return 0


def cmd_ops(args, report):
    _, ideal, _ = _load_ideal(args.file, args.field)
    mono = _monomial_or_unsupported(ideal, f"ops --op {args.op}")
    report.inputs["ideal"] = _ideal_strs(ideal)
    report.inputs["op"] = args.op
    other = None
    if args.op in ("saturate", "colon", "intersect"):
        if not args.with_file:
            raise PreconditionError(f"--op {args.op} needs --with FILE2")
        _, second, _ = _load_ideal(args.with_file, args.field)
        other = _monomial_or_unsupported(second, "ops")
        if other.ring != mono.ring:
            raise PreconditionError("the two ideals live in different rings")
        report.inputs["with"] = _ideal_strs(other)
    if args.op in ("power", "symbolic") and not args.k:
        raise PreconditionError(f"--op {args.op} needs --k")
    if args.op == "power":
        result = mi_power(mono, args.k)
    elif args.op == "symbolic":
        result = symbolic_power(mono, args.k)
    elif args.op == "saturate":
        result, t0 = mi_saturate(mono, other)
        report.results["t0"] = t0
    elif args.op == "colon":
        result = mi_colon(mono, other)
    elif args.op == "intersect":
        result = mi_intersect(mono, other)
    else:
        result = integral_closure(mono)
    report.results["result"] = _ideal_strs(result)
    report.results["unit_ideal"] = result.is_unit
    return 0


def cmd_fixtures(args, report):
    name = args.name
    field = _field_from_tag(args.field or os.environ.get("GOLODKIT_FIELD", "Q"))
    report.inputs["name"] = name
    if name == "paper-d-example":
        ring = PolyRing(field, ["x1", "x2", "x3", "x4"])
        x1, x2, x3, x4 = (ring.var(i) for i in (1, 2, 3, 4))
        f = x1 ** 2 * x3 + x1 * x2 ** 3 + x2 ** 2 * x3 ** 3 + x3 ** 2 * x4
        from .dcalc import d_all

        values = d_all(f)
        report.results["f"] = str(f)
        report.results["d_values"] = [str(v) for v in values]
        return 0
    if name.startswith("stretched:"):
        parts = name.split(":", 1)[1].split(",")
        artinian = parts[-1].strip() not in ("noart", "nonartinian")
        n = int(parts[0])
        s = int(parts[1]) if artinian else (int(parts[1]) if len(parts) > 2 else 1)
        ideal = stretched_ideal(n, s, artinian, field)
        report.results["ideal_file"] = format_ideal_file(ideal).splitlines()
        report.results["perm"] = str(stretched_permutation(n))
        cert = check_d_sigma_golod(ideal, stretched_permutation(n))
        report.add_check("stretched-d-sigma-Golod", cert.holds, cert.describe())
        return 0 if cert.holds else 1
    if name.startswith("sum-family:"):
        parts = name.split(":", 1)[1].split(",")
        n, k = int(parts[0]), int(parts[1])
        seed = int(parts[2]) if len(parts) > 2 else (args.seed or 0)
        rng = random.Random(seed)
        ring = PolyRing(field, [f"x{i}" for i in range(1, n + 1)])
        parts_ideals = []
        for i in range(1, n + 1):
            gens = []
            for _ in range(rng.randint(1, 2)):
                e = [0] * ring.n
                tail = random_monomial(rng, n - i + 1, 2)
                for off, val in enumerate(tail):
                    e[i - 1 + off] = val
                gens.append(tuple(e))
            parts_ideals.append(MonomialIdeal.from_gens(ring, gens))
        Jk, cert = sum_family_ideal(parts_ideals, k)
        report.inputs["seed"] = seed
        report.results["parts"] = [_ideal_strs(Ji) for Ji in parts_ideals]
        report.results["power"] = _ideal_strs(Jk)
        report.add_check("sum-family-d-Golod", cert.holds, cert.describe())
        return 0 if cert.holds else 1
    raise PreconditionError(f"unknown fixture {name!r}")


# ---------------------------------------------------------------------------
# dispatcher


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    common.add_argument("--field", default=None, help="coefficient field: Q or F<p>")

    top = argparse.ArgumentParser(prog="golodkit", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("d-ideal", parents=[common])
    p.add_argument("file")
    p.add_argument("--perm", default=None)
    p.set_defaults(fn=cmd_d_ideal)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("file")
    p.add_argument("--mode", choices=["d", "d-sigma", "strong"], required=True)
    p.add_argument("--perm", default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("betti", parents=[common])
    p.add_argument("file")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("koszul-cycles", parents=[common])
    p.add_argument("file")
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--complex", default=None, help="FreeComplex file for non-monomial input")
    p.set_defaults(fn=cmd_koszul_cycles)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("file")
    p.add_argument("--what", choices=["chain", "basis", "zero-map"], required=True)
    p.add_argument("--perm", default=None)
    p.add_argument("--complex", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("poincare", parents=[common])
    p.add_argument("file")
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--serre", action="store_true")
    p.add_argument("--golod-eq", dest="golod_eq", action="store_true")
    p.set_defaults(fn=cmd_poincare)

    p = sub.add_parser("ops", parents=[common])
    p.add_argument("file")
    p.add_argument("--op", required=True,
                   choices=["power", "symbolic", "saturate", "colon", "intersect", "closure"])
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--with", dest="with_file", default=None)
    p.set_defaults(fn=cmd_ops)

    p = sub.add_parser("fixtures", parents=[common])
    p.add_argument("--name", required=True)
    p.set_defaults(fn=cmd_fixtures)
    return top


def run(argv) -> tuple[int, Report | None]:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), None
    report = Report(command=args.command, inputs={}, seed=args.seed,
                    json_output=args.json)
    start = time.perf_counter()
    try:
        code = args.fn(args, report)
    except ParseError as exc:
        report.results["error"] = str(exc)
        report.add_check("parse", False, str(exc))
        code = 2
    except UnsupportedInputError as exc:
        report.results["error"] = str(exc)
        report.add_check("supported", False, str(exc))
        code = 3
    except (ResourceLimitError, DegreeBoundError) as exc:
        report.results["error"] = str(exc)
        report.add_check("resources", False, str(exc))
        code = 4
    except (PreconditionError, FileNotFoundError, GolodkitError) as exc:
        report.results["error"] = str(exc)
        report.add_check("usage", False, str(exc))
        code = 2
    report.timings["total"] = round(time.perf_counter() - start, 6)
    return code, report


def _print_human(report: Report):
    for key, value in report.results.items():
        if isinstance(value, list) and all(isinstance(v, str) for v in value):
            print(f"{key}:")
            for v in value:
                print(f"  {v}")
        else:
            print(f"{key}: {value}")
    for check in report.checks:
        mark = "ok" if check["passed"] else "FAIL"
        print(f"[{mark}] {check['name']}: {check['details']}")


def main(argv=None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    if report is not None:
        if report.json_output:
            print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
        else:
            _print_human(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
