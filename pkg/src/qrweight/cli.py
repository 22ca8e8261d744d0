"""Command-line front end for the whole pipeline.

Stages exchange self-describing JSON artifacts: a payload plus a manifest
carrying the command line, the code identity (prime and generator digest)
and the payload digest. Identical inputs produce byte-identical files, so
timing is logged, never serialized.

Exit codes: 0 success, 1 check failure, 2 usage, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from math import comb
from pathlib import Path

from . import __version__, census as census_mod, congruence as congruence_mod, fixtures, gleason
from .errors import (
    BothAccepted,
    BothRejected,
    BudgetExceeded,
    CheckFailure,
    InvariantViolation,
    QrWeightError,
)
from .psl2 import find_sylow_plan, group_order
from .qrcodes import build_family

log = logging.getLogger("qrweight")


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _code_identity(family) -> dict:
    return {
        "p": family.p,
        "n": family.n_extended,
        "k": family.k,
        "generator_sha256": family.code_digest(),
    }


def _write_artifact(path: Path, payload: dict, command: list[str], code: dict, inputs: dict) -> None:
    artifact = {
        "payload": payload,
        "manifest": {
            "tool": f"qrweight {__version__}",
            "command": command,
            "code": code,
            "inputs": inputs,
            "payload_sha256": _digest(payload),
        },
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_canonical(artifact), encoding="utf-8")
    log.info("wrote %s", path)


def _read_artifact(path: Path) -> dict:
    data = json.loads(path.read_text(encoding="utf-8"))
    if "payload" not in data or "manifest" not in data:
        raise CheckFailure(f"{path} is not an artifact (payload/manifest missing)")
    stored = data["manifest"].get("payload_sha256")
    actual = _digest(data["payload"])
    if stored != actual:
        raise CheckFailure(f"{path}: payload digest mismatch ({actual} != {stored})")
    return data


def _weight_pairs(counts: dict[int, int]) -> list[list[int]]:
    return [[w, counts[w]] for w in sorted(counts)]


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# ---------------------------------------------------------------- construct


def _construct_payload(family) -> dict:
    return {
        "p": family.p,
        "m": family.m,
        "residues": sorted(family.residues),
        "nonresidues": sorted(family.nonresidues),
        "generators_hex_lsb_x0": {
            "q": family.gen_q.coeff_hex(),
            "n": family.gen_n.coeff_hex(),
            "qbar": family.gen_qbar.coeff_hex(),
            "nbar": family.gen_nbar.coeff_hex(),
        },
        "codes": {
            "augmented": [family.p, family.k],
            "expurgated": [family.p, (family.p - 1) // 2],
            "extended": [family.n_extended, family.k],
        },
    }


def cmd_construct(args) -> int:
    family = build_family(args.p)
    payload = _construct_payload(family)
    if args.format == "table":
        print(f"p = {family.p} (m = {family.m})")
        for name, dims in payload["codes"].items():
            print(f"  {name:10s} [{dims[0]}, {dims[1]}]")
        print(f"  residues: {payload['residues']}")
    else:
        print(_canonical(payload), end="")
    if args.out:
        _write_artifact(
            Path(args.out) / "construct.json", payload, _command_line(args), _code_identity(family), {}
        )
    return 0


# ---------------------------------------------------------------- group


def cmd_group(args) -> int:
    order, fac = group_order(args.p)
    plan = find_sylow_plan(args.p)
    payload = {
        "p": args.p,
        "order": order,
        "factorization": [[q, e] for q, e in fac],
        "s": plan.s,
        "generators": {
            **{f"order_{q}": g.matrix_str() for q, g in sorted(plan.odd_generators.items())},
            f"P_order_{2 ** (plan.s - 1)}": plan.P.matrix_str(),
            "T_order_2": plan.T.matrix_str(),
        },
    }
    if args.format == "table":
        factored = " * ".join(f"{q}^{e}" if e > 1 else f"{q}" for q, e in fac)
        print(f"|PSL2({args.p})| = {order} = {factored}")
        for name, mat in payload["generators"].items():
            print(f"  {name}: {mat}")
    else:
        print(_canonical(payload), end="")
    return 0


# ---------------------------------------------------------------- congruence


def _parse_weights(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
    else:
        lo_i = hi_i = int(text)
    if lo_i < 0 or hi_i < lo_i:
        raise ValueError(f"bad weight range {text!r}")
    return [w for w in range(lo_i, hi_i + 1) if w % 2 == 0]


def _compute_bundle(family, weights, long_run: bool):
    plan = find_sylow_plan(family.p)
    h2_fixture = None
    if family.p == 137 and not long_run:
        h2_fixture = fixtures.load_p137()["subgroup_counts"]["H2"]
    return congruence_mod.compute_bundle(
        family, plan, weights, long_run=long_run, h2_counts_fixture=h2_fixture
    )


def _bundle_payload(bundle) -> dict:
    return {
        "p": bundle.p,
        "s": bundle.s,
        "h2_source": bundle.h2_source,
        "dims": dict(sorted(bundle.dims.items())),
        "counts": {label: _weight_pairs(row) for label, row in sorted(bundle.counts.items())},
        "sylow2_mod_2s": _weight_pairs(bundle.sylow2),
        "constraints": {
            str(w): {
                "residue": c.residue,
                "modulus": c.modulus,
                "parts": [[pp, r, label] for pp, r, label in c.parts],
            }
            for w, c in sorted(bundle.constraints.items())
        },
    }


def cmd_congruence(args) -> int:
    weights = _parse_weights(args.weights)
    if not weights:
        raise ValueError("weight range contains no even weight")
    family = build_family(args.p)
    bundle = _compute_bundle(family, weights, args.long_run)
    payload = _bundle_payload(bundle)
    print(_canonical(payload), end="")
    if args.out:
        _write_artifact(
            Path(args.out) / "congruence.json", payload, _command_line(args), _code_identity(family), {}
        )
    return 0


# ---------------------------------------------------------------- shard-plan


def cmd_shard_plan(args) -> int:
    plan = census_mod.plan_shards(args.s, args.t, args.block_size)
    for index, start, count in plan.shards:
        print(f"{index} {start} {count}")
    return 0


# ---------------------------------------------------------------- census


def _census_payload(result) -> dict:
    prov = result.provenance
    return {
        "p": result.p,
        "n": result.n,
        "k": result.k,
        "complete_upto": result.complete_upto,
        "counts": _weight_pairs(result.counts),
        "provenance": {
            "code_digest": prov.code_digest,
            "max_info_weight": prov.max_info_weight,
            "block_size": prov.block_size,
            "total_shards": prov.total_shards,
            "shards": [
                {
                    "index": rec.index,
                    "matrix": rec.matrix,
                    "size": rec.size,
                    "start_rank": rec.start_rank,
                    "count": rec.count,
                    "sha256": rec.digest(),
                }
                for rec in prov.shards
            ],
        },
    }


def cmd_census(args) -> int:
    if args.shard_index is not None and not args.emit_fragment:
        raise ValueError("--shard-index requires --emit-fragment FILE")
    family = build_family(args.p)
    shard_indices = [args.shard_index] if args.shard_index is not None else None
    result = census_mod.run_census(
        family,
        args.t,
        workers=args.workers,
        block_size=args.block_size,
        long_run=args.long_run,
        shard_indices=shard_indices,
    )
    if args.shard_index is not None:
        rec = result.provenance.shards[0]
        fragment = {
            "code_id": _code_identity(family),
            "shard": {
                "index": rec.index,
                "matrix": rec.matrix,
                "size": rec.size,
                "start_rank": rec.start_rank,
                "count": rec.count,
            },
            "counts": [[w, c] for w, c in rec.weight_counts],
            "plan": {
                "max_info_weight": result.provenance.max_info_weight,
                "block_size": result.provenance.block_size,
                "total_shards": result.provenance.total_shards,
                "complete_upto": result.complete_upto,
            },
        }
        path = Path(args.emit_fragment)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_canonical(fragment), encoding="utf-8")
        log.info("wrote fragment %s", path)
        return 0
    payload = _census_payload(result)
    print(_canonical(payload), end="")
    if args.out:
        _write_artifact(
            Path(args.out) / "census.json", payload, _command_line(args), _code_identity(family), {}
        )
    return 0


def _fragment_to_census(frag: dict) -> census_mod.WeightCensus:
    code = frag["code_id"]
    plan = frag["plan"]
    shard = frag["shard"]
    record = census_mod.ShardRecord(
        index=shard["index"],
        matrix=shard["matrix"],
        size=shard["size"],
        start_rank=shard["start_rank"],
        count=shard["count"],
        weight_counts=tuple((int(w), int(c)) for w, c in frag["counts"]),
    )
    upto = plan["complete_upto"]
    totals = {w: 0 for w in range(0, upto + 1, 2)}
    for w, c in record.weight_counts:
        totals[w] = totals.get(w, 0) + c
    return census_mod.WeightCensus(
        p=code["p"],
        n=code["n"],
        k=code["k"],
        complete_upto=upto,
        counts=totals,
        provenance=census_mod.CensusProvenance(
            code_digest=code["generator_sha256"],
            max_info_weight=plan["max_info_weight"],
            block_size=plan["block_size"],
            total_shards=plan["total_shards"],
            shards=(record,),
        ),
    )


def cmd_census_merge(args) -> int:
    parts = []
    for name in args.fragments:
        frag = json.loads(Path(name).read_text(encoding="utf-8"))
        parts.append(_fragment_to_census(frag))
    merged = census_mod.merge_censuses(parts)
    payload = _census_payload(merged)
    print(_canonical(payload), end="")
    if args.out:
        family = build_family(merged.p)
        _write_artifact(
            Path(args.out) / "census.json",
            payload,
            _command_line(args),
            _code_identity(family),
            {name: _file_digest(Path(name)) for name in args.fragments},
        )
    return 0


# ---------------------------------------------------------------- solve


def _counts_from_census_payload(payload: dict) -> dict[int, int]:
    return {int(w): int(c) for w, c in payload["counts"]}


def _constraint_from_payload(payload: dict, weight: int) -> congruence_mod.CongruenceConstraint:
    entry = payload["constraints"].get(str(weight))
    if entry is None:
        raise CheckFailure(f"constraint artifact has no entry for weight {weight}")
    return congruence_mod.CongruenceConstraint(
        j=weight,
        residue=int(entry["residue"]),
        modulus=int(entry["modulus"]),
        parts=tuple((int(pp), int(r), label) for pp, r, label in entry["parts"]),
    )


def _solution_payload(solution) -> dict:
    cert = None
    if solution.sign_certificate is not None:
        cert = {
            "chosen_sign": solution.sign_certificate.chosen_sign,
            "orbit_quotient": solution.sign_certificate.orbit_quotient,
            "candidates": [
                {
                    "sign": c.sign,
                    "k_top": c.k_top,
                    "a_top": c.a_top,
                    "accepted": c.accepted,
                    "detail": c.detail,
                }
                for c in solution.sign_certificate.candidates
            ],
        }
    return {
        "p": solution.p,
        "m": solution.m,
        "coefficients": list(solution.coefficients),
        "extended": [[j, c] for j, c in enumerate(solution.extended)],
        "augmented": [[j, c] for j, c in enumerate(solution.augmented)],
        "sign_certificate": cert,
    }


def _solution_table(solution) -> str:
    lines = [f"{'j':>5s} {'augmented':>24s} {'extended':>24s}"]
    half = (solution.p + 1) // 2
    for j in range(half + 1):
        aug = solution.augmented[j] if j < len(solution.augmented) else 0
        ext = solution.extended[j]
        if aug or ext or j == 0:
            lines.append(f"{j:5d} {aug:24d} {ext:24d}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    family = build_family(args.p)
    counts: dict[int, int] = {}
    inputs = {}
    if args.census:
        artifact = _read_artifact(Path(args.census))
        if artifact["manifest"]["code"]["generator_sha256"] != family.code_digest():
            raise CheckFailure("census artifact was computed for a different code")
        counts.update(_counts_from_census_payload(artifact["payload"]))
        inputs["census"] = _file_digest(Path(args.census))
    for item in args.inject_a or []:
        w, _, c = item.partition("=")
        counts[int(w)] = int(c)
    if not counts:
        raise ValueError("nothing to solve from: give --census and/or --inject-a")
    constraint = None
    if args.constraint:
        cart = _read_artifact(Path(args.constraint))
        m = (args.p - 1) // 8
        constraint = _constraint_from_payload(cart["payload"], 2 * m)
        inputs["constraint"] = _file_digest(Path(args.constraint))
    solution = gleason.solve_distribution(args.p, counts, constraint=constraint, family=family)
    payload = _solution_payload(solution)
    if args.format == "table":
        print(_solution_table(solution), end="")
    else:
        print(_canonical(payload), end="")
    if args.out:
        out = Path(args.out)
        _write_artifact(
            out / "solution.json", payload, _command_line(args), _code_identity(family), inputs
        )
        (out / "table.txt").write_text(_solution_table(solution), encoding="utf-8")
    return 0


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    artifact = _read_artifact(Path(args.table))
    payload = artifact["payload"]
    if payload["p"] != args.p:
        raise CheckFailure(f"artifact is for p={payload['p']}, not p={args.p}")
    family = build_family(args.p)
    if artifact["manifest"]["code"]["generator_sha256"] != family.code_digest():
        raise CheckFailure("artifact code identity does not match the constructed family")
    solution = gleason.GleasonSolution(
        p=payload["p"],
        m=payload["m"],
        coefficients=tuple(payload["coefficients"]),
        extended=tuple(c for _, c in payload["extended"]),
        augmented=tuple(c for _, c in payload["augmented"]),
        sign_certificate=None,
    )
    gleason.validate_solution(solution)
    ks = gleason.solve_coefficients(
        solution.m, {j: solution.extended[2 * j] for j in range(solution.m + 1)}
    )
    if tuple(ks) != solution.coefficients:
        raise CheckFailure("stored coefficients do not re-derive from the distribution")
    print(f"ok: p={args.p} artifact passes all checks")
    return 0


# ---------------------------------------------------------------- pipeline


def cmd_pipeline(args) -> int:
    p = args.p
    if p % 8 != 1:
        raise ValueError("pipeline reconstruction requires p = 1 mod 8")
    out = Path(args.out) if args.out else None
    stage = "construct"
    try:
        t0 = time.perf_counter()
        family = build_family(p)
        m = family.m
        assert m is not None
        if 2 * args.t < 2 * m - 2:
            raise ValueError(f"census t={args.t} too small: need t >= {m - 1}")

        stage = "census"
        cost = 2 * sum(comb(family.k, i) for i in range(args.t + 1))
        if cost > census_mod.DEFAULT_PATTERN_BUDGET and not args.long_run:
            raise BudgetExceeded(
                f"census needs {cost} patterns, budget {census_mod.DEFAULT_PATTERN_BUDGET}"
            )

        stage = "congruence"
        weights = list(range(2, 2 * m + 1, 2))
        bundle = _compute_bundle(family, weights, args.long_run)

        stage = "census"
        result = census_mod.run_census(
            family, args.t, workers=args.workers, block_size=args.block_size, long_run=args.long_run
        )

        stage = "congruence-check"
        for w in range(2, min(2 * args.t, 2 * m) + 1, 2):
            verdict = congruence_mod.check_candidate(bundle.constraints[w], result.counts[w])
            if isinstance(verdict, congruence_mod.Reject):
                raise CheckFailure(f"censused A_{w}={result.counts[w]} fails congruence: {verdict.reason}")

        stage = "solve"
        solution = gleason.solve_distribution(
            p, result.counts, constraint=bundle.constraints[2 * m], family=family
        )

        stage = "verify"
        gleason.validate_solution(solution)
        log.info("pipeline p=%d finished in %.2fs", p, time.perf_counter() - t0)
    except QrWeightError as exc:
        print(f"FAIL at stage {stage}: {exc}", file=sys.stderr)
        raise
    if out:
        code = _code_identity(family)
        cmdline = _command_line(args)
        _write_artifact(out / "construct.json", _construct_payload(family), cmdline, code, {})
        _write_artifact(out / "congruence.json", _bundle_payload(bundle), cmdline, code, {})
        _write_artifact(out / "census.json", _census_payload(result), cmdline, code, {})
        _write_artifact(out / "solution.json", _solution_payload(solution), cmdline, code, {})
        (out / "table.txt").write_text(_solution_table(solution), encoding="utf-8")
    print(f"ok: pipeline p={p} t={args.t}: all checks passed")
    return 0


# ---------------------------------------------------------------- paper regression


def cmd_paper_regression(args) -> int:
    fx = fixtures.load_p137(args.fixtures)
    p = 137
    m = 17
    failures: list[str] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        line = f"{'ok' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else "")
        print(line)
        if not ok:
            failures.append(line)

    family = build_family(p)
    check("family parameters", family.k == 69 and family.n_extended == 138)
    plan = find_sylow_plan(p)
    bundle = congruence_mod.compute_bundle(
        family,
        plan,
        list(range(22, 35, 2)),
        long_run=args.long_run,
        h2_counts_fixture=None if args.long_run else fx["subgroup_counts"]["H2"],
    )
    for label, dim in sorted(fx["subgroup_dims"].items()):
        check(f"subcode dim {label} = {dim}", bundle.dims.get(label) == dim)
    for label, row in sorted(fx["subgroup_counts"].items()):
        if label == congruence_mod.H2 and bundle.h2_source == "fixture":
            check("H2 counts consumed as fixture", True)
            continue
        got = {w: bundle.counts[label].get(w, 0) for w in row}
        check(f"subcode counts {label}", got == row, f"{got}" if got != row else "")
    sylow2_ok = bundle.sylow2 == fx["sylow2"]
    check("dihedral combination", sylow2_ok, "" if sylow2_ok else f"{bundle.sylow2}")
    residues = {w: c.residue for w, c in bundle.constraints.items()}
    moduli = {c.modulus for c in bundle.constraints.values()}
    residues_ok = residues == fx["crt_residues"]
    check("congruence residues", residues_ok, "" if residues_ok else f"{residues}")
    check("modulus", moduli == {fx["crt_modulus"]})

    counts = {w: 0 for w in range(2, fx["minimum_distance_extended"], 2)}
    counts.update(fx["partial_census"])
    for w, a in sorted(fx["partial_census"].items()):
        verdict = congruence_mod.check_candidate(bundle.constraints[w], a)
        expected_n = fx["orbit_quotients"][w]
        check(
            f"A_{w} congruence quotient n={expected_n}",
            verdict == expected_n,
            f"got {verdict}",
        )

    partial = {0: 1}
    partial.update({w // 2: c for w, c in counts.items()})
    try:
        k_top, a_top, cert = gleason.resolve_top_coefficient(
            p, m, partial, bundle.constraints[2 * m], family
        )
    except (BothRejected, BothAccepted) as exc:
        for cand in exc.certificate.candidates:
            print(f"  candidate sign {cand.sign:+d}: K={cand.k_top} A={cand.a_top}: {cand.detail}")
        check("top-coefficient resolution", False, str(exc))
        return 1
    check("top coefficient value", k_top == fx["top_coefficient"], f"K = {k_top}")
    check("accepted count", a_top == fx["accepted_a34"], f"A = {a_top}, n = {cert.orbit_quotient}")
    check("orbit quotient", cert.orbit_quotient == fx["orbit_quotients"][2 * m])
    loser = [c for c in cert.candidates if not c.accepted]
    check(
        "rejected count",
        len(loser) == 1 and loser[0].a_top == fx["rejected_a34"],
        f"rejected {[c.a_top for c in loser]}",
    )

    solution = gleason.solve_distribution(p, counts, constraint=bundle.constraints[2 * m], family=family)
    ext_diff = {
        j: (solution.extended[j], v)
        for j, v in sorted(fx["distribution_extended"].items())
        if solution.extended[j] != v
    }
    aug_diff = {
        j: (solution.augmented[j], v)
        for j, v in sorted(fx["distribution_augmented"].items())
        if solution.augmented[j] != v
    }
    check("extended distribution table", not ext_diff, f"{ext_diff}" if ext_diff else "")
    check("augmented distribution table", not aug_diff, f"{aug_diff}" if aug_diff else "")
    check("coefficient sum 2^69", sum(solution.extended) == 1 << 69)
    check(
        "symmetry",
        all(solution.extended[j] == solution.extended[138 - j] for j in range(139)),
    )
    check("MacWilliams self-transform", gleason.macwilliams_check(solution.extended, 138, 69))

    if args.out:
        _write_artifact(
            Path(args.out) / "solution.json",
            _solution_payload(solution),
            _command_line(args),
            _code_identity(family),
            {},
        )
        (Path(args.out) / "table.txt").write_text(_solution_table(solution), encoding="utf-8")
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    print("ok: regression suite passed")
    return 0


# ---------------------------------------------------------------- parser


def _command_line(args) -> list[str]:
    """Command line with the --out destination stripped, so artifact bytes
    do not depend on where they are written."""
    raw = list(args._raw_argv)
    out = []
    skip = False
    for token in raw:
        if skip:
            skip = False
            continue
        if token == "--out":
            skip = True
            continue
        if token.startswith("--out="):
            continue
        out.append(token)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrweight",
        description="Weight distributions of binary quadratic residue codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("construct", cmd_construct, "build the QR code family of a prime")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("json", "table"), default="json")

    sp = add("group", cmd_group, "group order, factorization and generators")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--format", choices=("json", "table"), default="table")

    sp = add("congruence", cmd_congruence, "per-weight congruence constraints")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--weights", required=True, help="range a..b (even weights used)")
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--out", default=None)

    sp = add("shard-plan", cmd_shard_plan, "print the shard manifest for C(s, t)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--M", dest="block_size", type=int, required=True)

    sp = add("census", cmd_census, "partial weight census by information patterns")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True, help="max information-pattern size")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--block-size", type=int, default=census_mod.DEFAULT_BLOCK_SIZE)
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--shard-index", type=int, default=None)
    sp.add_argument("--emit-fragment", default=None)
    sp.add_argument("--out", default=None)

    sp = add("census-merge", cmd_census_merge, "merge emitted census fragments")
    sp.add_argument("fragments", nargs="+")
    sp.add_argument("--out", default=None)

    sp = add("solve", cmd_solve, "reconstruct the full distribution")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--census", default=None)
    sp.add_argument("--inject-a", action="append", default=None, metavar="W=COUNT")
    sp.add_argument("--constraint", default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("json", "table"), default="json")

    sp = add("verify", cmd_verify, "re-check a stored solution artifact")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--table", required=True)

    sp = add("pipeline", cmd_pipeline, "construct, congruence, census, solve, verify")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--block-size", type=int, default=census_mod.DEFAULT_BLOCK_SIZE)
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--out", default=None)

    sp = add("paper-regression", cmd_paper_regression, "replay the prime-137 derivation")
    sp.add_argument("--fixtures", default=None)
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--out", default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(raw)
    except SystemExit as exc:
        code = exc.code
        return 2 if code not in (0, None) else 0
    args._raw_argv = raw
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, FileNotFoundError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except QrWeightError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
