"""Command-line front end.

Subcommands: construct, verify, search, conjecture, classify, mub.  Every
report is emitted through a stable envelope: JSON output is key-sorted and
byte-identical across runs for a fixed configuration (timing goes to
stderr, never into the payload).  Exit codes: 0 for a successful run with
all certificates valid, 2 for a clean run whose claim failed, 1 for usage
or scale errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, algebra, counting, mub, pauli, spread
from .errors import PolarMubError
from .polar import PolarSpace
from .spread import PartialSpread

_SPACE_CACHE: dict[tuple[int, int], PolarSpace] = {}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def get_space(d: int, n: int) -> PolarSpace:
    key = (d, n)
    if key not in _SPACE_CACHE:
        _SPACE_CACHE[key] = PolarSpace(d, n)
    return _SPACE_CACHE[key]


# --------------------------------------------------------------------------
# Spread serialization: the on-disk formats.
# --------------------------------------------------------------------------


def spread_payload(ps: PartialSpread) -> dict:
    return {
        "d": ps.space.d,
        "n": ps.space.n,
        "generators": [
            [list(row) for row in ps.space.generator(m).basis] for m in ps.members
        ],
    }


def serialize_spread(ps: PartialSpread, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(spread_payload(ps), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        lines = [f"d={ps.space.d} n={ps.space.n}"]
        for m in ps.members:
            basis = ps.space.generator(m).basis
            lines.append("|".join(",".join(str(x) for x in row) for row in basis))
        return ("\n".join(lines) + "\n").encode()
    raise UsageError(f"unknown format {fmt!r}")


def deserialize_spread(data: bytes, fmt: str = "json") -> PartialSpread:
    text = data.decode()
    if fmt == "json":
        obj = json.loads(text)
        space = get_space(int(obj["d"]), int(obj["n"]))
        bases = [tuple(tuple(int(x) for x in row) for row in gen) for gen in obj["generators"]]
    elif fmt == "text":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(part.split("=") for part in lines[0].split())
        space = get_space(int(head["d"]), int(head["n"]))
        bases = [
            tuple(tuple(int(x) for x in row.split(",")) for row in ln.split("|"))
            for ln in lines[1:]
        ]
    else:
        raise UsageError(f"unknown format {fmt!r}")
    members = []
    for b in bases:
        canonical = algebra.rref(b, space.field)
        try:
            members.append(space.generator_by_basis(canonical).gen_index)
        except KeyError:
            raise UsageError(
                f"rows {b} do not span a generator of W_{2*space.n-1}({space.d})"
            ) from None
    return spread.partial_spread(space, members)


# --------------------------------------------------------------------------
# Command implementations.  Each returns (payload, ok).
# --------------------------------------------------------------------------


def _cert_dict(cert) -> dict:
    return {"complete": cert.complete, "witness": cert.witness}


def _construct_spread(args, space) -> tuple[PartialSpread, dict]:
    s = spread.construct_symplectic_spread(space)
    method = args.method
    if method == "classical":
        return s, {}
    if method == "tu":
        u = args.u_index
        if u is None:
            u = next(
                g.gen_index for g in space.generators if g.gen_index not in s.members
            )
        final, cert = spread.complete_TU(spread.construct_TU(s, u))
        return final, {"u_index": u}
    if method == "sr":
        l_idx = args.l_index if args.l_index is not None else s.members[0]
        m_idx = args.m_index if args.m_index is not None else s.members[1]
        sr = spread.construct_SR(s, l_idx, m_idx, args.k)
        return sr, {"l_index": l_idx, "m_index": m_idx, "k": args.k}
    if method == "uset":
        u = spread.construct_U_set(s, args.chi_index)
        final, _ = spread.unextendible_from_Uset(s, u)
        carrier = space.generator(u.carrier)
        return final, {
            "carrier": u.carrier,
            "uset_members": list(u.members.members),
            "carrier_meets": len(spread.members_meeting(s, carrier)),
        }
    raise UsageError(f"unknown construct method {method!r}")


def cmd_construct(args) -> tuple[dict, bool]:
    space = get_space(args.d, args.n)
    ps, extra = _construct_spread(args, space)
    cert = spread.is_complete(ps)
    payload = {
        "method": args.method,
        "members": list(ps.members),
        "size": ps.size,
        "is_spread": ps.is_spread,
        "spread": spread_payload(ps),
        **_cert_dict(cert),
        **extra,
    }
    return payload, cert.complete


def cmd_verify(args) -> tuple[dict, bool]:
    space = get_space(args.d, args.n)
    if args.check == "complete":
        if args.infile:
            with open(args.infile, "rb") as fh:
                ps = deserialize_spread(fh.read(), args.format)
        else:
            ps = spread.construct_symplectic_spread(space)
        cert = spread.is_complete(ps)
        return {
            "check": "complete",
            "members": list(ps.members),
            "size": ps.size,
            **_cert_dict(cert),
        }, cert.complete
    if args.check == "regularity":
        s = spread.construct_symplectic_spread(space)
        ok = spread.check_regularity(s)
        return {"check": "regularity", "size": s.size, "regular": ok}, ok
    if args.check == "class-roundtrip":
        failures = 0
        for g in space.generators:
            c = pauli.class_from_generator(g, space)
            if pauli.generator_from_class(c, space).gen_index != g.gen_index:
                failures += 1
        return {
            "check": "class-roundtrip",
            "generators": space.num_generators,
            "failures": failures,
        }, failures == 0
    raise UsageError(f"unknown verify check {args.check!r}")


def cmd_search(args) -> tuple[dict, bool]:
    space = get_space(args.d, args.n)
    if args.mode == "exhaustive":
        found = spread.search_maximal(space, "exhaustive")
        sizes: dict[int, int] = {}
        for p in found:
            sizes[p.size] = sizes.get(p.size, 0) + 1
        return {
            "mode": "exhaustive",
            "complete_partial_spreads": len(found),
            "count_by_size": {str(k): v for k, v in sorted(sizes.items())},
        }, True
    if args.mode == "first-of-size":
        if args.size is None:
            raise UsageError("--size is required for first-of-size")
        found = spread.search_maximal(space, "first_of_size", size=args.size)
        payload = {
            "mode": "first-of-size",
            "size": args.size,
            "found": bool(found),
            "members": list(found[0].members) if found else None,
        }
        return payload, bool(found)
    raise UsageError(f"unknown search mode {args.mode!r}")


def cmd_conjecture(args) -> tuple[dict, bool]:
    report = counting.conjecture_counts(args.d, args.n)
    payload = {
        "d": report.d,
        "n": report.n,
        "subset_size": report.subset_size,
        "spread_size": report.spread_size,
        "binom_term": report.binom_term,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "verdict": report.verdict,
    }
    ok = True
    if args.brute_force:
        space = get_space(args.d, args.n)
        s = spread.construct_symplectic_spread(space)
        summary = counting.brute_force_conjecture(space, s)
        payload["brute_force"] = summary.as_dict()
        all_one = summary.exactly_one == summary.subsets_total
        consistent = all_one == (report.verdict == "Equality")
        ok = consistent and (not all_one or summary.completions_complete)
    return payload, ok


def cmd_classify(args) -> tuple[dict, bool]:
    space = get_space(args.d, args.n)
    found = spread.search_maximal(space, "exhaustive")
    triples = [p for p in found if not p.is_spread]
    orbits = spread.classify_iso(space, triples)
    from .polar import symplectic_group

    payload = {
        "complete_non_spreads": len(triples),
        "sizes": sorted({p.size for p in triples}),
        "orbits": len(orbits),
        "orbit_representatives": [list(p.members) for p in orbits],
        "group_order": len(symplectic_group(space)),
    }
    return payload, True


def cmd_mub(args) -> tuple[dict, bool]:
    space = get_space(args.d, args.n)
    if args.from_file:
        with open(args.from_file, "rb") as fh:
            ps = deserialize_spread(fh.read(), args.format)
    else:
        method = args.from_spread or "classical"
        ns = argparse.Namespace(
            method=method,
            u_index=None,
            l_index=None,
            m_index=None,
            k=args.k,
            chi_index=None,
        )
        ps, _ = _construct_spread(ns, space)
    cert = mub.certify_weak_umub(ps, tolerance=args.tolerance)
    payload = {
        "classes": list(cert.classes),
        "order": cert.order,
        "complete": cert.complete,
        "witness": cert.witness,
        "max_deviation": cert.max_deviation,
        "target_overlap": 1.0 / (space.d**space.n),
        "valid": cert.valid,
    }
    return payload, cert.valid


# --------------------------------------------------------------------------
# Wiring.
# --------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="polarmub")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--d", type=int, required=True, help="prime order")
        p.add_argument("--n", type=int, required=True, help="rank N")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("construct", help="build a partial spread")
    common(p)
    p.add_argument(
        "--method", choices=("classical", "tu", "sr", "uset"), default="classical"
    )
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--u-index", type=int, dest="u_index")
    p.add_argument("--l-index", type=int, dest="l_index")
    p.add_argument("--m-index", type=int, dest="m_index")
    p.add_argument("--chi-index", type=int, dest="chi_index")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a spread property")
    common(p)
    p.add_argument(
        "--check", choices=("complete", "regularity", "class-roundtrip"), required=True
    )
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search for complete partial spreads")
    common(p)
    p.add_argument("--mode", choices=("exhaustive", "first-of-size"), required=True)
    p.add_argument("--size", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("conjecture", help="counting verdict for (d, N)")
    common(p)
    p.add_argument("--brute-force", action="store_true", dest="brute_force")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("classify", help="orbits of complete partial spreads")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mub", help="weakly-unextendible MUB certificate")
    common(p)
    p.add_argument("--from-spread", choices=("classical", "tu", "sr", "uset"))
    p.add_argument("--from-file", dest="from_file")
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_mub)

    return parser


def _render_text(envelope: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}{key}.", value[key])
        elif isinstance(value, list):
            lines.append(f"{prefix[:-1]} = {value}")
        else:
            lines.append(f"{prefix[:-1]} = {value}")

    walk("", envelope)
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    start = time.monotonic()
    config = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
    }
    try:
        payload, ok = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (PolarMubError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    envelope = {
        "version": __version__,
        "command": args.command,
        "config": config,
        "result": payload,
    }
    if args.format == "json":
        rendered = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    else:
        rendered = _render_text(envelope)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return 0 if ok else 2


def main() -> None:
    sys.exit(run())
