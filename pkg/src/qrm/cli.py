"""``qrm`` command line: codes, verification suites, conversion demo, overhead, GF(2) tools."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .gf2 import BitMatrix, GF2Error, null_space, rank, rref
from .rmcodes import (
    FACT_MIN_M,
    RMIndexError,
    RateConditionError,
    appendixB_orthogonality,
    rm_generator,
    shortened_dual_generator,
    shortened_rm_generator,
    verify_fact,
    ClassicalCode,
)

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_m_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"2..5"`` -> [2, 3, 4, 5]; ``"3,5"`` -> [3, 5]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad m range {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError(f"empty m range {text!r}")
    return vals


def parse_complex(text: str) -> complex:
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None


def overhead(n_logical: int, n_nonclifford: int, levels: int) -> dict[str, Any]:
    """Qubit counts with ``N_NC`` qubits in the 15-qubit code and the rest in the 7-qubit code."""
    if not 0 <= n_nonclifford <= n_logical:
        raise UsageError("need 0 <= n_nonclifford <= n_logical")
    if levels < 1:
        raise UsageError("levels must be >= 1")
    scheme = (n_logical - n_nonclifford) * 7**levels + n_nonclifford * 15**levels
    baseline = n_logical * 15**levels
    return {
        "n_logical": n_logical,
        "n_nonclifford": n_nonclifford,
        "levels": levels,
        "scheme_qubits": scheme,
        "baseline_qubits": baseline,
        "ratio": scheme / baseline if baseline else None,
    }


# -- suites -------------------------------------------------------------------


def suite_facts(ms: list[int], args) -> list[dict[str, Any]]:
    out = []
    for fact in range(1, 7):
        for m in ms:
            if m < FACT_MIN_M[fact]:
                continue
            t = time.perf_counter()
            rep = verify_fact(fact, m).to_dict()
            rep["seconds"] = round(time.perf_counter() - t, 4)
            out.append({"check": f"fact{fact}", **rep})
    return out


def suite_transversal(ms: list[int], args) -> list[dict[str, Any]]:
    from .statevector import (
        logical_phase_of_zrot,
        transversal_1q_check,
        transversal_cnot_check,
        verify_multiblock_cz,
        zrot_amplitudes,
        encode_logical,
        apply_transversal_zrot,
        overlap,
        LOGICAL_GRID,
    )

    out = []
    for m in ms:
        if m not in (3, 4):
            raise UsageError("transversal suite supports m in {3, 4}")
        ell = 1 << (m - 1)
        ovs = [
            overlap(
                apply_transversal_zrot(encode_logical(m, a), ell),
                encode_logical(m, zrot_amplitudes(a, ell, dagger=True)),
            )
            for a in LOGICAL_GRID
        ]
        ph = logical_phase_of_zrot(m, ell)
        out.append(
            {
                "check": f"zrot_ell{ell}_is_logical_dagger",
                "m": m,
                "min_overlap": min(ovs),
                "logical_one_phase": [ph.real, ph.imag],
                "passed": min(ovs) >= 1 - 1e-9,
            }
        )
        for k in range(1, m - 1):
            rep = verify_multiblock_cz(m, k)
            out.append({"check": f"multiblock_cz_k{k}", **rep.to_dict()})
        if m == 3:
            for phys, logi in (("H", "H"), ("P", "PDG"), ("PDG", "P")):
                out.append({"check": f"transversal_{phys}", "m": 3, **transversal_1q_check(3, phys, logi)})
            out.append({"check": "transversal_CNOT", "m": 3, **transversal_cnot_check(3)})
    return out


def suite_conversion(ms: list[int], args) -> list[dict[str, Any]]:
    from .conversion import (
        convert_down,
        convert_up,
        encoded_state,
        fault_injection_sweep,
        same_output,
        superfluous_check,
        uncorrectable_demo,
    )
    from .statevector import LOGICAL_GRID, encode_logical, equal_up_to_global_phase

    backend = args.backend
    rng = (lambda: random.Random(args.seed)) if args.seed is not None else (lambda: None)
    out = []
    for m in ms:
        if m < 3:
            raise UsageError("conversion needs m >= 3")
        if backend == "statevector" and m != 3:
            raise UsageError("statevector conversion is limited to m = 3 (15 qubits)")
        out.append({"check": "superfluous", **superfluous_check(m)})
        if backend == "statevector":
            for a in LOGICAL_GRID:
                psi = encode_logical(m, a)
                up, r1 = convert_up(psi, m, rng=rng())
                down, r2 = convert_down(up, m, rng=rng())
                ok = (
                    r1.passed
                    and r2.passed
                    and equal_up_to_global_phase(up, encode_logical(m + 1, a))
                    and equal_up_to_global_phase(down, psi)
                )
                out.append({"check": "roundtrip", "m": m, "amplitudes": [str(complex(x)) for x in a], "passed": ok})
        else:
            for b in ("0", "1", "+", "-"):
                s = encoded_state(m, "tableau", basis=b)
                up, r1 = convert_up(s, m, rng=rng())
                down, r2 = convert_down(up, m, rng=rng())
                ok = r1.passed and r2.passed and same_output(down, s)
                out.append({"check": "roundtrip", "m": m, "basis": b, "passed": ok})
        if args.sweep:
            for d in ("up", "down"):
                rep = fault_injection_sweep(m, d, backend, seed=args.seed)
                out.append({"check": f"sweep_{d}", **rep})
            demo = uncorrectable_demo(m, backend)
            out.append({"check": "weight2_flagged", **demo, "passed": demo["flagged"]})
    return out


def suite_appendix_b(ms: list[int], args) -> list[dict[str, Any]]:
    from .conversion import higher_rank_conversion

    r = args.r if args.r is not None else 1
    out = []
    for m in ms:
        rep = appendixB_orthogonality(r, m)
        out.append({"check": "orthogonality", **rep})
    m0 = ms[0]
    conv = higher_rank_conversion(r, m0, "roundtrip", seed=args.seed)
    out.append({"check": "roundtrip", "r": r, "m": m0, "passed": conv.passed, "report": conv.to_dict()})
    return out


SUITES: dict[str, Callable] = {
    "facts": suite_facts,
    "transversal": suite_transversal,
    "conversion": suite_conversion,
    "appendixB": suite_appendix_b,
}


# -- commands -----------------------------------------------------------------


def _envelope(command: str, **payload) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "command": command,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        **payload,
    }


def _emit(args, doc: dict[str, Any], text: str) -> None:
    body = json.dumps(doc, indent=2, default=str) if args.json else text
    if args.out:
        Path(args.out).write_text(body + "\n")
    else:
        print(body)


def cmd_codes(args) -> int:
    from .stabilizer.code import qrm

    if args.r is not None:
        m = args.m[0]
        G = rm_generator(args.r, m)
        code = ClassicalCode.from_generator(G)
        d = code.distance if code.k <= 20 else None
        doc = _envelope(
            "codes",
            r=args.r,
            m=m,
            generator=G.to_text().splitlines(),
            params=[code.n, code.k, d],
            distance="computed" if d is not None else "unverified",
        )
        text = f"G_{{{args.r},{m}}}:\n{G.to_text()}\n({code.n},{code.k},{d if d is not None else '?'}) code"
        _emit(args, doc, text)
        return EXIT_PASS
    docs, texts = [], []
    for m in args.m:
        G, H = shortened_rm_generator(m), shortened_dual_generator(m)
        code = qrm(m)
        try:
            d, status = code.distance, "computed"
        except Exception:
            d, status = None, "unverified"
        docs.append(
            {
                "m": m,
                "G_bar": G.to_text().splitlines(),
                "H_bar": H.to_text().splitlines(),
                "params": [code.n, code.k, d],
                "distance": status,
            }
        )
        texts.append(
            f"m = {m}\nG_bar:\n{G.to_text()}\nH_bar:\n{H.to_text()}\n"
            f"[[{code.n},{code.k},{d if d is not None else '?'}]] (distance {status})"
        )
    _emit(args, _envelope("codes", codes=docs), "\n\n".join(texts))
    return EXIT_PASS


def cmd_verify(args) -> int:
    ms = args.m
    t = time.perf_counter()
    checks = SUITES[args.suite](ms, args)
    passed = all(c.get("passed", False) for c in checks)
    doc = _envelope("verify", suite=args.suite, m=ms, passed=passed, checks=checks,
                    seconds=round(time.perf_counter() - t, 3))
    lines = []
    for c in checks:
        tag = "PASS" if c.get("passed") else "FAIL"
        where = f" m={c['m']}" if "m" in c else ""
        lines.append(f"{tag} {c['check']}{where}")
    lines.append(f"{args.suite}: {'PASS' if passed else 'FAIL'} ({len(checks)} checks)")
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_overhead(args) -> int:
    rep = overhead(args.n_logical, args.n_nonclifford, args.levels)
    text = (
        f"scheme   {rep['scheme_qubits']} qubits\n"
        f"baseline {rep['baseline_qubits']} qubits\n"
        f"ratio    {rep['ratio']:.6f}"
    )
    _emit(args, _envelope("overhead", **rep), text)
    return EXIT_PASS


def cmd_convert(args) -> int:
    from .conversion import convert_down, convert_up, encoded_state
    from .statevector import encode_logical

    m = args.m[0]
    rng = random.Random(args.seed) if args.seed is not None else None
    if args.backend == "statevector":
        a, b = args.alpha, args.beta
        nrm = (abs(a) ** 2 + abs(b) ** 2) ** 0.5
        if nrm == 0:
            raise UsageError("alpha and beta cannot both be zero")
        start = encode_logical(m if args.direction == "up" else m + 1, (a / nrm, b / nrm))
    else:
        start = encoded_state(m if args.direction == "up" else m + 1, "tableau", basis=args.basis)
    fn = convert_up if args.direction == "up" else convert_down
    _, rep = fn(start, m, rng=rng)
    doc = _envelope("convert", report=rep.to_dict())
    text = (
        f"{rep.direction} m={m} backend={rep.backend}: {rep.verdict}\n"
        f"syndrome {rep.syndrome}\ncorrections {rep.corrections}\ngauge fixes {rep.gauge_fixes}"
    )
    _emit(args, doc, text)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_gf2(args) -> int:
    try:
        M = BitMatrix.from_text(Path(args.path).read_text())
    except (OSError, GF2Error, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.op == "rref":
        R, piv = rref(M)
        doc = _envelope("gf2", op="rref", matrix=R.to_text().splitlines(), pivots=piv)
        text = R.to_text()
    elif args.op == "nullspace":
        D = null_space(M)
        doc = _envelope("gf2", op="nullspace", matrix=D.to_text().splitlines())
        text = D.to_text()
    else:
        rk = rank(M)
        doc = _envelope("gf2", op="rank", rank=rk)
        text = str(rk)
    _emit(args, doc, text)
    return EXIT_PASS


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="seed for random measurement outcomes")
    common.add_argument("--backend", choices=("tableau", "statevector"), default="tableau")

    p = argparse.ArgumentParser(prog="qrm", description=__doc__)
    p.add_argument("--version", action="version", version=f"qrm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("codes", parents=[common], help="print generator matrices and [[n,k,d]]")
    c.add_argument("--m", type=parse_m_range, required=True)
    c.add_argument("--r", type=int, default=None)
    c.set_defaults(func=cmd_codes)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--m", type=parse_m_range, required=True)
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--sweep", action="store_true", help="add the single-qubit fault-injection sweep")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("overhead", parents=[common], help="qubit overhead of mixing 7- and 15-qubit blocks")
    o.add_argument("--n-logical", type=int, required=True)
    o.add_argument("--n-nonclifford", type=int, required=True)
    o.add_argument("--levels", type=int, default=1)
    o.set_defaults(func=cmd_overhead)

    cv = sub.add_parser("convert", parents=[common], help="run one conversion on a logical state")
    cv.add_argument("--m", type=parse_m_range, required=True)
    cv.add_argument("--direction", choices=("up", "down"), default="up")
    cv.add_argument("--alpha", type=parse_complex, default=complex(1, 0), help="'re,im'")
    cv.add_argument("--beta", type=parse_complex, default=complex(0, 0), help="'re,im'")
    cv.add_argument("--basis", choices=("0", "1", "+", "-", "+i", "-i"), default="0")
    cv.set_defaults(func=cmd_convert)

    g = sub.add_parser("gf2", parents=[common], help="GF(2) tools on a 0/1 text matrix")
    g.add_argument("op", choices=("rref", "nullspace", "rank"))
    g.add_argument("path")
    g.set_defaults(func=cmd_gf2)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, RMIndexError, RateConditionError, ValueError) as exc:
        print(f"qrm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
