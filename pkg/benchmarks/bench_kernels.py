"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Each case runs both implementations on identical inputs, checks the results
agree and reports the best wall time of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

from qrm import _purepy
from qrm.rmcodes import rm_generator, shortened_rm_generator

try:
    from qrm import _ext
except ImportError:
    _ext = None


def _rows(G):
    return list(G.rows)


def cases():
    G5 = shortened_rm_generator(5)
    G5_words = _purepy.span_words(_rows(G5))
    G4_words = _purepy.span_words(_rows(shortened_rm_generator(4)))
    n4 = 15
    return [
        ("rref_rows RM(2,6) 22x64", "rref_rows", (_rows(rm_generator(2, 6)), 64)),
        ("span_words RM(2,6)", "span_words", (_rows(rm_generator(2, 6)),)),
        ("span_weight_histogram RM(2,6)", "span_weight_histogram", (_rows(rm_generator(2, 6)), 64)),
        ("ktuple_and_check m=5 k=3", "ktuple_and_check", (G5_words, 3, 4)),
        ("multiblock_parity_counts m=4 k=2", "multiblock_parity_counts", (G4_words, 3, (1 << n4) - 1, 0b111)),
    ]


def run(repeat: int) -> list[dict]:
    table = cases()
    out = []
    for label, name, args in table:
        py = getattr(_purepy, name)
        t_py = min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat))
        row = {"case": label, "python_s": t_py, "ext_s": None, "speedup": None, "agree": None}
        if _ext is not None:
            ext = getattr(_ext, name)
            row["agree"] = _normalize(ext(*args)) == _normalize(py(*args))
            t_ext = min(timeit.repeat(lambda: ext(*args), number=1, repeat=repeat))
            row["ext_s"] = t_ext
            row["speedup"] = t_py / t_ext if t_ext > 0 else None
        out.append(row)
    return out


def _normalize(v):
    if isinstance(v, tuple):
        return tuple(_normalize(x) for x in v)
    return list(v) if isinstance(v, (list, tuple)) else v


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        print(json.dumps({"ext_available": _ext is not None, "cases": rows}, indent=2))
    else:
        if _ext is None:
            print("compiled extension not built; timing the pure-Python kernels only")
        print(f"{'case':44s} {'python':>10s} {'ext':>10s} {'speedup':>8s}  agree")
        for r in rows:
            ext = f"{r['ext_s']:.5f}" if r["ext_s"] is not None else "-"
            sp = f"{r['speedup']:.1f}x" if r["speedup"] else "-"
            print(f"{r['case']:44s} {r['python_s']:10.5f} {ext:>10s} {sp:>8s}  {r['agree']}")
    return 0 if all(r["agree"] in (True, None) for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
