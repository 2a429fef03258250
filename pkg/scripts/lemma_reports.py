"""Run every inequality suite at full size and write one JSON-lines report per lemma."""

import argparse
from pathlib import Path

from minorarc import oracles as O


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports")
    ap.add_argument("--trig", type=int, default=10**4)
    ap.add_argument("--sieve", type=int, default=1000)
    ap.add_argument("--typeI", type=int, default=200)
    ap.add_argument("--vaughan", type=int, default=100)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    runs = [(w.value, O.run_trig_suite(w, args.trig)) for w in O.TrigLemma]
    runs += [(v, O.run_sieve_suite(v, args.sieve)) for v in O.LS_VARIANTS]
    runs += [(k, O.run_type_I_suite(k, args.typeI)) for k in O.TYPE_I_LEMMAS]
    bad = 0
    for name, results in runs:
        with open(out / f"{name}.jsonl", "w") as sink:
            s = O.summarize(name, results, sink)
        bad += s.violations
        print(f"{name:22s} {s.total:6d} holds {s.holds:6d} inconclusive {s.inconclusive:3d} "
              f"violations {s.violations}")
    fails = 0
    worst = 0.0
    for rep, ok, meta in O.run_vaughan_suite(args.vaughan):
        fails += not ok
        worst = max(worst, rep.residual_width / rep.x)
    print(f"{'vaughan':22s} {args.vaughan:6d} failures {fails}, max residual width / x {worst:.2g}")
    raise SystemExit(1 if bad or fails else 0)


if __name__ == "__main__":
    main()
