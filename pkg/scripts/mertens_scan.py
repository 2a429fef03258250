"""Full Mertens-type scan with checkpoints; prints a JSON summary.

Run with --extended --limit 1e12 to reproduce the larger bracket (hours).
"""

import argparse
import json
import time

from minorarc.sieve import mertens_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=float, default=1e10)
    ap.add_argument("--checkpoint-dir", default="mertens_ckpt")
    ap.add_argument("--resume", action="store_true")
    ap.add_argument("--extended", action="store_true")
    args = ap.parse_args()
    t = time.time()
    rep = mertens_scan(int(args.limit), ("half_inv_sqrt", "sqrt_two_over_x"), extended=args.extended,
                       checkpoint_dir=args.checkpoint_dir, resume=args.resume,
                       progress=lambda n, lim: print(f"  {n:.4g} / {lim:.4g}", flush=True))
    out = {"limit": rep.limit, "seconds": round(time.time() - t, 1),
           "final": rep.final.value, "certified_error": rep.final.certified_error}
    for name, e in rep.envelopes.items():
        out[name] = {"first_violation": e.first_violation, "undecided": e.undecided,
                     "max_ratio": e.max_ratio.hi if e.max_ratio else None, "at": e.best_n}
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
