"""Write the g-maximum, Fourier-norm and log-scaled certificates to a directory."""

import argparse
import time
from pathlib import Path

from minorarc.certify import certify_eta2pp_fourier_norm, certify_g_max, certify_log_scaled_norm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="certs", help="output directory")
    ap.add_argument("--step", type=float, default=1e-3)
    ap.add_argument("--log-scaled-y", type=float, nargs="*", default=[4.0, 10.0, 1e6])
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    t = time.time()
    g = certify_g_max()
    g.save(out / "g_max.cert")
    print(f"g: max <= {g.certified_upper.hi:.8f}, witness {g.witness_lower:.8f} ({time.time() - t:.1f} s)")

    t = time.time()
    c = certify_eta2pp_fourier_norm(step=args.step)
    c.save(out / "eta2pp_fourier.cert")
    print(f"eta_2'' transform: sup <= {c.certified_upper.hi:.8f}, sampled {c.sampled_max.lo:.8f} "
          f"({time.time() - t:.1f} s)")

    for y in args.log_scaled_y:
        t = time.time()
        ls = certify_log_scaled_norm(y)
        ls.save(out / f"log_scaled_y{y:g}.cert")
        print(f"log-scaled y = {y:g}: sup <= {ls.certified_upper.hi:.6f} ({time.time() - t:.1f} s)")


if __name__ == "__main__":
    main()
