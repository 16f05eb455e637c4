"""Exact upper tails of the limit laws against their closed asymptotes.

Emits, over a log-spaced grid of points whose upper-tail mass runs from
--mass-hi down to --mass-lo, the exact tail 1 - F(x), the asymptote, and
their ratio.  For the spherical limit the asymptote is x^-2 and the ratio
reaches 1 quickly; for the product law at a given alpha the asymptote
carries a Gaussian factor and the ratio approaches 1 only slowly, from
below, which is visible across any plotted mass range.

Typical use:

    python scripts/tail_asymptote_check.py --law product-alpha --alpha 1 \
        --points 40 > tail.csv
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from specrad import limit_laws
from specrad.limit_laws import SPHERICAL_H, ProductLaw


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--law", default="spherical-h",
                        choices=["spherical-h", "product-alpha"])
    parser.add_argument("--alpha", type=float, default=1.0,
                        help="alpha for --law product-alpha")
    parser.add_argument("--mass-lo", type=float, default=1e-8,
                        help="smallest upper-tail mass to reach")
    parser.add_argument("--mass-hi", type=float, default=1e-3,
                        help="largest upper-tail mass to start from")
    parser.add_argument("--points", type=int, default=40)
    parser.add_argument("--output", default=None, help="path (default: stdout)")
    args = parser.parse_args(argv)
    if not 0.0 < args.mass_lo < args.mass_hi < 1.0:
        parser.error("need 0 < --mass-lo < --mass-hi < 1")

    law = SPHERICAL_H if args.law == "spherical-h" else ProductLaw(alpha=args.alpha)
    x_lo = limit_laws.quantile(law, 1.0 - args.mass_hi)
    x_hi = limit_laws.quantile(law, 1.0 - args.mass_lo)
    xs = np.geomspace(x_lo, x_hi, args.points)

    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        out.write("x,tail,asymptote,ratio\n")
        for x in xs:
            tail = limit_laws.upper_tail(law, float(x))
            asym = limit_laws.tail_asymptote(law, float(x))
            out.write(f"{x:.9g},{tail:.9g},{asym:.9g},{tail / asym:.9g}\n")
    finally:
        if args.output:
            out.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
