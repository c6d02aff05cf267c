"""Plot the limiting valuation densities c_p side by side.

Samples c_p(x) on a grid for several primes and writes one SVG with a
polyline per prime, plus a small text summary to stdout.  The curves are
continuous but rough: away from p = 2 they oscillate on every scale.

    python3 scripts/plot_density.py --primes 2,3,5 --lo 1 --hi 9 --out density.svg
"""

import argparse
from dataclasses import dataclass, field

from lfmoments import is_prime, sample_density

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")

WIDTH, HEIGHT, MARGIN = 900, 540, 50


@dataclass
class PlotConfig:
    primes: tuple = (2, 3, 5)
    lo: float = 1.0
    hi: float = 9.0
    samples: int = 600
    out: str = "density.svg"
    curves: dict = field(default_factory=dict)


def parse_args() -> PlotConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3,5", help="comma-separated primes")
    ap.add_argument("--lo", type=float, default=1.0)
    ap.add_argument("--hi", type=float, default=9.0)
    ap.add_argument("--samples", type=int, default=600)
    ap.add_argument("--out", default="density.svg")
    ns = ap.parse_args()
    primes = tuple(int(tok) for tok in ns.primes.split(","))
    for p in primes:
        if not is_prime(p):
            ap.error(f"{p} is not prime")
    if not ns.lo > 0:
        ap.error("--lo must be positive")
    return PlotConfig(primes, ns.lo, ns.hi, ns.samples, ns.out)


def polyline(points, lo, hi, vmin, vmax, color):
    span_x = hi - lo
    span_y = (vmax - vmin) or 1.0
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN
    coords = " ".join(
        "%.2f,%.2f"
        % (
            MARGIN + (x - lo) / span_x * plot_w,
            HEIGHT - MARGIN - (y - vmin) / span_y * plot_h,
        )
        for x, y in points
    )
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="1" '
        f'points="{coords}"/>'
    )


def main() -> None:
    cfg = parse_args()
    for p in cfg.primes:
        cfg.curves[p] = sample_density(p, cfg.lo, cfg.hi, cfg.samples)

    flat = [y for pts in cfg.curves.values() for _, y in pts]
    vmin, vmax = min(flat), max(flat)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#999"/>',
    ]
    for i, (p, pts) in enumerate(cfg.curves.items()):
        color = PALETTE[i % len(PALETTE)]
        parts.append(polyline(pts, cfg.lo, cfg.hi, vmin, vmax, color))
        parts.append(
            f'<text x="{MARGIN + 8}" y="{MARGIN + 16 + 14 * i}" '
            f'fill="{color}" font-size="12">c_{p}</text>'
        )
    parts.append(
        f'<text x="{MARGIN}" y="{HEIGHT - 12}" font-size="11" fill="#444">'
        f"x in [{cfg.lo:g}, {cfg.hi:g}], {cfg.samples} samples per curve, "
        f"y in [{vmin:.4f}, {vmax:.4f}]</text>"
    )
    parts.append("</svg>")
    with open(cfg.out, "w", encoding="ascii") as fh:
        fh.write("\n".join(parts))

    print(f"wrote {cfg.out}")
    for p, pts in cfg.curves.items():
        ys = [y for _, y in pts]
        print(
            f"  c_{p}: min {min(ys):.6f}  max {max(ys):.6f}  "
            f"mean {sum(ys) / len(ys):.6f}"
        )


if __name__ == "__main__":
    main()
