"""Print moment-constant factorizations and the prime window around k.

Two views:

    python3 scripts/factor_table.py --sym U --kmax 20
        one factored constant per line

    python3 scripts/factor_table.py --sym U --k 100 --window
        exponent of every prime near p = k, marking the zero window
        k < p < k + sqrt(p) where the constant is coprime to p
"""

import argparse
from dataclasses import dataclass

from lfmoments import (
    OutOfRegime,
    SymmetryClass,
    moment_factored,
    primes_up_to,
    valuation,
    zero_valuation_window,
)


@dataclass
class TableConfig:
    sym: SymmetryClass
    kmax: int
    k: int
    window: bool


def parse_args() -> TableConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sym", default="U", choices=["U", "O", "Sp"])
    ap.add_argument("--kmax", type=int, default=16)
    ap.add_argument("--k", type=int, default=100, help="order for --window view")
    ap.add_argument("--window", action="store_true")
    ns = ap.parse_args()
    return TableConfig(SymmetryClass(ns.sym), ns.kmax, ns.k, ns.window)


def render(exponents: dict) -> str:
    if not exponents:
        return "1"
    return " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(exponents.items())
    )


def table_view(cfg: TableConfig) -> None:
    for k in range(1, cfg.kmax + 1):
        fac = moment_factored(cfg.sym, k)
        print(f"k={k:>3}  g = {render(fac.exponents)}")


def window_view(cfg: TableConfig) -> None:
    k = cfg.k
    fac = moment_factored(cfg.sym, k).exponents
    print(f"exponent of p in the order-{k} {cfg.sym.value} constant, p near k")
    for p in primes_up_to(2 * k):
        if p < k // 2:
            continue
        v = fac.get(p, 0)
        try:
            in_window = zero_valuation_window(cfg.sym, p, k)
        except OutOfRegime:
            in_window = None
        mark = "  <- zero window" if in_window else ""
        assert v == valuation(cfg.sym, p, k)
        print(f"  p={p:>5}  v={v:>3}{mark}")


def main() -> None:
    cfg = parse_args()
    if cfg.window:
        window_view(cfg)
    else:
        table_view(cfg)


if __name__ == "__main__":
    main()
