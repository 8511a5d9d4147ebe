"""Three convergence regimes of the clustering strength sigma.

Sweeps the same prototype with sigma at half, exactly, and one-and-a-half
times the optimum.  Too little clustering starves the pole string near
the singularity (truncation-limited, slope -sigma*alpha); too much
spends poles where the quadrature picture says they are wasted
(discretization-limited, slope -(2-beta)*pi^2/sigma).  The optimum
balances the two exponents.

Run:  python3 demos/02_sigma_regimes.py [--plot out.png]
"""

import argparse

from lightningpoly import (
    ANALYTIC_TAIL,
    POW,
    PrototypeSpec,
    fit_rate,
    sigma_opt,
    sweep_prototype,
)

ALPHA, BETA = 0.5, 0.0
N1_GRID = [9, 16, 25, 36, 49, 64]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plot", default=None, metavar="PNG")
    args = ap.parse_args()

    spec = PrototypeSpec(kind=POW, alpha=ALPHA)
    s_opt = sigma_opt(ALPHA, BETA)
    print(f"z**{ALPHA} on the segment; sigma_opt = {s_opt:.6f} (= 2*pi here)\n")

    sweeps = {}
    for factor in (0.5, 1.0, 1.5):
        records = sweep_prototype(spec, BETA, factor * s_opt, N1_GRID,
                                  mode=ANALYTIC_TAIL)
        model = fit_rate(records)
        sweeps[factor] = records
        print(f"sigma = {factor:>3}*opt  regime={model.regime:<5} "
              f"fitted slope {model.slope:>8.4f}  "
              f"predicted {model.predicted_slope:>8.4f}  "
              f"({model.points_used} points)")

    print(f"\n{'N1':>4}" + "".join(f"  {f}*opt".rjust(12) for f in (0.5, 1.0, 1.5)))
    for i, n1 in enumerate(N1_GRID):
        errs = [sweeps[f][i].sup_err for f in (0.5, 1.0, 1.5)]
        print(f"{n1:>4}" + "".join(f"{e:>12.3e}" for e in errs))
    print("\nAt every resolved N1 the middle column is the smallest.")

    if args.plot:
        import matplotlib.pyplot as plt
        import numpy as np

        for factor, style in ((0.5, "s--"), (1.0, "o-"), (1.5, "^:")):
            recs = sweeps[factor]
            n = np.sqrt([r.N for r in recs])
            plt.semilogy(n, [r.sup_err for r in recs], style,
                         label=f"{factor} * sigma_opt")
        plt.xlabel(r"$\sqrt{N}$")
        plt.ylabel("sup error")
        plt.legend()
        plt.savefig(args.plot, dpi=150, bbox_inches="tight")
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
