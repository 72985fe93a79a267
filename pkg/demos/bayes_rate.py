"""Prior sensitivity of the von Mises posterior decays at the O(1/n) rate.

Compares the posterior under a uniform prior with the posterior under a
von Mises prior as the sample size grows: the closed-form envelope on their
Wasserstein-1 distance, and the exact distance itself, both scale like 1/n.

    python3 demos/bayes_rate.py
"""

import pathlib

from circstein import (
    QuadratureGrid,
    bayes_envelope,
    bayes_posteriors,
    circular_w1,
    von_mises,
)

OUT = pathlib.Path(__file__).parent / "output"

KAPPA, KAPPA_STAR, SEED = 2.0, 1.0, 0
DATA = von_mises(0.5, 2.0)


def main():
    OUT.mkdir(exist_ok=True)
    grid = QuadratureGrid()
    path = OUT / "bayes_rate.csv"
    print(f"{'n':>6} {'envelope':>12} {'oracle_w1':>12} {'envelope*n':>12}")
    with path.open("w") as fh:
        fh.write("n,envelope,oracle_w1,envelope_times_n\n")
        for n in (50, 100, 200, 400, 800, 1600):
            data = DATA.sample(n, SEED, grid)
            post = bayes_posteriors(data, KAPPA, KAPPA_STAR)
            env = bayes_envelope(data, KAPPA, KAPPA_STAR)
            w1 = circular_w1(post.model1(), post.model2(), grid).value
            fh.write(f"{n},{env:.17g},{w1:.17g},{env * n:.17g}\n")
            print(f"{n:6d} {env:12.6f} {w1:12.6f} {env * n:12.4f}")
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
