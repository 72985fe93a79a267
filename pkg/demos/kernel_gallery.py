"""Tabulate classical and circular Stein kernels for all six families.

Writes one plot-ready CSV per family into demos/output/.

    python3 demos/kernel_gallery.py
"""

import pathlib

import numpy as np

from circstein import (
    QuadratureGrid,
    bingham,
    cardioid,
    kernel_table,
    uniform,
    von_mises,
    wrapped_cauchy,
    wrapped_normal,
)

OUT = pathlib.Path(__file__).parent / "output"

FAMILIES = [
    uniform(),
    von_mises(0.0, 2.0),
    bingham(0.0, 1.0),
    cardioid(0.0, 0.3),
    wrapped_normal(0.0, 1.0),
    wrapped_cauchy(0.0, 1.0),
]


def main():
    OUT.mkdir(exist_ok=True)
    grid = QuadratureGrid()
    thetas = np.linspace(-np.pi, np.pi, 362)[1:]
    for dist in FAMILIES:
        rows = kernel_table(dist, thetas, grid)
        path = OUT / f"kernel_{dist.family.value}.csv"
        with path.open("w") as fh:
            fh.write("theta,tau_classical,tau_circular,method\n")
            for r in rows:
                fh.write(
                    f"{r.theta:.17g},{r.tau_classical:.17g},"
                    f"{r.tau_circular:.17g},{r.method.value}\n"
                )
        peak = max(r.tau_circular for r in rows)
        print(f"{dist.family.value:15s} -> {path.name}  (max tau_c = {peak:.6f})")


if __name__ == "__main__":
    main()
