"""Regenerate the golden fixture scenes via the radball CLI.

Run from the repository root:  python frontend/scripts/generate_fixtures.py
Requires the radball package (and scikit-learn for the iris/wine tables).
"""

import tempfile
from pathlib import Path

from sklearn.datasets import load_iris, load_wine

from radball.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "test" / "fixtures"


def write_csv(bunch, label_name, path):
    names = [n.replace(" (cm)", "").replace(" ", "_").replace("/", "_") for n in bunch.feature_names]
    lines = [",".join(names + [label_name])]
    for row, target in zip(bunch.data, bunch.target):
        lines.append(",".join(repr(float(v)) for v in row) + f",{bunch.target_names[target]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run(argv):
    code = main(argv)
    assert code == 0, f"radball {' '.join(argv)} exited {code}"


def main_():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        sim_csv = tmp / "sim.csv"
        run([
            "simulate", "--classes", "5", "--dims", "5", "--rows", "500",
            "--omega", "0.01", "--seed", "42", "--out", str(sim_csv),
        ])
        run([
            "scene", str(sim_csv), "--label-column", "class", "--with-overlap",
            "--draws", "20000", "--seed", "42",
            "--out", str(FIXTURES / "sim-5x5-radviz3d.json"),
        ])

        iris_csv = tmp / "iris.csv"
        write_csv(load_iris(), "species", iris_csv)
        run([
            "scene", str(iris_csv), "--label-column", "species", "--method", "viz3d",
            "--seed", "7", "--out", str(FIXTURES / "iris-4f-viz3d.json"),
        ])

        wine_csv = tmp / "wine.csv"
        write_csv(load_wine(), "cultivar", wine_csv)
        run([
            "scene", str(wine_csv), "--label-column", "cultivar",
            "--seed", "7", "--out", str(FIXTURES / "wine-13f-radviz3d.json"),
        ])
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main_()
