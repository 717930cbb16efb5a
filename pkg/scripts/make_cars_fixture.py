"""Deterministically generate data/cars.csv, the demo/acceptance fixture.

A 406-row classic-automobile table with a known shape: weight spans exactly
1613..5140 lbs with a mean near 2979, displacement and fuel economy correlate
at -0.76, four-cylinder cars dominate, and all V8s are American. Re-running
this script reproduces the identical file.
"""

from __future__ import annotations

import csv
import math
import sys
from pathlib import Path

import numpy as np

N_ROWS = 406
TARGET_RHO = -0.76
TARGET_MEAN_WEIGHT = 2979.0
WEIGHT_MIN, WEIGHT_MAX = 1613, 5140

# (origin, cylinders) -> row count; totals: USA 254, Europe 73, Japan 79;
# cylinders: 4 x207, 8 x108, 6 x84, 3 x4, 5 x3. Mode is 4, (USA, 8) tops combos.
COMPOSITION = {
    ("USA", 8): 108,
    ("USA", 4): 72,
    ("USA", 6): 70,
    ("USA", 3): 4,
    ("Japan", 4): 75,
    ("Japan", 6): 4,
    ("Europe", 4): 60,
    ("Europe", 6): 10,
    ("Europe", 5): 3,
}

DISPLACEMENT = {3: (80, 10), 4: (110, 22), 5: (130, 15), 6: (225, 35), 8: (330, 55)}
MPG_BASE = {3: 21.0, 4: 29.0, 5: 24.0, 6: 20.0, 8: 14.5}

BRANDS = [
    "amc", "audi", "bmw", "buick", "chevrolet", "datsun", "dodge", "fiat", "ford",
    "honda", "mazda", "mercury", "opel", "peugeot", "plymouth", "pontiac", "renault",
    "saab", "subaru", "toyota", "volkswagen", "volvo",
]
MODELS = [
    "rebel", "hornet", "monarch", "custom", "deluxe", "special", "gl", "sst",
    "wagon", "sport", "limited", "royal", "classic", "touring",
]


def pearson(xs: np.ndarray, ys: np.ndarray) -> float:
    dx, dy = xs - xs.mean(), ys - ys.mean()
    return float((dx * dy).sum() / math.sqrt((dx * dx).sum() * (dy * dy).sum()))


def build_rows() -> list[dict]:
    rng = np.random.default_rng(20240817)

    origins, cylinders = [], []
    for (origin, cyl), count in COMPOSITION.items():
        origins += [origin] * count
        cylinders += [cyl] * count
    order = rng.permutation(N_ROWS)
    origins = [origins[i] for i in order]
    cylinders = [cylinders[i] for i in order]

    disp = np.array(
        [rng.normal(*DISPLACEMENT[c]) for c in cylinders]
    ).clip(60, 500).round()

    # fuel economy: cylinder-class baseline plus a displacement trend, with a
    # noise scale tuned so the pairwise correlation lands on the target
    mpg_signal = np.array([MPG_BASE[c] for c in cylinders]) - 0.045 * (disp - disp.mean())
    mpg_noise = rng.normal(0, 1, N_ROWS)
    mpg_missing = rng.choice(N_ROWS, size=8, replace=False)
    hp_missing = rng.choice(N_ROWS, size=6, replace=False)
    present = np.ones(N_ROWS, dtype=bool)
    present[mpg_missing] = False

    def rho_for(scale: float) -> float:
        mpg = (mpg_signal + scale * mpg_noise).clip(8, 48).round(1)
        return pearson(disp[present], mpg[present])

    lo, hi = 0.0, 30.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if rho_for(mid) < TARGET_RHO:  # too strongly negative: add noise
            lo = mid
        else:
            hi = mid
    noise_scale = (lo + hi) / 2
    mpg = (mpg_signal + noise_scale * mpg_noise).clip(8, 48).round(1)

    horsepower = (42 + 0.32 * disp + rng.normal(0, 12, N_ROWS)).clip(46, 235).round()

    weight = 1620 + 7.1 * disp + rng.normal(0, 230, N_ROWS)
    weight += TARGET_MEAN_WEIGHT - weight.mean()
    weight = weight.clip(WEIGHT_MIN + 30, WEIGHT_MAX - 30).round()
    weight[int(np.argmin(weight))] = WEIGHT_MIN
    big_v8 = int(np.argmax(disp))
    weight[big_v8] = WEIGHT_MAX

    acceleration = (rng.normal(15.5, 2.7, N_ROWS) - 0.5 * (np.array(cylinders) - 5)).clip(8, 25).round(1)
    model_year = rng.integers(70, 83, N_ROWS)

    names = []
    seen: dict[str, int] = {}
    for i in range(N_ROWS):
        base = f"{BRANDS[int(rng.integers(len(BRANDS)))]} {MODELS[int(rng.integers(len(MODELS)))]}"
        seen[base] = seen.get(base, 0) + 1
        names.append(base if seen[base] == 1 else f"{base} {seen[base]}")

    rows = []
    for i in range(N_ROWS):
        rows.append(
            {
                "Name": names[i],
                "Miles_per_Gallon": "" if i in set(mpg_missing) else f"{mpg[i]:g}",
                "Cylinders": str(cylinders[i]),
                "Displacement": f"{disp[i]:g}",
                "Horsepower": "" if i in set(hp_missing) else f"{horsepower[i]:g}",
                "Weight_in_lbs": f"{weight[i]:g}",
                "Acceleration": f"{acceleration[i]:g}",
                "Model_Year": str(int(model_year[i])),
                "Year": f"19{model_year[i]}-01-01",
                "Origin": origins[i],
            }
        )
    return rows


def verify(rows: list[dict]) -> None:
    disp, mpg = [], []
    for r in rows:
        if r["Miles_per_Gallon"] != "":
            disp.append(float(r["Displacement"]))
            mpg.append(float(r["Miles_per_Gallon"]))
    rho = pearson(np.array(disp), np.array(mpg))
    weights = np.array([float(r["Weight_in_lbs"]) for r in rows])
    from collections import Counter

    cyl_counts = Counter(r["Cylinders"] for r in rows)
    combos = Counter((r["Origin"], r["Cylinders"]) for r in rows)
    names = {r["Name"] for r in rows}

    checks = {
        "rows == 406": len(rows) == N_ROWS,
        "weight min == 1613": weights.min() == WEIGHT_MIN,
        "weight max == 5140": weights.max() == WEIGHT_MAX,
        "weight mean within 1% of 2979": abs(weights.mean() - TARGET_MEAN_WEIGHT) <= 0.01 * TARGET_MEAN_WEIGHT,
        "rho in [-0.78, -0.74]": -0.78 <= rho <= -0.74,
        "cylinder mode is 4": cyl_counts.most_common(1)[0][0] == "4",
        "top combo is (USA, 8)": combos.most_common(1)[0][0] == ("USA", "8"),
        "name cardinality > 100": len(names) > 100,
    }
    print(f"  weight mean {weights.mean():.1f}, rho {rho:.4f}, names {len(names)}")
    for label, ok in checks.items():
        print(f"  {'ok' if ok else 'FAIL'}: {label}")
    if not all(checks.values()):
        sys.exit(1)


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "data" / "cars.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = build_rows()
    verify(rows)
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
