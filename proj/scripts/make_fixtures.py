#!/usr/bin/env python3
"""Regenerates the committed datasets under data/.

Both files are synthetic and fully determined by the seeds below, so the
test suite never depends on network downloads. The credit table mirrors
the shape of the UCI german-credit data (1,000 rows, mixed categorical
and continuous features, a binary good/bad decision with a roughly 70/30
split); the blobs table is a 2-feature fixture with a curved class
boundary for neighborhood-density checks.
"""

import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(str(v) for v in row) + "\n")


def make_german():
    rng = random.Random(20240817)
    features = [
        ("checking_status", ["none", "low", "medium", "high"]),
        ("duration", (4, 72)),
        ("credit_history", ["critical account", "delayed", "existing paid", "all paid back"]),
        ("purpose", ["car", "furniture", "radio_tv", "education", "business", "repairs"]),
        ("credit_amount", (250, 18424)),
        ("savings", ["none", "low", "medium", "high"]),
        ("employment", ["unemployed", "short", "medium", "long"]),
        ("installment_rate", (1, 4)),
        ("other_debtors", ["none", "co-applicant", "guarantor"]),
        ("age", (19, 75)),
        ("housing", ["rent", "own", "free"]),
        ("job", ["unskilled", "skilled", "management"]),
    ]

    cat_weights = {
        "checking_status": [0.27, 0.27, 0.06, 0.40],
        "credit_history": [0.29, 0.09, 0.53, 0.09],
        "purpose": [0.33, 0.18, 0.28, 0.07, 0.10, 0.04],
        "savings": [0.60, 0.15, 0.11, 0.14],
        "employment": [0.06, 0.25, 0.35, 0.34],
        "other_debtors": [0.91, 0.04, 0.05],
        "housing": [0.18, 0.71, 0.11],
        "job": [0.20, 0.63, 0.17],
    }
    score_tables = {
        "checking_status": {"none": -0.9, "low": -0.2, "medium": 0.3, "high": 1.0},
        "credit_history": {"critical account": 0.7, "delayed": -0.2,
                           "existing paid": 0.2, "all paid back": -0.4},
        "savings": {"none": -0.5, "low": -0.1, "medium": 0.3, "high": 0.7},
        "employment": {"unemployed": -0.6, "short": -0.2, "medium": 0.2, "long": 0.5},
        "other_debtors": {"none": 0.0, "co-applicant": -0.5, "guarantor": 0.4},
        "housing": {"rent": -0.3, "own": 0.4, "free": -0.1},
        "job": {"unskilled": -0.2, "skilled": 0.1, "management": 0.2},
    }

    header = [name for name, _ in features] + ["decision"]
    rows = []
    for _ in range(1000):
        record = {}
        for name, domain in features:
            if isinstance(domain, list):
                record[name] = rng.choices(domain, weights=cat_weights[name])[0]
            elif name == "duration":
                record[name] = int(round(min(72, max(4, rng.gauss(21, 12)))))
            elif name == "credit_amount":
                record[name] = int(round(min(18424, max(250, rng.lognormvariate(7.9, 0.75)))))
            elif name == "installment_rate":
                record[name] = rng.randint(1, 4)
            elif name == "age":
                record[name] = int(round(min(75, max(19, rng.gauss(36, 11)))))

        score = 0.0
        for name, table in score_tables.items():
            score += table[record[name]]
        score -= 1.1 * (record["duration"] - 21) / 12.0
        score -= 0.9 * math.log(record["credit_amount"] / 2300.0)
        score -= 0.25 * (record["installment_rate"] - 2.5)
        score += 0.5 * (record["age"] - 36) / 11.0
        score += rng.gauss(0, 0.8)
        decision = "good" if score > -0.55 else "bad"
        rows.append([record[name] for name, _ in features] + [decision])

    write_csv(DATA / "german.csv", header, rows)

    schema = {
        "features": [
            {"name": name, "kind": "categorical", "values": domain}
            if isinstance(domain, list)
            else {"name": name, "kind": "continuous", "min": domain[0], "max": domain[1]}
            for name, domain in features
        ],
        "target": {"name": "decision", "labels": ["good", "bad"]},
    }
    (DATA / "german.schema.json").write_text(json.dumps(schema, indent=2) + "\n")


def make_blobs2d():
    rng = random.Random(7042)
    rows = []
    for _ in range(600):
        x1 = round(rng.uniform(0.0, 10.0), 4)
        x2 = round(rng.uniform(0.0, 10.0), 4)
        inside = (x1 - 3.2) ** 2 + (x2 - 3.2) ** 2 < 5.5 or \
                 (x1 - 7.3) ** 2 + (x2 - 6.8) ** 2 < 3.5
        rows.append([x1, x2, "purple" if inside else "green"])
    write_csv(DATA / "blobs2d.csv", ["x1", "x2", "outcome"], rows)

    schema = {
        "features": [
            {"name": "x1", "kind": "continuous", "min": 0.0, "max": 10.0},
            {"name": "x2", "kind": "continuous", "min": 0.0, "max": 10.0},
        ],
        "target": {"name": "outcome", "labels": ["purple", "green"]},
    }
    (DATA / "blobs2d.schema.json").write_text(json.dumps(schema, indent=2) + "\n")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    make_german()
    make_blobs2d()
    print("wrote", *(p.name for p in sorted(DATA.iterdir())))
