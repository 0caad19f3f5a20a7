#!/usr/bin/env python3
# Copyright 2026 The Readiness Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the Adult-like test fixtures. Output is a pure function of the seeds."""

import argparse
import csv
import pathlib
import random

COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education_num", "marital_status",
    "occupation", "relationship", "race", "sex", "capital_gain", "capital_loss",
    "hours_per_week", "native_country", "income",
]

WORKCLASS = [("Private", 70), ("Self-emp-not-inc", 8), ("Local-gov", 6), ("State-gov", 4),
             ("Self-emp-inc", 3), ("Federal-gov", 3)]
EDUCATION = [("HS-grad", 9, 32), ("Some-college", 10, 22), ("Bachelors", 13, 16), ("Masters", 14, 5),
             ("Assoc-voc", 11, 4), ("11th", 7, 4), ("Assoc-acdm", 12, 3), ("10th", 6, 3),
             ("7th-8th", 4, 2), ("Prof-school", 15, 2), ("9th", 5, 2), ("Doctorate", 16, 1)]
MARITAL = [("Married-civ-spouse", 46), ("Never-married", 33), ("Divorced", 14), ("Separated", 3),
           ("Widowed", 3)]
OCCUPATION = [("Prof-specialty", 13), ("Craft-repair", 13), ("Exec-managerial", 13), ("Adm-clerical", 12),
              ("Sales", 11), ("Other-service", 10), ("Machine-op-inspct", 6), ("Transport-moving", 5),
              ("Handlers-cleaners", 4), ("Farming-fishing", 3), ("Tech-support", 3), ("Protective-serv", 2)]
RACE = [("White", 85), ("Black", 10), ("Asian-Pac-Islander", 3), ("Amer-Indian-Eskimo", 1), ("Other", 1)]
COUNTRY = [("United-States", 90), ("Mexico", 2), ("Philippines", 1), ("Germany", 1), ("Canada", 1),
           ("India", 1), ("England", 1)]


def pick(rng, table):
    total = sum(row[-1] for row in table)
    x = rng.uniform(0, total)
    for row in table:
        x -= row[-1]
        if x <= 0:
            return row
    return table[-1]


def person(rng):
    age = max(17, min(90, int(rng.gauss(38, 13))))
    education, education_num, _ = pick(rng, EDUCATION)
    marital = pick(rng, MARITAL)[0]
    sex = "Male" if rng.random() < 0.67 else "Female"
    if marital == "Married-civ-spouse":
        relationship = "Husband" if sex == "Male" else "Wife"
    else:
        relationship = rng.choice(["Not-in-family", "Own-child", "Unmarried", "Other-relative"])
    capital_gain = 0
    if rng.random() < 0.08:
        capital_gain = rng.choice([2174, 3103, 4386, 5178, 7298, 7688, 14084, 15024, 99999])
    capital_loss = 0
    if rng.random() < 0.05:
        capital_loss = rng.choice([1485, 1590, 1672, 1887, 1902, 1977, 2415])
    hours = max(1, min(99, int(rng.gauss(40, 11))))
    if rng.random() < 0.01:
        hours = 99
    row = {
        "age": age,
        "workclass": pick(rng, WORKCLASS)[0],
        "fnlwgt": max(12285, int(rng.lognormvariate(12.0, 0.5))),
        "education": education,
        "education_num": education_num,
        "marital_status": marital,
        "occupation": pick(rng, OCCUPATION)[0],
        "relationship": relationship,
        "race": pick(rng, RACE)[0],
        "sex": sex,
        "capital_gain": capital_gain,
        "capital_loss": capital_loss,
        "hours_per_week": hours,
        "native_country": pick(rng, COUNTRY)[0],
    }
    score = (0.35 * education_num + 0.04 * min(age, 60) + 0.05 * hours
             + (2.5 if marital == "Married-civ-spouse" else 0.0)
             + (0.8 if sex == "Male" else 0.0)
             + (3.0 if capital_gain > 5000 else 0.0)
             + rng.gauss(0, 1.2))
    return row, score


def generate(seed, unique_rows, positives, duplicates, missing_age, missing_occupation):
    rng = random.Random(seed)
    people = [person(rng) for _ in range(unique_rows)]
    order = sorted(range(unique_rows), key=lambda i: (-people[i][1], i))
    rich = set(order[:positives])
    rows = []
    for i, (row, _) in enumerate(people):
        row["income"] = ">50K" if i in rich else "<=50K"
        rows.append(row)
    for i in rng.sample(range(unique_rows), missing_age):
        rows[i]["age"] = "?"
    for i in rng.sample(range(unique_rows), missing_occupation):
        rows[i]["occupation"] = "?"
    # Exact copies of majority rows, so the class counts stay as planned.
    majority = [i for i in range(unique_rows) if i not in rich]
    for i in rng.sample(majority, duplicates):
        rows.insert(rng.randrange(len(rows) + 1), dict(rows[i]))
    return rows


def write(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # 450 / 50 income split: 442 + 8 duplicated majority rows.
    write(out / "adult_500.csv", generate(20260101, 492, 50, 8, 15, 25))
    write(out / "adult_30k.csv", generate(20260102, 29850, 7200, 150, 600, 1700))


if __name__ == "__main__":
    main()
