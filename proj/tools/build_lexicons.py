#!/usr/bin/env python3
# Copyright 2026 The ptagger Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled lexicons under data/.

Inputs:
  --nicknames  names.csv from the `nicknames` PyPI package (Apache-2.0),
               rows of `name1,has_nickname,name2`.
  --female / --male
               dist.female.first / dist.male.first from the `names` PyPI
               package (1990 US census first-name frequencies).
"""

import argparse
import csv
import pathlib

# Common English diminutives missing from the upstream nickname list.
SUPPLEMENT = [
    ("nelly", "ellen"), ("nelly", "helen"), ("nell", "helen"),
    ("kitty", "catherine"), ("kate", "catherine"), ("jenny", "jane"),
    ("nancy", "anne"), ("lotty", "charlotte"), ("georgie", "georgiana"),
    ("hetty", "henrietta"), ("hetty", "esther"), ("jemmy", "james"),
]

# A name present in both census lists is gendered only when one side is at
# least this many times more frequent.
DOMINANCE = 5.0


def cap(name):
    return name[:1].upper() + name[1:].lower()


def read_census(path):
    out = {}
    for line in open(path, encoding="ascii"):
        parts = line.split()
        if len(parts) >= 2:
            out[parts[0].lower()] = float(parts[1])
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nicknames", required=True)
    ap.add_argument("--female", required=True)
    ap.add_argument("--male", required=True)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)

    nick = {}
    with open(args.nicknames, encoding="utf-8") as f:
        reader = csv.reader(f)
        next(reader)
        for canonical, _, nickname in reader:
            nick.setdefault(nickname, [])
            if canonical not in nick[nickname]:
                nick[nickname].append(canonical)
    for nickname, canonical in SUPPLEMENT:
        nick.setdefault(nickname, [])
        if canonical not in nick[nickname]:
            nick[nickname].append(canonical)
    with open(out / "diminutives.csv", "w", encoding="utf-8") as f:
        f.write("# nickname,canonical1,canonical2,...\n")
        f.write("# Derived from carltonnorthern/nickname-and-diminutive-names-lookup (Apache-2.0)\n")
        f.write("# plus a short supplement, see tools/build_lexicons.py.\n")
        for nickname in sorted(nick):
            f.write(",".join([cap(nickname)] + [cap(c) for c in nick[nickname]]) + "\n")

    female = read_census(args.female)
    male = read_census(args.male)
    with open(out / "genders.tsv", "w", encoding="utf-8") as f:
        f.write("# name<TAB>female|male|unknown\n")
        f.write("# Derived from the 1990 US census first-name frequency lists.\n")
        for name in sorted(set(female) | set(male)):
            fw, mw = female.get(name, 0.0), male.get(name, 0.0)
            if mw == 0.0 or fw >= DOMINANCE * mw:
                g = "female"
            elif fw == 0.0 or mw >= DOMINANCE * fw:
                g = "male"
            else:
                g = "unknown"
            f.write(f"{cap(name)}\t{g}\n")

    with open(out / "common_names.tsv", "w", encoding="utf-8") as f:
        f.write("# name<TAB>gender: the 300 most frequent female and male first names\n")
        f.write("# Derived from the 1990 US census first-name frequency lists.\n")
        for gender, table in (("female", female), ("male", male)):
            ranked = sorted(table, key=lambda n: -table[n])[:300]
            for name in ranked:
                f.write(f"{cap(name)}\t{gender}\n")


if __name__ == "__main__":
    main()
