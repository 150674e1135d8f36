#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Merge every benchmark suite file into one summary.

Reads bench_results/suite_*.json, keeps the newest record per
(suite, seed, label, method) and writes bench_results/bench_summary.json.
"""

import glob
import json
import os
import sys

from config import BENCH_OUTPUT_DIR

SUMMARY_NAME = "bench_summary.json"


def record_key(record):
    return (record.get("suite"), record.get("seed"), record.get("label"), record.get("method"))


def combine(out_dir=BENCH_OUTPUT_DIR):
    """Merged, de-duplicated records sorted by suite, seed, label and method."""
    files = sorted(glob.glob(os.path.join(out_dir, "suite_*.json")), key=os.path.getmtime)
    print(f"Found {len(files)} suite files.")

    records_dict = {}
    for path in files:
        try:
            with open(path, "r", encoding="utf-8") as fd:
                data = json.load(fd)
        except (OSError, json.JSONDecodeError) as e:
            print(f"Skipping {path}: {e}")
            continue
        if not isinstance(data, list):
            print(f"Skipping {path}: expected a list of records")
            continue
        # later files overwrite earlier ones for the same key
        for record in data:
            records_dict[record_key(record)] = record

    records = list(records_dict.values())
    records.sort(key=lambda r: tuple("" if v is None else str(v) for v in record_key(r)))
    return records


def main():
    print("Combining benchmark results...")
    if not os.path.isdir(BENCH_OUTPUT_DIR):
        print(f"No {BENCH_OUTPUT_DIR} directory found.")
        return 1

    records = combine(BENCH_OUTPUT_DIR)
    print(f"✅ {len(records)} unique records after de-duplication")

    output_file = os.path.join(BENCH_OUTPUT_DIR, SUMMARY_NAME)
    with open(output_file, "w", encoding="utf-8") as f:
        json.dump(records, f, ensure_ascii=False, indent=2)
    print(f"✅ Combined results written to {output_file}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
