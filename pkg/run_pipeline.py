#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Full benchmark pipeline: every suite, then combine, then the HTML report.

Usage: python3 run_pipeline.py [seed]
"""

import subprocess
import sys
from datetime import datetime

from bench_suites import SUITES


def print_banner():
    print("\n" + "=" * 70)
    print(" " * 15 + "Pebble motion benchmark pipeline")
    print("=" * 70)
    print(f"\nRun time: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print("-" * 70)


def print_step(step_num, total, title):
    print(f"\n[Step {step_num}/{total}] {title}")
    print("-" * 70)


def run_script(command, description):
    """Run a Python script with this interpreter; True on exit code 0."""
    print(f"\n📦 Running: {description}")
    print(f"   command: {' '.join(command)}\n")
    try:
        result = subprocess.run(
            [sys.executable] + command,
            capture_output=True,
            text=True,
            encoding="utf-8",
        )
    except OSError as e:
        print(f"❌ failed to start: {e}")
        return False

    if result.stdout:
        print(result.stdout)
    if result.stderr:
        print("⚠️  stderr:")
        print(result.stderr)
    if result.returncode == 0:
        print(f"✅ {description} - ok")
        return True
    print(f"❌ {description} - failed (exit code {result.returncode})")
    return False


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    seed = argv[0] if argv else "0"
    print_banner()

    total_steps = len(SUITES) + 2
    for step, suite in enumerate(SUITES, 1):
        print_step(step, total_steps, f"Benchmark suite '{suite}'")
        command = ["run_pebble_motion.py", "bench", "--suite", suite, "--seed", seed]
        if not run_script(command, f"suite {suite}"):
            print(f"\n❌ suite {suite} failed")
            return 1

    print_step(total_steps - 1, total_steps, "Combine suite files")
    if not run_script(["combine_results.py"], "combine results"):
        return 1

    print_step(total_steps, total_steps, "HTML report")
    if not run_script(["generate_bench_report.py"], "generate report"):
        return 1

    print("\n" + "=" * 70)
    print(" 🎉 pipeline complete")
    print("=" * 70)
    print("\n📄 Output files:")
    print("   ✓ bench_results/suite_<name>_seed<N>.json")
    print("   ✓ bench_results/bench_summary.json")
    print("   ✓ bench_results/latest.html")
    print("\n" + "=" * 70 + "\n")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user")
        sys.exit(130)
    except Exception as e:
        print(f"\n\n❌ Unexpected failure: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
