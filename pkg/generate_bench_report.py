#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Render the combined benchmark summary as a single HTML page.
"""

import html
import json
import os
import sys
from datetime import datetime

from combine_results import SUMMARY_NAME
from config import BENCH_OUTPUT_DIR


def load_bench_results(path=None):
    path = path or os.path.join(BENCH_OUTPUT_DIR, SUMMARY_NAME)
    if not os.path.exists(path):
        print(f"❌ summary not found: {path}")
        return []
    try:
        with open(path, "r", encoding="utf-8") as f:
            records = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        print(f"❌ failed to load {path}: {e}")
        return []
    print(f"✅ loaded {path} ({len(records)} records)")
    return records


def get_status_badge_class(record):
    if not record.get("within_guarantee"):
        return "status-broken"
    if record.get("cost") is not None and record.get("cost") == record.get("oracle_cost"):
        return "status-optimal"
    return "status-within"


def calculate_stats(records):
    total = len(records)
    within = sum(1 for r in records if r.get("within_guarantee"))
    optimal = sum(1 for r in records if r.get("cost") is not None and r.get("cost") == r.get("oracle_cost"))
    ratios = [r["ratio"] for r in records if r.get("ratio") is not None]
    return {
        "total_records": total,
        "within_count": within,
        "optimal_count": optimal,
        "broken_count": total - within,
        "avg_ratio": sum(ratios) / len(ratios) if ratios else 0.0,
        "worst_ratio": max(ratios, default=0.0),
    }


def _cell(value):
    return "-" if value is None else html.escape(str(value))


def generate_table_rows(records):
    rows = []
    for r in records:
        badge = get_status_badge_class(r)
        status = {"status-optimal": "optimal", "status-within": "within", "status-broken": "broken"}[badge]
        ratio = r.get("ratio")
        rows.append(f'''
            <tr data-ratio="{ratio if ratio is not None else 0}">
                <td>{_cell(r.get("suite"))}</td>
                <td class="label-cell">{_cell(r.get("label"))}</td>
                <td>{_cell(r.get("goal"))} / {_cell(r.get("measure"))}</td>
                <td class="method-cell">{_cell(r.get("method"))}</td>
                <td>{_cell(r.get("guarantee"))}</td>
                <td class="num">{_cell(r.get("cost"))}</td>
                <td class="num">{_cell(r.get("oracle_cost"))}</td>
                <td class="num">{_cell(ratio)}</td>
                <td class="num">{_cell(r.get("seconds"))}</td>
                <td><span class="status-badge {badge}">{status}</span></td>
            </tr>''')
    return "".join(rows)


def generate_html_report(records, stats):
    table_rows = generate_table_rows(records)
    return f'''<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>Pebble motion benchmark - {datetime.now().strftime('%Y-%m-%d')}</title>
    <style>
        * {{ margin: 0; padding: 0; box-sizing: border-box; }}
        body {{
            font-family: -apple-system, BlinkMacSystemFont, 'SF Pro Text', 'Helvetica Neue', sans-serif;
            background: #f5f5f7;
            color: #1d1d1f;
            padding: 60px 20px;
            font-size: 15px;
            -webkit-font-smoothing: antialiased;
        }}
        .container {{ max-width: 1400px; margin: 0 auto; }}
        .header {{ text-align: center; margin-bottom: 48px; }}
        .title {{ font-size: 48px; font-weight: 700; margin-bottom: 8px; }}
        .subtitle {{ font-size: 19px; color: #6e6e73; }}
        .stats {{
            display: grid;
            grid-template-columns: repeat(auto-fit, minmax(200px, 1fr));
            gap: 20px;
            margin-bottom: 40px;
        }}
        .stat-card {{
            background: #ffffff;
            border-radius: 18px;
            padding: 28px 24px;
            text-align: center;
            box-shadow: 0 4px 16px rgba(0, 0, 0, 0.08);
        }}
        .stat-number {{ font-size: 40px; font-weight: 600; }}
        .stat-label {{ font-size: 14px; color: #6e6e73; margin-top: 6px; }}
        .table-wrapper {{
            background: #ffffff;
            border-radius: 18px;
            box-shadow: 0 4px 16px rgba(0, 0, 0, 0.08);
            overflow: hidden;
        }}
        .table-header {{
            display: flex;
            justify-content: space-between;
            align-items: center;
            padding: 20px 24px;
            border-bottom: 1px solid #d2d2d7;
        }}
        .table-title {{ font-size: 21px; font-weight: 600; }}
        .sort-button {{
            background: #0071e3;
            color: #ffffff;
            border: none;
            border-radius: 980px;
            padding: 8px 18px;
            font-size: 14px;
            cursor: pointer;
        }}
        table {{ width: 100%; border-collapse: collapse; }}
        th, td {{ padding: 12px 16px; text-align: left; border-bottom: 1px solid #f0f0f2; }}
        th {{ font-size: 13px; color: #6e6e73; font-weight: 600; background: #fbfbfd; }}
        td.num {{ text-align: right; font-variant-numeric: tabular-nums; }}
        .method-cell {{ font-family: 'SF Mono', Menlo, monospace; font-size: 13px; }}
        .status-badge {{ border-radius: 980px; padding: 4px 12px; font-size: 12px; font-weight: 600; }}
        .status-optimal {{ background: #e3f5e8; color: #1d7a3a; }}
        .status-within {{ background: #e8f0fd; color: #0058b0; }}
        .status-broken {{ background: #fde8e8; color: #b00020; }}
        .footer {{ text-align: center; color: #86868b; font-size: 12px; margin-top: 32px; }}
    </style>
</head>
<body>
    <div class="container">
        <header class="header">
            <h1 class="title">Pebble motion benchmark</h1>
            <p class="subtitle">{datetime.now().strftime('%Y-%m-%d %H:%M')}</p>
        </header>

        <div class="stats">
            <div class="stat-card">
                <div class="stat-number">{stats['total_records']}</div>
                <div class="stat-label">records</div>
            </div>
            <div class="stat-card">
                <div class="stat-number">{stats['optimal_count']}</div>
                <div class="stat-label">equal to the oracle</div>
            </div>
            <div class="stat-card">
                <div class="stat-number">{stats['within_count']}</div>
                <div class="stat-label">within guarantee</div>
            </div>
            <div class="stat-card">
                <div class="stat-number">{stats['broken_count']}</div>
                <div class="stat-label">guarantee broken</div>
            </div>
            <div class="stat-card">
                <div class="stat-number">{stats['avg_ratio']:.3f}</div>
                <div class="stat-label">mean ratio (worst {stats['worst_ratio']:.3f})</div>
            </div>
        </div>

        <div class="table-wrapper">
            <div class="table-header">
                <div class="table-title">Solver runs</div>
                <button class="sort-button" id="sortButton">Sort by ratio</button>
            </div>
            <table id="benchTable">
                <thead>
                    <tr>
                        <th>suite</th><th>label</th><th>goal / measure</th><th>method</th>
                        <th>guarantee</th><th>cost</th><th>oracle</th><th>ratio</th>
                        <th>seconds</th><th>status</th>
                    </tr>
                </thead>
                <tbody>{table_rows}
                </tbody>
            </table>
        </div>

        <footer class="footer">generated from {html.escape(os.path.join(BENCH_OUTPUT_DIR, SUMMARY_NAME))}</footer>
    </div>

    <script>
        const sortButton = document.getElementById('sortButton');
        const tbody = document.querySelector('#benchTable tbody');
        const originalRows = Array.from(tbody.querySelectorAll('tr'));
        let sorted = false;

        sortButton.addEventListener('click', function() {{
            const rows = sorted ? originalRows : Array.from(tbody.querySelectorAll('tr')).sort(
                (a, b) => parseFloat(b.dataset.ratio) - parseFloat(a.dataset.ratio));
            tbody.innerHTML = '';
            rows.forEach(row => tbody.appendChild(row));
            sorted = !sorted;
            sortButton.textContent = sorted ? 'Original order' : 'Sort by ratio';
        }});
    </script>
</body>
</html>
'''


def main():
    print("=" * 60)
    print("Pebble motion benchmark report")
    print("=" * 60)
    print(f"Run time: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print()

    print("[Step 1/3] Loading combined results...")
    records = load_bench_results()
    if not records:
        print("\n❌ no benchmark records to report")
        return 1

    print("\n[Step 2/3] Computing statistics...")
    stats = calculate_stats(records)
    print(f"  📊 records: {stats['total_records']}")
    print(f"  ⭐ equal to the oracle: {stats['optimal_count']}")
    print(f"  👍 within guarantee: {stats['within_count']}")
    print(f"  📈 mean ratio: {stats['avg_ratio']:.3f}")

    print("\n[Step 3/3] Writing HTML report...")
    html_content = generate_html_report(records, stats)
    archive_dir = os.path.join(BENCH_OUTPUT_DIR, "archive")
    os.makedirs(archive_dir, exist_ok=True)
    archive_file = os.path.join(archive_dir, f"{datetime.now().strftime('%Y-%m-%d-%H-%M')}.html")
    latest_file = os.path.join(BENCH_OUTPUT_DIR, "latest.html")
    try:
        for path in (archive_file, latest_file):
            with open(path, "w", encoding="utf-8") as f:
                f.write(html_content)
            print(f"✅ saved: {path}")
    except OSError as e:
        print(f"❌ save failed: {e}")
        return 1

    print("\n" + "=" * 60)
    print("✅ report complete")
    print("=" * 60)
    return 0


if __name__ == "__main__":
    sys.exit(main())
