#!/usr/bin/env python3
"""Quick slack census: a reduced campaign printing per-entry slack statistics.

Useful while developing: shows how much numerical margin each catalog
entry has on each operand family, without the full campaign cost.
"""

import sys

from numrad.harness import CampaignConfig, run_campaign


def main() -> int:
    cfg = CampaignConfig(samples_per_family=25, workers=2, quad_samples=5)
    report = run_campaign(cfg, log=lambda m: None)
    print(f"{'entry':6s} {'count':>6s} {'min slack':>12s} {'median':>12s} {'viol':>5s} {'skip':>5s}")
    for entry_id, stats in report.per_entry.items():
        min_s = "-" if stats["min_slack"] is None else f"{stats['min_slack']:.3e}"
        med_s = "-" if stats["median_slack"] is None else f"{stats['median_slack']:.3e}"
        print(f"{entry_id:6s} {stats['count']:6d} {min_s:>12s} {med_s:>12s} "
              f"{stats['violations']:5d} {stats['skips']:5d}")
    print(f"total: {report.total_reports} reports, {report.total_violations} violations, "
          f"{report.total_elapsed_s:.1f}s")
    return 0 if report.total_violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
