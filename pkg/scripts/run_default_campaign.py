#!/usr/bin/env python3
"""Run the default verification campaign and write reports next to this script.

Equivalent to `numrad verify --out campaign_reports.jsonl` with the worker
count matched to the machine; prints the summary JSON to stdout.
"""

import json
import os
import sys

from numrad.harness import CampaignConfig, run_campaign


def main() -> int:
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "campaign_reports.jsonl")
    cfg = CampaignConfig(workers=max(1, os.cpu_count() or 1), out=out)
    report = run_campaign(cfg)
    json.dump(report.to_obj(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if report.total_violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
