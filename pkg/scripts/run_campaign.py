"""Randomized campaign over the finite-space theorems.

    python scripts/run_campaign.py --trials 5000 --seed 3 --max-atoms 8
"""

import argparse
import dataclasses
import sys

from possprob.campaign import CampaignConfig, run_campaign


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in dataclasses.fields(CampaignConfig):
        parser.add_argument("--" + f.name.replace("_", "-"), type=int, default=f.default)
    config = CampaignConfig(**vars(parser.parse_args(argv)))
    report = run_campaign(config)
    print(f"config: {config}")
    for name, r in report.results.items():
        status = "PASS" if r.passed else "FAIL"
        line = f"{name:16s} {status}  instances={r.instances} failures={r.failures} skipped={r.skipped}"
        print(line + (f"  first: {r.first_failure}" if r.first_failure else ""))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
