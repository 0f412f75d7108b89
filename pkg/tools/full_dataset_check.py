#!/usr/bin/env python3
"""
Full-dataset count check

Compares summary.json of a run over MovieLens 25M and an IMDb basics
snapshot with the published corpus counts. Deviations within the band are
expected; larger ones are reported, never treated as failures, because the
IMDb snapshot and stoplists of the published run are not available.

Usage:
    python tools/full_dataset_check.py output/summary.json
    python tools/full_dataset_check.py output/summary.json --band 0.05
"""

import argparse
import json
import sys
from pathlib import Path

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from packages.configuration import config  # noqa: E402

# (summary section, key, published value)
PUBLISHED_COUNTS = (
    ('normalize', 'stems_before_stoplists', 2862),
    ('normalize', 'tags', 2788),
    ('normalize', 'films', 34412),
    ('cluster', 'components', 478),
    ('cluster', 'groups', 1043),
    ('training', 'training', 453),
    ('training', 'non_noise', 99),
    ('training', 'noise', 354),
    ('classification', 'accepted', 1148),
)


def compare(summary, band):
    """Rows of (name, published, observed, relative deviation or None, within band)"""
    rows = []
    for section, key, published in PUBLISHED_COUNTS:
        observed = summary.get(section, {}).get(key)
        if observed is None:
            rows.append((f"{section}.{key}", published, None, None, False))
            continue
        deviation = (observed - published) / published
        rows.append((f"{section}.{key}", published, observed, deviation, abs(deviation) <= band))
    return rows


def compare_theta(summary, reference=config.REFERENCE_THRESHOLD):
    """(θ used or None, reference θ, whether they agree to 1e-9)"""
    used = summary.get('classification', {}).get('theta')
    reference = tuple(float(v) for v in reference)
    if used is None:
        return None, reference, False
    used = tuple(float(v) for v in used)
    agrees = len(used) == len(reference) and all(abs(a - b) <= 1e-9 for a, b in zip(used, reference))
    return used, reference, agrees


def main(argv=None):
    parser = argparse.ArgumentParser(description="Compare a full-dataset run with the published counts")
    parser.add_argument('summary', type=Path, help='summary.json of a full pipeline run')
    parser.add_argument('--band', type=float, default=0.10, help='Relative deviation reported as close (default: 0.10)')
    args = parser.parse_args(argv)

    with open(args.summary, 'r', encoding='utf-8') as f:
        summary = json.load(f)

    print("📏 FULL-DATASET COUNT CHECK")
    print("=" * 70)
    print(f"{'count':<34}{'published':>10}{'observed':>10}{'deviation':>12}")
    print("-" * 70)
    for name, published, observed, deviation, close in compare(summary, args.band):
        if observed is None:
            print(f"⚪ {name:<32}{published:>10}{'-':>10}{'missing':>12}")
            continue
        marker = "✅" if close else "⚠️ "
        print(f"{marker} {name:<32}{published:>10}{observed:>10}{deviation:>+11.1%}")

    used, reference, agrees = compare_theta(summary)
    if used is not None:
        marker = "✅" if agrees else "⚠️ "
        print(f"\n{marker} θ used: ({', '.join(f'{v:g}' for v in used)}), "
              f"reference ({', '.join(f'{v:g}' for v in reference)})")
    print(f"Seed: {summary.get('seed')}")
    return 0


if __name__ == '__main__':
    sys.exit(main())
