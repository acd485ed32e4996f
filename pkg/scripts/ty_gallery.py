#!/usr/bin/env python3
"""Render the T- and Y-systems of a catalog schedule, as JSON or LaTeX.

Usage:
  python3 scripts/ty_gallery.py A4-level4 plus-matrix --format latex
  python3 scripts/ty_gallery.py A2 full-matrix
"""

import argparse
import json

from periodica.catalog import get_entry
from periodica.tysystems import build_schedule, gen_t_system, gen_y_system, render_latex


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("entry")
    parser.add_argument("claim", help="claim label providing sequence, slices, relabeling")
    parser.add_argument("--format", choices=["json", "latex"], default="latex")
    parser.add_argument("--no-coefficients", action="store_true")
    args = parser.parse_args()

    entry = get_entry(args.entry)
    claim = next((c for c in entry.claims if c.label == args.claim), None)
    if claim is None:
        labels = ", ".join(c.label for c in entry.claims)
        raise SystemExit(f"unknown claim {args.claim!r}; entry has: {labels}")

    schedule = build_schedule(entry.matrix, claim.spec(), claim.slices)
    yrels = gen_y_system(schedule)
    trels = gen_t_system(schedule, with_coefficients=not args.no_coefficients)

    if args.format == "latex":
        print(f"% {entry.name} / {claim.label}: omega = {schedule.omega}, "
              f"regular = {schedule.regular}")
        print("% Y-system")
        print(render_latex(yrels))
        print("% T-system")
        print(render_latex(trels))
    else:
        print(json.dumps({
            "schedule": schedule.to_json(),
            "y_system": [r.to_json() for r in yrels],
            "t_system": [r.to_json() for r in trels],
        }, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
