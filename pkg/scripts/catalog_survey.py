#!/usr/bin/env python3
"""Survey every catalog entry: verify all claims, time them, and report
the tropical sign counts entering the dilogarithm identities.

Usage: python3 scripts/catalog_survey.py [--trials N]
"""

import argparse
import time

from periodica.catalog import entry_names, get_entry
from periodica.dilog import count_tropical_signs, verify_identity
from periodica.periodicity import check_matrix_period, check_seed_period_tropical
from periodica.tysystems import build_schedule


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--rng-seed", type=int, default=2026)
    args = parser.parse_args()

    print(f"{'entry':<22}{'claim':<14}{'level':<8}{'len':>5}  verdict   time")
    for name in entry_names():
        entry = get_entry(name)
        for claim in entry.claims:
            t0 = time.time()
            if claim.level == "matrix":
                ok = check_matrix_period(entry.matrix, claim.spec())
            else:
                ok = bool(
                    check_seed_period_tropical(entry.matrix, claim.spec()).seed_periodic
                )
            dt = time.time() - t0
            mark = "ok" if ok else "FAIL"
            print(
                f"{name:<22}{claim.label:<14}{claim.level:<8}"
                f"{len(claim.sequence):>5}  {mark:<9}{dt * 1000:7.1f} ms"
            )

    print()
    print(f"{'entry':<22}{'|S+|':>6}{'N+':>6}{'N-':>6}  dilog residual (max over {args.trials} trials)")
    for name in entry_names():
        entry = get_entry(name)
        if not entry.has_seed_period():
            print(f"{name:<22}     -     -     -  (matrix periods only)")
            continue
        claim = entry.seed_period_claim()
        sched = build_schedule(entry.matrix, claim.spec(), claim.slices)
        n_plus, n_minus, w_plus, w_minus = count_tropical_signs(sched)
        rep = verify_identity(
            sched, trials=args.trials, rng_seed=args.rng_seed
        )
        res = max(rep.residual_minus, rep.residual_plus, rep.trial_spread)
        extra = "" if (n_plus, n_minus) == (w_plus, w_minus) else f"  weighted ({w_plus},{w_minus})"
        print(f"{name:<22}{n_plus + n_minus:>6}{n_plus:>6}{n_minus:>6}  {res:.2e}{extra}")


if __name__ == "__main__":
    main()
