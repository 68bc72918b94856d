"""Print every census report and the good-characteristic counts.

    python3 scripts/run_census.py [--structured]
"""

import argparse
import time

from unibrauer import census, sprdata


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--structured", action="store_true")
    args = ap.parse_args()
    summary = []
    for t in sprdata.EXCEPTIONAL:
        for ell in sprdata.BAD_PRIMES[t]:
            start = time.perf_counter()
            rep = census.alpha(t, ell)
            dt = time.perf_counter() - start
            print(census.format_structured(rep) if args.structured else rep.human())
            print()
            summary.append((t, ell, rep.total, rep.expected, rep.verdict, dt))
        summary.append((t, "good", census.unipotent_character_count(t), sprdata.expected_total(t, "good"), "", 0.0))
    print(f"{'type':<5} {'l':<5} {'total':>6} {'expected':>9}  verdict   seconds")
    for t, ell, tot, exp, verdict, dt in summary:
        verdict = verdict or ("match" if tot == exp else "mismatch")
        print(f"{t:<5} {ell!s:<5} {tot:>6} {exp:>9}  {verdict:<9} {dt:.2f}")


if __name__ == "__main__":
    main()
