"""Leaf resistance of the 3-node star against the tree and star formulas."""
import argparse

from digraph_resistance.verify import star_report


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-size", type=int, default=5)
    parser.add_argument("--format", choices=("table", "json", "csv"), default="table")
    args = parser.parse_args()
    report = star_report(args.max_size)
    if args.format != "table":
        print(report.render(args.format))
        return
    print(f"{'n':>3} {'m':>3} {'oracle':>10} {'tree':>10} {'printed':>10} {'fitted':>10}")
    for r in report.results:
        print(f"{r['n']:>3} {r['m']:>3} {r['oracle']:>10.6f} {r['tree_formula']:>10.6f} "
              f"{r['printed_formula']:>10.6f} {r['fitted_formula']:>10.6f}")
    for note in report.notes:
        print(note)


if __name__ == "__main__":
    main()
