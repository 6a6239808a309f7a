"""Tree resistance r(n, m) from the closed form, the recurrence and the pipeline."""
import argparse

from digraph_resistance.closed_forms import tree_excess, tree_resistance, tree_table
from digraph_resistance.verify import tree_deviation


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--excess-m", type=int, default=6)
    parser.add_argument("--excess-d", type=int, default=20)
    args = parser.parse_args()
    size = args.max_n
    table = tree_table(size, size)
    print("r(n, m), exact")
    for n in range(1, size + 1):
        print(f"n={n:>2}: " + "  ".join(str(tree_resistance(n, m)) for m in range(1, size + 1)))
    same = all(table[(n, m)] == tree_resistance(n, m) for n in range(1, size + 1) for m in range(1, size + 1))
    print(f"recurrence table equals closed form: {same}")
    print(f"max |closed form - Lyapunov| on the grid: {tree_deviation(size)['max_deviation']:.2e}")
    print("excess e(m, d) as floats")
    for m in range(1, args.excess_m + 1):
        print(f"m={m}: " + " ".join(f"{float(tree_excess(m, d)):.4f}" for d in range(0, args.excess_d + 1, 4)))


if __name__ == "__main__":
    main()
