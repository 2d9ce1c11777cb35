#!/usr/bin/env python3
"""One-pass LIBSVM file scan, independent of the C++ parser.

Prints the row count, the dimension after the 1-based -> 0-based index shift,
the label set, and max_i ||a_i||^2 (the quantity behind the logistic
smoothness constant). Used to pin the expected values asserted in the tests.

Usage: libsvm_scan.py <file>
"""

import sys


def main() -> None:
    if len(sys.argv) != 2:
        sys.exit("usage: libsvm_scan.py <file>")
    n = 0
    max_index = 0
    labels = set()
    max_row_sq = 0.0
    with open(sys.argv[1], "r", encoding="ascii") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            labels.add(float(parts[0]))
            n += 1
            row_sq = 0.0
            for tok in parts[1:]:
                idx, val = tok.split(":", 1)
                max_index = max(max_index, int(idx))
                row_sq += float(val) ** 2
            max_row_sq = max(max_row_sq, row_sq)
    print(f"n = {n}")
    print(f"d = {max_index} (0-based dim after the index shift)")
    print(f"labels = {sorted(labels)}")
    print(f"max ||a_i||^2 = {max_row_sq!r}")


if __name__ == "__main__":
    main()
