#!/usr/bin/env python3
"""Regenerate the golden confidence table (18 cardinalities x 6 cells).

Usage: python scripts/make_table1.py [OUT.csv]
"""

import sys

from qbounds.reports import table1, write_table1_csv


def main() -> None:
    rows = table1()
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w", encoding="utf-8", newline="\n") as handle:
            write_table1_csv(rows, handle)
        print(sys.argv[1])
    else:
        write_table1_csv(rows, sys.stdout)


if __name__ == "__main__":
    main()
