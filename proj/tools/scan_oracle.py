#!/usr/bin/env python3
"""Brute-force calibration for the 2x2 binary scan.

For every set P of at most four binary 2x2 patterns, find the smallest N with
no valid N x N square and the smallest max(p, q) with a valid p x q torus,
by transfer matrices over rows. Prints the worst cases, which bound the stage
decide needs (stage s checks squares of side 2 + s and tori with max(p,q) = s).
"""
import itertools
import sys

import numpy as np

LIMIT = int(sys.argv[1]) if len(sys.argv) > 1 else 6


def window_index(lo, hi, x, n, cyclic):
    x1 = (x + 1) % n if cyclic else x + 1
    return ((lo >> x) & 1) | (((lo >> x1) & 1) << 1) | (((hi >> x) & 1) << 2) | (((hi >> x1) & 1) << 3)


def transfer(mask, n, cyclic):
    rows = 1 << n
    span = n if cyclic else n - 1
    t = np.zeros((rows, rows), dtype=bool)
    for lo in range(rows):
        for hi in range(rows):
            t[lo, hi] = all((mask >> window_index(lo, hi, x, n, cyclic)) & 1 for x in range(span))
    return t


def square_exists(mask, n):
    t = transfer(mask, n, False).astype(np.int64)
    reach = np.ones(1 << n, dtype=np.int64)
    for _ in range(n - 1):
        reach = (reach @ t > 0).astype(np.int64)
    return reach.any()


def torus_exists(mask, p, q):
    t = transfer(mask, p, True).astype(np.int64)
    m = np.eye(1 << p, dtype=np.int64)
    for _ in range(q):
        m = (m @ t > 0).astype(np.int64)
    return bool(np.trace(m) > 0)


def main():
    stragglers = []
    worst_empty = worst_torus = 0
    count = 0
    for size in range(5):
        for pats in itertools.combinations(range(16), size):
            mask = sum(1 << i for i in pats)
            count += 1
            empty_n = next((n for n in range(2, LIMIT + 1) if not square_exists(mask, n)), None)
            torus_s = next((s for s in range(1, LIMIT + 1)
                            if any(torus_exists(mask, p, q) for p in range(1, s + 1) for q in range(1, s + 1)
                                   if max(p, q) == s)), None)
            if empty_n is None and torus_s is None:
                stragglers.append(mask)
            if empty_n is not None and torus_s is not None:
                print(f"mask {mask}: both an empty square and a torus", file=sys.stderr)
            if empty_n is not None:
                worst_empty = max(worst_empty, empty_n)
            if torus_s is not None:
                worst_torus = max(worst_torus, torus_s)
    print(f"{count} sets, limit {LIMIT}")
    print(f"largest emptiness certificate N: {worst_empty}")
    print(f"largest minimal torus max(p,q): {worst_torus}")
    print(f"stragglers: {len(stragglers)} {stragglers[:20]}")


if __name__ == "__main__":
    main()
