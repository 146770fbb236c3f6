#!/usr/bin/env python3
"""Wrap a plain CSV sinogram (one row per measured angle, 2*N_s+1 columns of
equally spaced signed offsets) in the tomofeat sinogram header.

The angles must sit on the grid phi_j = j*pi/n_angles_full; pass the indices
of the measured ones. Offsets run from -halfwidth to +halfwidth.

Example, 36 directions rebinned onto a 360-angle grid with 739 offsets:
    csv_to_sinogram.py data.csv out.sino --halfwidth 1.5 \
        --n-angles-full 360 --angle-indices 0:360:10
"""

import argparse
import csv
import math
import sys


def parse_indices(text):
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        return list(range(*parts))
    return [int(p) for p in text.split(",") if p.strip()]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--halfwidth", type=float, required=True)
    ap.add_argument("--n-angles-full", type=int, required=True)
    ap.add_argument("--angle-indices", required=True, help="comma list or start:stop[:step]")
    ap.add_argument("--bandwidth", type=float, help="defaults to pi * N_s")
    args = ap.parse_args()

    with open(args.input, newline="") as f:
        rows = [[float(v) for v in r] for r in csv.reader(f) if r]
    idx = parse_indices(args.angle_indices)
    if len(rows) != len(idx):
        sys.exit(f"{len(rows)} rows but {len(idx)} angle indices")
    ns = len(rows[0])
    if ns % 2 == 0 or any(len(r) != ns for r in rows):
        sys.exit("every row needs the same odd number of offsets")
    if sorted(set(idx)) != idx or idx[-1] >= args.n_angles_full:
        sys.exit("angle indices must be increasing and below n-angles-full")
    n_radial = (ns - 1) // 2
    bandwidth = args.bandwidth if args.bandwidth else math.pi * n_radial

    with open(args.output, "w") as out:
        out.write("format=tomofeat-sinogram\n")
        out.write(f"bandwidth={bandwidth!r}\n")
        out.write(f"n_angles_full={args.n_angles_full}\n")
        out.write(f"n_radial={n_radial}\n")
        out.write(f"radial_halfwidth={args.halfwidth!r}\n")
        out.write("angle_subset=" + ",".join(str(i) for i in idx) + "\n")
        out.write("channels=1\nencoding=csv\nend_header\n")
        for r in rows:
            out.write(",".join(repr(v) for v in r) + "\n")


if __name__ == "__main__":
    main()
