#!/usr/bin/env python3
"""Lossy compression demo: class averaging as block smoothing of a 2-D array.

An n x n array is a tensor over the one-dimensional index set {0..n-1}.  A
non-injective index map folding each run of `block` indices to one value
makes the normalized averaging replace every block x block tile by its mean;
the stretched matrix of the averaged tensor is the (n/block)^2 compressed
payload, and the block-constant tensor is the reconstruction.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from stretchkit import IndexMap, IndexSet, Tensor, average, stretch
from stretchkit.scalars import CF64


def synthetic_image(n: int) -> list[list[float]]:
    """Diagonal gradient with a superimposed checker, deterministic."""
    return [[(i + j) / (2 * n - 2) + 0.15 * ((i // 2 + j // 2) % 2)
             for j in range(n)] for i in range(n)]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=16,
                        help="side of the synthetic array (default 16)")
    parser.add_argument("--block", type=int, default=4,
                        help="side of each averaged tile (default 4)")
    parser.add_argument("--input", help="JSON file with a square 2-D array")
    parser.add_argument("--out", help="output path (default: stdout)")
    args = parser.parse_args(argv)

    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            image = json.load(fh)
        n = len(image)
        if any(len(row) != n for row in image):
            print("input array must be square", file=sys.stderr)
            return 2
    else:
        n = args.size
        image = synthetic_image(n)
    if n % args.block:
        print("block size must divide the array side", file=sys.stderr)
        return 2

    domain = IndexSet.rectangular((n,))
    fold = IndexMap.from_table(domain, {(i,): i // args.block for i in range(n)})
    tensor = Tensor(domain, CF64, [complex(v) for row in image for v in row])

    smoothed = average(tensor, fold, normalized=True)
    reconstruction = [[smoothed.at_pos(i, j).real for j in range(n)]
                      for i in range(n)]
    means = stretch(smoothed, fold)
    compressed = [[means.at(i, j).real / (args.block ** 2)
                   for j in range(means.n_cols)] for i in range(means.n_rows)]

    errors = [abs(image[i][j] - reconstruction[i][j])
              for i in range(n) for j in range(n)]
    payload = {
        "side": n,
        "block": args.block,
        "compressed": compressed,
        "reconstruction": reconstruction,
        "max_abs_error": max(errors),
        "rmse": math.sqrt(sum(e * e for e in errors) / len(errors)),
        "compression_ratio": (n * n) / (len(compressed) ** 2),
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"side={n} block={args.block} ratio={payload['compression_ratio']:.0f}x "
          f"rmse={payload['rmse']:.4f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
