#!/usr/bin/env python3
"""Writes every lattice with at most 6 elements, up to isomorphism, as an
algebra file (operations join and meet, with top) into the given directory."""

import itertools
import os
import sys


def closure(n, rel):
    le = [[i == j or (i, j) in rel for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    return le


def is_partial_order(le, n):
    return all(not (le[i][j] and le[j][i]) for i in range(n) for j in range(n) if i != j)


def join_table(le, n):
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            ubs = [c for c in range(n) if le[a][c] and le[b][c]]
            least = [c for c in ubs if all(le[c][d] for d in ubs)]
            if len(least) != 1:
                return None
            row.append(least[0])
        table.append(row)
    return table


def meet_table(le, n):
    flipped = [[le[j][i] for j in range(n)] for i in range(n)]
    return join_table(flipped, n)


def canonical(le, n):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(le[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def linear_extension_relabel(le, n):
    # Relabel so that i <= j implies i <= j as integers, bottom = 0, top = n-1.
    order = sorted(range(n), key=lambda x: (sum(le[y][x] for y in range(n)), x))
    pos = {v: k for k, v in enumerate(order)}
    out = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[pos[i]][pos[j]] = le[i][j]
    return out


def lattices(n):
    if n == 1:
        yield [[True]]
        return
    mid = list(range(1, n - 1))
    pairs = [(a, b) for a in mid for b in mid if a < b]
    seen = set()
    # Orient every comparable pair from smaller to larger label; every poset
    # on the middle elements has such a labeling up to isomorphism.
    for mask in range(1 << len(pairs)):
        rel = {(0, x) for x in range(1, n)} | {(x, n - 1) for x in range(n - 1)}
        rel |= {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        le = closure(n, rel)
        if not is_partial_order(le, n):
            continue
        if join_table(le, n) is None or meet_table(le, n) is None:
            continue
        key = canonical(le, n)
        if key in seen:
            continue
        seen.add(key)
        yield linear_extension_relabel(le, n)


def name_of(le, n, index):
    covers = sum(
        1
        for i in range(n)
        for j in range(n)
        if i != j and le[i][j] and not any(le[i][k] and le[k][j] for k in range(n) if k not in (i, j))
    )
    comparable = sum(1 for i in range(n) for j in range(n) if i < j and (le[i][j] or le[j][i]))
    if comparable == n * (n - 1) // 2:
        return "chain%d" % n
    atoms = [x for x in range(1, n) if all(not le[y][x] for y in range(1, n) if y != x)]
    if n == 4:
        return "b2x2"
    if n == 5 and len(atoms) == 3 and covers == 6:
        return "m3"
    if n == 5 and len(atoms) == 2 and covers == 5:
        heights = sorted(sum(le[y][x] for y in range(n)) for x in range(n))
        if heights == [1, 2, 2, 3, 5]:
            return "n5"
    return "lat%d_%02d" % (n, index)


def is_product_2x3(le, n):
    if n != 6:
        return False
    # 2x3 with elements (a,b), a<2, b<3.
    elems = [(a, b) for a in range(2) for b in range(3)]
    prod = [[ea[0] <= eb[0] and ea[1] <= eb[1] for eb in elems] for ea in elems]
    return canonical(prod, 6) == canonical(le, n)


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data/corpus"
    os.makedirs(outdir, exist_ok=True)
    count = 0
    for n in range(1, 7):
        for index, le in enumerate(lattices(n)):
            name = "b2x3" if is_product_2x3(le, n) else name_of(le, n, index)
            jt = join_table(le, n)
            mt = meet_table(le, n)
            with open(os.path.join(outdir, name + ".alg"), "w") as f:
                f.write("# %d-element lattice\n" % n)
                f.write("alg %d\n" % n)
                f.write("op join 2 %s\n" % " ".join(str(v) for row in jt for v in row))
                f.write("op meet 2 %s\n" % " ".join(str(v) for row in mt for v in row))
                f.write("join join\n")
                f.write("top %d\n" % (n - 1))
            count += 1
    print(count)


if __name__ == "__main__":
    main()
