#!/usr/bin/env python3
"""Regenerate the bundled corpus group files and their checksum manifest."""

import hashlib
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from uniserial.constructions import psl3_4, sl2_5
from uniserial.perm import PermGroup, Permutation, direct_product

OUT = Path(__file__).resolve().parents[1] / "src" / "uniserial" / "data"


def regular_rep(p, mats):
    """Regular permutation representation of the matrix group over F_p."""
    mats = [np.array(m, dtype=np.int64) % p for m in mats]
    dim = mats[0].shape[0]
    ident = np.eye(dim, dtype=np.int64)
    elements = [ident]
    index = {ident.tobytes(): 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for mat in frontier:
            for gen in mats:
                prod = (mat @ gen) % p
                key = prod.tobytes()
                if key not in index:
                    index[key] = len(elements)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    n = len(elements)
    perms = []
    for gen in mats:
        images = [index[((el @ gen) % p).tobytes()] for el in elements]
        perms.append(Permutation(images, n))
    return PermGroup(n, perms)


def psl2_7():
    """PSL(2,7) on the 8 points of the projective line over F_7."""
    pts = list(range(7)) + ["inf"]
    index = {v: i for i, v in enumerate(pts)}

    def moebius(a, b, c, d):
        images = [0] * 8
        for v, i in index.items():
            if v == "inf":
                w = "inf" if c == 0 else (a * pow(c, 5, 7)) % 7
            else:
                den = (c * v + d) % 7
                if den == 0:
                    w = "inf"
                else:
                    w = ((a * v + b) * pow(den, 5, 7)) % 7
            images[i] = index[w]
        return Permutation(images, 8)

    return PermGroup(8, [moebius(1, 1, 0, 1), moebius(0, -1, 1, 0)])


def c2xc2():
    return PermGroup(4, [Permutation.parse("(0,1)", 4), Permutation.parse("(2,3)", 4)])


def elementary(k):
    gens = [Permutation.parse(f"({2*i},{2*i+1})", 2 * k) for i in range(k)]
    return PermGroup(2 * k, gens)


def frobenius20():
    return PermGroup(5, [Permutation.parse("(0,1,2,3,4)", 5), Permutation([0, 2, 4, 1, 3], 5)])


def c7_c3():
    return PermGroup(7, [
        Permutation([(x + 1) % 7 for x in range(7)], 7),
        Permutation([(2 * x) % 7 for x in range(7)], 7),
    ])


GROUPS = {
    # order <= 200 corpus
    "c2": PermGroup.cyclic(2),
    "c3": PermGroup.cyclic(3),
    "c4": PermGroup.cyclic(4),
    "v4": c2xc2(),
    "c6": PermGroup.cyclic(6),
    "s3": PermGroup.symmetric(3),
    "c8": PermGroup.cyclic(8),
    "d8": PermGroup.dihedral(4),
    "q8": regular_rep(5, [[[0, 4], [1, 0]], [[2, 0], [0, 3]]]),
    "c2e3": elementary(3),
    "c9": PermGroup.cyclic(9),
    "d10": PermGroup.dihedral(5),
    "a4": PermGroup.alternating(4),
    "c12": PermGroup.cyclic(12),
    "d12": PermGroup.dihedral(6),
    "c15": PermGroup.cyclic(15),
    "c2e4": elementary(4),
    "d16": PermGroup.dihedral(8),
    "q16": regular_rep(17, [[[2, 0], [0, 9]], [[0, 16], [1, 0]]]),
    "f20": frobenius20(),
    "c7c3": c7_c3(),
    "s4": PermGroup.symmetric(4),
    "sl23": regular_rep(3, [[[1, 1], [0, 1]], [[0, 2], [1, 0]]]),
    "c2xa4": direct_product(PermGroup.cyclic(2), PermGroup.alternating(4)),
    "s3xs3": direct_product(PermGroup.symmetric(3), PermGroup.symmetric(3)),
    "a5": PermGroup.alternating(5),
    "s5": PermGroup.symmetric(5),
    "sl25": sl2_5(),
    "psl27": psl2_7(),
    # above 200: named instances for the identity and oracle batteries
    "a6": PermGroup.alternating(6),
    "s6": PermGroup.symmetric(6),
    "psl34": psl3_4(),
}

EXPECTED_ORDERS = {
    "c2": 2, "c3": 3, "c4": 4, "v4": 4, "c6": 6, "s3": 6, "c8": 8, "d8": 8,
    "q8": 8, "c2e3": 8, "c9": 9, "d10": 10, "a4": 12, "c12": 12, "d12": 12,
    "c15": 15, "c2e4": 16, "d16": 16, "q16": 16, "f20": 20, "c7c3": 21,
    "s4": 24, "sl23": 24, "c2xa4": 24, "s3xs3": 36, "a5": 60, "s5": 120,
    "sl25": 120, "psl27": 168, "a6": 360, "s6": 720, "psl34": 20160,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name, group in sorted(GROUPS.items()):
        order = group.order()
        assert order == EXPECTED_ORDERS[name], (name, order)
        payload = {"degree": group.degree, "order": str(order),
                   "generators": group.to_dict()["generators"]}
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        path = OUT / f"{name}.json"
        path.write_text(text, encoding="utf-8")
        digest = hashlib.sha256(text.encode()).hexdigest()
        manifest.append(f"{digest}  {name}.json")
        print(f"{name:8s} degree {group.degree:3d} order {order}")
    (OUT / "CHECKSUMS").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    print(f"wrote {len(GROUPS)} group files + CHECKSUMS")


if __name__ == "__main__":
    main()
