"""Brute-force oracles, deliberately independent of the algorithms they check.

Subgroups are enumerated by extending every known subgroup by every group
element; generation counts come from raw tuple iteration.  Only usable for
small orders, which is the point.
"""

import numpy as np

from uniserial.lattice import ElementTable


def all_subgroups(table: ElementTable):
    """Every subgroup, as a frozenset of element ids."""
    trivial = frozenset([table.identity_id])
    known = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in range(table.m):
                if x in sub:
                    continue
                closed = frozenset(
                    table.closure(list(sub) + [x]).tolist()
                )
                if closed not in known:
                    known.add(closed)
                    nxt.append(closed)
        frontier = nxt
    return known

def normal_subgroups_brute(table: ElementTable):
    """Every normal subgroup, filtered from the full subgroup oracle."""
    out = []
    maps = table.gen_conj_maps
    for sub in all_subgroups(table):
        ids = np.asarray(sorted(sub), dtype=np.int64)
        if all(np.isin(cm[ids], ids).all() for cm in maps):
            out.append(frozenset(sub))
    return out


def conjugacy_classes_of_subgroups(table: ElementTable, subgroups):
    """Partition a collection of id-frozensets into conjugacy classes."""
    maps = table.gen_conj_maps
    remaining = set(subgroups)
    classes = []
    while remaining:
        seed = remaining.pop()
        orbit = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            arr = np.asarray(sorted(cur), dtype=np.int64)
            for cm in maps:
                img = frozenset(cm[arr].tolist())
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        remaining -= orbit
        classes.append(orbit)
    return classes


def generating_tuple_count(table: ElementTable, d: int) -> int:
    """Number of d-tuples generating the whole group, by raw iteration."""
    count = 0
    idx = [0] * d
    m = table.m
    while True:
        if table.closure(idx, limit=None).size == m:
            count += 1
        j = d - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < m:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            break
    return count
