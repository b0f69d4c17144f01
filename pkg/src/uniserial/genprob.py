"""Generation probabilities: exact enumeration, Moebius inversion, sampling.

The two exact routes are independent of each other: enumeration counts
generating tuples directly (class-weighting the first coordinate, since the
count is invariant under conjugating a tuple), while the Moebius route sums
mu(H,G) |H|^d over the subgroup lattice.  Their agreement is one of the
standing cross-checks of the whole lattice machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, NotUniserial, QuotientNotGenerated
from .lattice import DEFAULT_LATTICE_CAP, ElementTable, lattice_of, table_of
from .maximal import zeta
from .perm import PermGroup
from .structure import _table_feasible, chief_series, quotient

DEFAULT_ENUM_CAP = 100_000_000
AUTO_ENUM_LIMIT = 2_000_000


@dataclass
class GenProbability:
    value: Fraction
    d: int
    method: str

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise AssertionError("probability out of range")


@dataclass
class MonteCarloEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int


def _generates(table: ElementTable, ids) -> bool:
    half = table.m // 2
    closed = table.closure(ids, limit=half)
    return closed is None or closed.size == table.m


def p_exact_enum(group: PermGroup, d: int, cap: int = DEFAULT_ENUM_CAP) -> GenProbability:
    """Exact count of generating d-tuples over |G|^d, by enumeration."""
    order = group.order()
    if d < 1:
        raise ValueError("need at least one coordinate")
    if order**d > cap:
        raise CapExceeded(f"|G|^{d} exceeds the enumeration cap {cap}")
    if not _table_feasible(group):
        raise CapExceeded("group too large to enumerate explicitly")
    table = table_of(group)
    class_of, reps = table.conjugacy_classes()
    class_sizes = np.bincount(class_of, minlength=len(reps))
    count = 0
    if d == 1:
        for ci, rep in enumerate(reps):
            if _generates(table, [rep]):
                count += int(class_sizes[ci])
    else:
        rest = [0] * (d - 1)
        for ci, rep in enumerate(reps):
            weight = int(class_sizes[ci])
            rest = [0] * (d - 1)
            while True:
                if _generates(table, [rep] + rest):
                    count += weight
                j = d - 2
                while j >= 0:
                    rest[j] += 1
                    if rest[j] < table.m:
                        break
                    rest[j] = 0
                    j -= 1
                if j < 0:
                    break
    return GenProbability(Fraction(count, order**d), d, "enumeration")


def p_exact_mobius(group: PermGroup, d: int, cap: int = DEFAULT_LATTICE_CAP) -> GenProbability:
    """Exact probability through Moebius inversion over the subgroup lattice."""
    lat = lattice_of(group, cap=cap)
    mu = lat.moebius()
    total = 0
    for cls, m in zip(lat.classes, mu):
        if m:
            total += cls.class_length * m * cls.order**d
    if total < 0:
        raise AssertionError("negative generating-tuple count")
    order = group.order()
    return GenProbability(Fraction(total, order**d), d, "moebius")


def p_exact_auto(group: PermGroup, d: int) -> GenProbability:
    """Pick the cheaper exact method; results are cached on the handle."""
    cache = getattr(group, "_pgen_cache", None)
    if cache is None:
        cache = group._pgen_cache = {}
    got = cache.get(d)
    if got is None:
        if group.order() ** d <= AUTO_ENUM_LIMIT:
            got = p_exact_enum(group, d)
        else:
            got = p_exact_mobius(group, d)
        cache[d] = got
    return got


def _derive_seed(seed: int, chunk: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + chunk * 0xBF58476D1CE4E5B9 + 1) % (1 << 63)


def p_montecarlo(group: PermGroup, d: int, samples: int, seed: int,
                 chunk_size: int = 4096) -> MonteCarloEstimate:
    """Unbiased sampled estimate; deterministic for a given (seed, samples).

    Sampling is partitioned into fixed-size chunks, each with a seed derived
    from the master by its chunk counter, so a parallel driver splitting on
    chunk boundaries reproduces the sequential stream bit for bit.
    """
    import random

    order = group.order()
    use_table = _table_feasible(group)
    table = table_of(group) if use_table else None
    hits = 0
    done = 0
    chunk = 0
    while done < samples:
        rng = random.Random(_derive_seed(seed, chunk))
        todo = min(chunk_size, samples - done)
        for _ in range(todo):
            tup = [group.random_element(rng) for _ in range(d)]
            if use_table:
                ids = table.lookup_rows(np.stack([t.images for t in tup]))
                ok = _generates(table, ids.tolist())
            else:
                ok = PermGroup(group.degree, tup).order() == order
            hits += int(ok)
        done += todo
        chunk += 1
    mean = hits / samples
    stderr = math.sqrt(mean * (1 - mean) / samples)
    return MonteCarloEstimate(mean=mean, stderr=stderr, samples=samples, seed=seed)


def p_conditional(group: PermGroup, normal: PermGroup, d: int) -> Fraction:
    """P_d(G) / P_d(G/N): the conditional generation probability across N."""
    image, _ = quotient(group, normal)
    p_quot = p_exact_auto(image, d).value
    if p_quot == 0:
        raise QuotientNotGenerated(f"the quotient is not {d}-generated")
    p_full = p_exact_auto(group, d).value
    return p_full / p_quot


def gaschutz_check(group: PermGroup, normal: PermGroup, d: int) -> dict:
    """Exact two-sided check of the lifting bound across a normal subgroup.

    Confirms P_d(G) >= (1 - zeta_{G,N}(d)) P_d(G/N) together with the
    sandwich P_d(G) <= P_d(G/N), all in exact rationals.
    """
    image, _ = quotient(group, normal)
    p_full = p_exact_auto(group, d).value
    p_quot = p_exact_auto(image, d).value
    zres = zeta(group, normal, d)
    bound = (1 - zres.value) * p_quot
    return {
        "p_group": p_full,
        "p_quotient": p_quot,
        "zeta": zres.value,
        "bound": bound,
        "bound_holds": p_full >= bound,
        "sandwich_holds": p_full <= p_quot,
        "frattini_equality": p_full == p_quot,
    }


def tower_product_bound(group: PermGroup, d: int) -> dict:
    """Telescoping product bound along the unique chief series.

    For each member N = G_t of the series (level 0 is the whole group, the
    last level the trivial subgroup), the product of (1 - zeta) terms over
    the non-Frattini levels below t bounds P_d(G)/P_d(G/N) from below;
    Frattini levels contribute a ratio of exactly 1 and are skipped.
    """
    series = chief_series(group)
    if not series.unique:
        raise NotUniserial("the tower bound walks the unique chief series")
    factors = series.factors  # top to bottom; the level-k factor has lower = G_k
    p_full = p_exact_auto(group, d).value
    level_p = []   # P_d(G / G_k) for k = 1..l
    terms = []     # zeta term per level, None on Frattini levels
    for factor in factors:
        quot_k, hom_k = quotient(group, factor.lower)
        level_p.append(p_exact_auto(quot_k, d).value)
        if factor.is_frattini:
            terms.append(None)
            continue
        socle_image = PermGroup(
            quot_k.degree, [hom_k.apply(g) for g in factor.upper.generators]
        )
        terms.append(zeta(quot_k, socle_image, d).value)
    bounds_from = [Fraction(1)] * (len(factors) + 1)
    for k in range(len(factors), 0, -1):
        t = terms[k - 1]
        bounds_from[k - 1] = bounds_from[k] * ((1 - t) if t is not None else 1)
    rows = []
    for t in range(len(factors) + 1):
        n_order = group.order() if t == 0 else factors[t - 1].lower.order()
        p_quot = Fraction(1) if t == 0 else level_p[t - 1]
        if p_quot == 0:
            raise QuotientNotGenerated(f"quotient at level {t} is not {d}-generated")
        ratio = p_full / p_quot
        rows.append(
            {
                "level": t,
                "normal_order": n_order,
                "bound": bounds_from[t],
                "ratio": ratio,
                "holds": ratio >= bounds_from[t],
            }
        )
    return {"rows": rows, "p_group": p_full, "terms": terms}
