"""Element tables and subgroup lattices of small groups, up to conjugacy.

The lattice is produced by cyclic extension: starting from the trivial
subgroup and one representative per conjugacy class of perfect subgroups,
every class is extended by prime-order elements of the normalizer of its
representative.  A subgroup reachable this way from seed P is exactly one
whose last derived term is conjugate to P, so together the seeds cover the
whole lattice.  Perfect seeds are located by a two-generator search inside
the last term of the derived series; every perfect group small enough to fit
under the default order cap is two-generated, which keeps the search exact
at this scale.

Everything works on integer element ids over a fully enumerated element
table, with numpy-vectorized products, so the heavy loops stay out of Python.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded
from .perm import DTYPE, PermGroup, Permutation

DEFAULT_LATTICE_CAP = 20_000
DEFAULT_TABLE_CAP = 200_000


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class ElementTable:
    """Every element of a small permutation group, indexed 0..|G|-1."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_TABLE_CAP):
        order = group.order()
        if order > cap:
            raise CapExceeded(f"order {order} exceeds element-table cap {cap}")
        self.group = group
        self.m = order
        self.degree = group.degree
        base = group.chain.base()
        self._base = np.asarray(base if base else [0], dtype=np.int64)
        dims = 1
        for _ in range(self._base.shape[0]):
            dims *= max(self.degree, 1)
        if dims >= (1 << 62):
            raise CapExceeded("base-image keys would overflow 63 bits")
        self._enumerate()
        self._finalize_lookup()
        self.identity_id = int(self.lookup_rows(
            np.arange(self.degree, dtype=DTYPE)[None, :])[0])
        self.gen_ids = (
            self.lookup_rows(np.stack([g.images for g in group.generators]))
            if group.generators else np.zeros(0, dtype=np.int64)
        )
        inv_rows = np.argsort(self.perms, axis=1).astype(DTYPE)
        self.inv = self.lookup_rows(inv_rows)
        self._conj_maps = None
        self._orders = None
        self._classes = None

    # -- construction ----------------------------------------------------------

    def _raw_keys(self, rows):
        cols = rows[:, self._base].astype(np.int64)
        mult = np.int64(max(self.degree, 1))
        keys = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(cols.shape[1]):
            keys = keys * mult + cols[:, j]
        return keys

    def _enumerate(self):
        ident = np.arange(self.degree, dtype=DTYPE)
        seen = {int(self._raw_keys(ident[None, :])[0])}
        gens = [g.images for g in self.group.generators]
        store = [ident]
        frontier = [0]
        while frontier:
            block = self.perms_partial(store, frontier)
            fresh = []
            for g in gens:
                prod = g[block]  # compose(row, g) per row
                keys = self._raw_keys(prod)
                for r in range(prod.shape[0]):
                    key = int(keys[r])
                    if key not in seen:
                        seen.add(key)
                        store.append(prod[r])
                        fresh.append(len(store) - 1)
            frontier = fresh
        if len(store) != self.m:
            raise AssertionError("element enumeration disagrees with chain order")
        self.perms = np.stack(store).astype(DTYPE)

    @staticmethod
    def perms_partial(store, idxs):
        return np.stack([store[i] for i in idxs])

    def _finalize_lookup(self):
        keys = self._raw_keys(self.perms)
        self._sorter = np.argsort(keys)
        self._sorted_keys = keys[self._sorter]

    def lookup_rows(self, rows) -> np.ndarray:
        """Ids of image-array rows, all of which must lie in the group."""
        keys = self._raw_keys(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        ids = self._sorter[pos]
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise AssertionError("row outside the element table")
        return ids

    # -- id arithmetic ------------------------------------------------------------

    def mult(self, a: int, b: int) -> int:
        row = self.perms[b][self.perms[a]]
        return int(self.lookup_rows(row[None, :])[0])

    def mult_many(self, a_ids, b_ids) -> np.ndarray:
        """Componentwise products a_i * b_i."""
        rows = np.take_along_axis(self.perms[b_ids], self.perms[a_ids], axis=1)
        return self.lookup_rows(rows)

    def rmul(self, ids, g: int) -> np.ndarray:
        """Products x * g for all x in ids."""
        return self.lookup_rows(self.perms[g][self.perms[ids]])

    def conj_subset(self, ids, g: int) -> np.ndarray:
        """Conjugates g^-1 x g for x in ids."""
        ginv_row = self.perms[int(self.inv[g])]
        rows = self.perms[g][self.perms[ids][:, ginv_row]]
        return self.lookup_rows(rows)

    def conj_map(self, g: int) -> np.ndarray:
        """The full map x -> g^-1 x g as an id array."""
        return self.conj_subset(np.arange(self.m, dtype=np.int64), g)

    @property
    def gen_conj_maps(self):
        if self._conj_maps is None:
            self._conj_maps = [self.conj_map(int(g)) for g in self.gen_ids]
        return self._conj_maps

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            out = np.empty(self.m, dtype=np.int64)
            for i in range(self.m):
                row = self.perms[i]
                seen = np.zeros(self.degree, dtype=bool)
                n = 1
                for start in range(self.degree):
                    if seen[start]:
                        continue
                    length = 1
                    seen[start] = True
                    nxt = int(row[start])
                    while nxt != start:
                        seen[nxt] = True
                        nxt = int(row[nxt])
                        length += 1
                    n = n * length // np.gcd(n, length)
                out[i] = n
            self._orders = out
        return self._orders

    def power_map(self, k: int) -> np.ndarray:
        """The map x -> x^k over all ids."""
        ids = np.arange(self.m, dtype=np.int64)
        result = np.full(self.m, self.identity_id, dtype=np.int64)
        base = ids
        n = k
        while n:
            if n & 1:
                result = self.mult_many(result, base)
            n >>= 1
            if n:
                base = self.mult_many(base, base)
        return result

    def conjugacy_classes(self):
        """(class index per id, list of class representative ids)."""
        if self._classes is None:
            class_of = np.full(self.m, -1, dtype=np.int64)
            reps = []
            maps = self.gen_conj_maps
            for start in range(self.m):
                if class_of[start] >= 0:
                    continue
                idx = len(reps)
                reps.append(start)
                frontier = np.asarray([start], dtype=np.int64)
                class_of[start] = idx
                while frontier.size:
                    batches = []
                    for cm in maps:
                        imgs = cm[frontier]
                        fresh = np.unique(imgs[class_of[imgs] < 0])
                        fresh = fresh[class_of[fresh] < 0]
                        if fresh.size:
                            class_of[fresh] = idx
                            batches.append(fresh)
                    frontier = (
                        np.concatenate(batches) if batches else np.zeros(0, dtype=np.int64)
                    )
            self._classes = (class_of, reps)
        return self._classes

    # -- subgroups as id sets --------------------------------------------------------

    def closure(self, gen_ids, limit=None, start_ids=None) -> np.ndarray | None:
        """Sorted ids of the subgroup generated; None once it passes `limit`.

        ``start_ids`` may hold an already-closed subgroup to extend, in which
        case the generators must include a generating set of it.
        """
        known = np.zeros(self.m, dtype=bool)
        known[self.identity_id] = True
        gen_list = sorted({int(g) for g in gen_ids} - {self.identity_id})
        if not gen_list:
            return np.asarray([self.identity_id], dtype=np.int64)
        if start_ids is not None:
            # start must be closed under the generators it contributed; products
            # of the whole start block by each genuinely new generator seed the
            # frontier so no start element needs expanding later
            known[start_ids] = True
            new_gens = [g for g in gen_list if not known[g]]
            if not new_gens:
                return np.asarray(start_ids, dtype=np.int64)
            parts = [self.rmul(np.asarray(start_ids, dtype=np.int64), g) for g in new_gens]
            frontier = np.unique(np.concatenate(parts))
            frontier = frontier[~known[frontier]]
            known[frontier] = True
            count = int(known.sum())
        else:
            frontier = np.asarray(gen_list, dtype=np.int64)
            known[frontier] = True
            count = 1 + frontier.size
        while frontier.size:
            batches = []
            for g in gen_list:
                prods = self.rmul(frontier, g)
                fresh = np.unique(prods[~known[prods]])
                fresh = fresh[~known[fresh]]
                if fresh.size:
                    known[fresh] = True
                    count += fresh.size
                    batches.append(fresh)
            if limit is not None and count > limit:
                return None
            frontier = np.concatenate(batches) if batches else np.zeros(0, dtype=np.int64)
        return np.nonzero(known)[0]

    def normal_closure_in(self, sub_gen_ids, seed_ids) -> np.ndarray:
        """Normal closure of the seeds inside the subgroup with the given generators."""
        sub_gens = [int(g) for g in sub_gen_ids]
        gens = sorted({int(s) for s in seed_ids} - {self.identity_id})
        ids = self.closure(gens)
        while True:
            extras = []
            for g in sub_gens:
                conj = self.conj_subset(ids, g)
                new = np.unique(conj[~np.isin(conj, ids)])
                if new.size:
                    extras.append(new)
            if not extras:
                return ids
            extra = np.unique(np.concatenate(extras))
            # a few fresh conjugates per round suffice as added generators
            gens = self.generating_ids(ids) + extra[:8].tolist()
            ids = self.closure(gens, start_ids=ids)

    def subgroup_orbit(self, ids_sorted):
        """Conjugation orbit of a subgroup given by sorted ids.

        Returns (orbit_keys, orbit_sets, normalizer_ids).
        """
        start_key = ids_sorted.tobytes()
        orbit_keys = {start_key: 0}
        orbit_sets = [ids_sorted]
        transversal = [self.identity_id]
        maps = self.gen_conj_maps
        schreier = []
        k = 0
        while k < len(orbit_sets):
            cur = orbit_sets[k]
            t_cur = transversal[k]
            k += 1
            for gi, cm in enumerate(maps):
                img = np.sort(cm[cur])
                key = img.tobytes()
                g_id = int(self.gen_ids[gi])
                if key not in orbit_keys:
                    orbit_keys[key] = len(orbit_sets)
                    orbit_sets.append(img)
                    transversal.append(self.mult(t_cur, g_id))
                else:
                    t_img = transversal[orbit_keys[key]]
                    s = self.mult(self.mult(t_cur, g_id), int(self.inv[t_img]))
                    schreier.append(s)
        norm_order = self.m // len(orbit_sets)
        norm_ids = self._stabilizer_from_schreier(schreier, norm_order)
        return orbit_keys, orbit_sets, norm_ids

    def _stabilizer_from_schreier(self, schreier, target_order):
        gens: list[int] = []
        ids = np.asarray([self.identity_id], dtype=np.int64)
        inside = {self.identity_id}
        for s in schreier:
            if ids.size == target_order:
                break
            if s not in inside:
                gens.append(s)
                ids = self.closure(gens)
                inside = set(ids.tolist())
        if ids.size != target_order:
            raise AssertionError("stabilizer reconstruction fell short")
        return ids

    def centralizer_ids(self, a: int) -> np.ndarray:
        """Ids of the centralizer of the element a, via orbit-stabilizer."""
        orbit = {a: self.identity_id}
        queue = [a]
        schreier = []
        maps = self.gen_conj_maps
        while queue:
            x = queue.pop()
            t_x = orbit[x]
            for gi, cm in enumerate(maps):
                y = int(cm[x])
                g_id = int(self.gen_ids[gi])
                if y not in orbit:
                    orbit[y] = self.mult(t_x, g_id)
                    queue.append(y)
                else:
                    schreier.append(self.mult(self.mult(t_x, g_id), int(self.inv[orbit[y]])))
        return self._stabilizer_from_schreier(schreier, self.m // len(orbit))

    def generating_ids(self, ids) -> list[int]:
        """A small generating subset for the subgroup with the given sorted ids."""
        ids = np.asarray(ids, dtype=np.int64)
        target = int(ids.size)
        gens: list[int] = []
        inside = {self.identity_id}
        for i in ids.tolist():
            if i in inside:
                continue
            gens.append(i)
            have = self.closure(gens)
            inside = set(have.tolist())
            if have.size == target:
                break
        return gens

    def subgroup_from_ids(self, ids) -> PermGroup:
        gens = self.generating_ids(ids)
        perms = [Permutation._wrap(self.perms[g].copy()) for g in gens]
        return PermGroup(self.degree, perms)

    def element(self, i: int) -> Permutation:
        return Permutation._wrap(self.perms[int(i)].copy())


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups: representative plus bookkeeping."""

    representative: PermGroup
    class_length: int
    index: int
    order: int
    rep_ids: np.ndarray = field(repr=False)
    is_maximal: bool = False

    def contains_ids(self, other_ids) -> bool:
        return bool(np.isin(other_ids, self.rep_ids).all())


class SubgroupLattice:
    """All subgroups of a small group up to conjugacy."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_LATTICE_CAP):
        order = group.order()
        if order > cap:
            raise CapExceeded(f"order {order} exceeds lattice cap {cap}")
        self.group = group
        cached_table = getattr(group, "_table", None)
        self.table = cached_table if cached_table is not None else ElementTable(group)
        self.classes: list[SubgroupClass] = []
        self._orbit_sets: list[list[np.ndarray]] = []
        self._class_by_key: dict[bytes, int] = {}
        self._norm_ids: dict[int, np.ndarray] = {}
        self._build()
        self._mark_maximal()
        self._mu = None

    # -- construction ------------------------------------------------------------

    def _register(self, ids_sorted) -> int | None:
        key = ids_sorted.tobytes()
        if key in self._class_by_key:
            return None
        orbit_keys, orbit_sets, norm_ids = self.table.subgroup_orbit(ids_sorted)
        idx = len(self.classes)
        for k in orbit_keys:
            self._class_by_key[k] = idx
        rep = self.table.subgroup_from_ids(ids_sorted)
        self.classes.append(
            SubgroupClass(
                representative=rep,
                class_length=len(orbit_sets),
                index=self.table.m // int(ids_sorted.size),
                order=int(ids_sorted.size),
                rep_ids=ids_sorted,
            )
        )
        self._orbit_sets.append(orbit_sets)
        self._norm_ids[idx] = norm_ids
        return idx

    def _is_perfect_ids(self, gen_pair, ids) -> bool:
        """Whether <a, b> equals its derived subgroup, in id space."""
        table = self.table
        a, b = gen_pair
        comm = table.mult(
            table.mult(int(table.inv[table.mult(a, b)]), b), a
        )  # (ab)^-1 * b * a = b^-1 a^-1 b a
        derived = table.normal_closure_in([a, b], [comm])
        return derived.size == ids.size

    def _perfect_seeds(self):
        """Sorted-id sets, one per conjugacy class of perfect subgroups."""
        table = self.table
        residual = self.group.perfect_residual()
        if residual.is_trivial():
            return []
        res_ids = table.closure(table.lookup_rows(
            np.stack([g.images for g in residual.generators])))
        res_order = int(res_ids.size)
        res_mask = np.zeros(table.m, dtype=bool)
        res_mask[res_ids] = True
        _, reps = table.conjugacy_classes()
        seeds = {res_ids.tobytes(): res_ids}
        half = res_order // 2
        for a in reps:
            if not res_mask[a] or a == table.identity_id:
                continue
            cent = table.centralizer_ids(a)
            for b in self._orbit_reps_under(cent, res_ids):
                if b == table.identity_id:
                    continue
                ids = table.closure([a, b], limit=half)
                if ids is None or ids.size >= res_order:
                    continue
                # perfect groups have order divisible by 4 and at least 60
                if ids.size < 60 or ids.size % 4 or res_order % ids.size:
                    continue
                key = ids.tobytes()
                if key not in seeds and self._is_perfect_ids((a, int(b)), ids):
                    seeds[key] = ids
        out = list(seeds.values())
        out.sort(key=lambda ids: (ids.size, ids.tobytes()))
        return out

    def _orbit_reps_under(self, sub_ids, domain_ids):
        """Conjugation-orbit representatives of <sub_ids> acting on domain_ids."""
        table = self.table
        gens = table.generating_ids(sub_ids)
        maps = [table.conj_map(g) for g in gens]
        seen = np.zeros(table.m, dtype=bool)
        reps = []
        for x in domain_ids.tolist():
            if seen[x]:
                continue
            reps.append(x)
            frontier = np.asarray([x], dtype=np.int64)
            seen[x] = True
            while frontier.size:
                batches = []
                for cm in maps:
                    imgs = cm[frontier]
                    fresh = np.unique(imgs[~seen[imgs]])
                    fresh = fresh[~seen[fresh]]
                    if fresh.size:
                        seen[fresh] = True
                        batches.append(fresh)
                frontier = np.concatenate(batches) if batches else np.zeros(0, dtype=np.int64)
        return reps

    def _build(self):
        table = self.table
        trivial = np.asarray([table.identity_id], dtype=np.int64)
        worklist = [self._register(trivial)]
        for ids in self._perfect_seeds():
            idx = self._register(ids)
            if idx is not None:
                worklist.append(idx)
        primes = prime_factors(table.m)
        pow_maps = {p: table.power_map(p) for p in primes}
        k = 0
        while k < len(worklist):
            ci = worklist[k]
            k += 1
            cls = self.classes[ci]
            if cls.order == table.m:
                continue
            h_ids = cls.rep_ids
            h_mask = np.zeros(table.m, dtype=bool)
            h_mask[h_ids] = True
            norm = self._norm_ids[ci]
            for p in primes:
                if table.m % (cls.order * p):
                    continue
                pm = pow_maps[p]
                cand = norm[h_mask[pm[norm]] & ~h_mask[norm]]
                done = np.zeros(table.m, dtype=bool)
                for x in cand.tolist():
                    if done[x]:
                        continue
                    # x normalizes H and x^p lies in H, so K = H<x> has order p|H|
                    block = h_ids
                    parts = [h_ids]
                    for _ in range(p - 1):
                        block = table.rmul(block, x)
                        parts.append(block)
                    tail = np.concatenate(parts[1:])
                    done[tail] = True
                    k_ids = np.sort(np.concatenate(parts))
                    new_idx = self._register(k_ids)
                    if new_idx is not None:
                        worklist.append(new_idx)

    def _mark_maximal(self):
        whole = self.table.m
        for i, cls in enumerate(self.classes):
            if cls.order == whole:
                cls.is_maximal = False
                continue
            cls.is_maximal = not any(
                other.order < whole
                and other.order > cls.order
                and other.order % cls.order == 0
                and self.contained_count(i, j) > 0
                for j, other in enumerate(self.classes)
            )

    # -- containment and Moebius ------------------------------------------------------

    def contained_count(self, i: int, j: int) -> int:
        """Number of class-i conjugates inside the class-j representative."""
        small = self.classes[i]
        big = self.classes[j]
        if big.order % small.order:
            return 0
        if small.order == big.order:
            return 1 if i == j else 0
        big_mask = np.zeros(self.table.m, dtype=bool)
        big_mask[big.rep_ids] = True
        return sum(1 for conj in self._orbit_sets[i] if big_mask[conj].all())

    def over_count(self, i: int, j: int) -> int:
        """Number of class-j conjugates containing the class-i representative."""
        cnt = self.contained_count(i, j)
        if not cnt:
            return 0
        num = cnt * self.classes[j].class_length
        assert num % self.classes[i].class_length == 0
        return num // self.classes[i].class_length

    def moebius(self) -> list[int]:
        """Moebius numbers mu(H, G), one per class, computed top-down."""
        if self._mu is None:
            n = len(self.classes)
            whole = self.table.m
            mu = [0] * n
            top = next(i for i, c in enumerate(self.classes) if c.order == whole)
            mu[top] = 1
            by_desc = sorted(range(n), key=lambda i: -self.classes[i].order)
            for i in by_desc:
                if i == top:
                    continue
                total = 0
                for j in by_desc:
                    if self.classes[j].order <= self.classes[i].order:
                        continue
                    if mu[j]:
                        total += self.over_count(i, j) * mu[j]
                mu[i] = -total
            self._mu = mu
        return self._mu

    # -- public views ----------------------------------------------------------------

    def subgroup_classes(self) -> list[SubgroupClass]:
        return list(self.classes)

    def maximal_classes(self) -> list[SubgroupClass]:
        out = [c for c in self.classes if c.is_maximal]
        out.sort(key=lambda c: (c.index, -c.class_length))
        return out

    def total_subgroups(self) -> int:
        return sum(c.class_length for c in self.classes)

    def conjugates_of(self, i: int) -> list[np.ndarray]:
        return self._orbit_sets[i]

    def class_index_of(self, ids_sorted) -> int | None:
        return self._class_by_key.get(np.asarray(ids_sorted, dtype=np.int64).tobytes())


def lattice_of(group: PermGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Lattice for the group, cached on the group handle."""
    got = getattr(group, "_lattice", None)
    if got is None:
        got = SubgroupLattice(group, cap=cap)
        group._lattice = got
    return got


def table_of(group: PermGroup, cap: int = DEFAULT_TABLE_CAP) -> ElementTable:
    """Element table for the group, cached on the group handle."""
    got = getattr(group, "_table", None)
    if got is None:
        lat = getattr(group, "_lattice", None)
        got = lat.table if lat is not None else ElementTable(group, cap=cap)
        group._table = got
    return got
