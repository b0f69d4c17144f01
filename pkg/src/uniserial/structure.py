"""Normal structure: normal subgroups, chief series, Frattini data, widths.

Two regimes coexist.  Small groups (element table fits) get a full normal
subgroup enumeration as the join-closure of normal closures of conjugacy
class representatives.  Larger groups are handled one chief step at a time:
a minimal normal subgroup is produced with an accompanying certificate (an
irreducible-module or socle-component argument) that it is minimal and, when
claimed, unique; quotients are taken through invariant partitions when those
separate the kernel and coset actions otherwise.  Uniseriality is decided by
the equivalent chain condition: each quotient along the series has a unique
minimal normal subgroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .alpha import SimpleGroupDescriptor, lookup_simple_by_order
from .constructions import FpModule, Subspace, all_submodules, spin
from .errors import (
    CapExceeded,
    IndexCapExceeded,
    NotNormal,
    NotUniserial,
    UnrecognizedSimpleType,
)
from .intervals import integer_nth_root
from .lattice import ElementTable, lattice_of, prime_factors, table_of
from .perm import (
    DEFAULT_MAX_COSET_INDEX,
    DTYPE,
    PermGroup,
    Permutation,
    compose,
    coset_action,
    partition_action,
)

DEFAULT_ORDER_CAP = 10_000_000
# element-table work is bounded by order * degree cells
DEFAULT_TABLE_CELL_CAP = 5_000_000


def _table_feasible(group: PermGroup, cell_cap: int = DEFAULT_TABLE_CELL_CAP) -> bool:
    return group.order() * group.degree <= cell_cap


def brute_elements(group: PermGroup):
    ident = group.identity()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in group.generators:
                c = compose(h, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# normal subgroup enumeration (small groups)
# ---------------------------------------------------------------------------

@dataclass
class NormalSubgroupSet:
    """All normal subgroups of the ambient group, smallest first."""

    ambient: PermGroup
    members: list[PermGroup]

    def orders(self) -> list[int]:
        return [m.order() for m in self.members]

    def is_chain(self) -> bool:
        for small, big in zip(self.members, self.members[1:]):
            if not small.is_subgroup_of(big):
                return False
        return True


def _normal_ids_small(table: ElementTable):
    """Sorted-id sets of every normal subgroup, by join-closure of closures."""
    class_of, reps = table.conjugacy_classes()
    atoms = {}
    for rep in reps:
        if rep == table.identity_id:
            continue
        ids = table.normal_closure_in(table.gen_ids, [rep])
        atoms[ids.tobytes()] = ids
    found = {
        np.asarray([table.identity_id], dtype=np.int64).tobytes(): np.asarray(
            [table.identity_id], dtype=np.int64
        )
    }
    found.update(atoms)
    worklist = list(atoms.values())
    atom_list = list(atoms.values())
    while worklist:
        cur = worklist.pop()
        cur_gens = table.generating_ids(cur)
        for other in atom_list:
            if np.isin(other, cur).all():
                continue
            join = table.closure(cur_gens + table.generating_ids(other))
            key = join.tobytes()
            if key not in found:
                found[key] = join
                worklist.append(join)
    return sorted(found.values(), key=lambda ids: (ids.size, ids.tobytes()))


def normal_subgroups(group: PermGroup, order_cap: int = DEFAULT_ORDER_CAP) -> NormalSubgroupSet:
    """Exactly the normal subgroups (join-closure of class-seed closures)."""
    order = group.order()
    if order > order_cap:
        raise CapExceeded(f"order {order} exceeds the normal-subgroup cap {order_cap}")
    if _table_feasible(group):
        table = table_of(group)
        members = [table.subgroup_from_ids(ids) for ids in _normal_ids_small(table)]
        return NormalSubgroupSet(group, members)
    # large group: exact only along a unique chain
    series = chief_series(group)
    if not series.unique:
        raise CapExceeded(
            "group too large for full normal-subgroup enumeration and not uniserial"
        )
    members = [PermGroup.trivial(group.degree)]
    for factor in reversed(series.factors):
        members.append(factor.upper)
    return NormalSubgroupSet(group, members)


def minimal_normal_subgroups(group: PermGroup) -> list[PermGroup]:
    if group.order() == 1:
        raise ValueError("the trivial group has no minimal normal subgroups")
    if _table_feasible(group):
        table = table_of(group)
        id_sets = [ids for ids in _normal_ids_small(table) if ids.size > 1]
        minimal = [
            ids
            for ids in id_sets
            if not any(
                other.size < ids.size and np.isin(other, ids).all()
                for other in id_sets
            )
        ]
        return [table.subgroup_from_ids(ids) for ids in minimal]
    return _minimal_normals_certified(group).found


# ---------------------------------------------------------------------------
# certified minimal normal subgroups for large groups
# ---------------------------------------------------------------------------

def _probe_elements(group: PermGroup):
    probes = []
    gens = group.generators
    probes.extend(gens)
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            c = compose(compose(a, b).inverse(), compose(b, a))
            if not c.is_identity():
                probes.append(c)
    for g in gens:
        n = g.order()
        for p in prime_factors(n):
            pw = g ** (n // p)
            if not pw.is_identity():
                probes.append(pw)
    return probes


def conjugation_module(group: PermGroup, elem_ab: PermGroup, p: int):
    """The conjugation module of an elementary abelian normal subgroup.

    Returns (module, basis_perms, vec_of: dict perm->vector, elem_of: fn).
    """
    elements = brute_elements(elem_ab)
    size = len(elements)
    vec_of = {elem_ab.identity(): ()}
    basis: list[Permutation] = []
    for g in elem_ab.generators:
        if g in vec_of:
            continue
        # extend every known element by powers of the new basis vector
        current = list(vec_of.items())
        basis.append(g)
        for elem, vec in current:
            acc = elem
            for k in range(1, p):
                acc = compose(acc, g)
                vec_of[acc] = vec + (k,)
        for elem, vec in list(vec_of.items()):
            if len(vec) < len(basis):
                vec_of[elem] = vec + (0,) * (len(basis) - len(vec))
    dim = len(basis)
    if p**dim != size:
        raise AssertionError("subgroup is not elementary abelian of the stated exponent")
    full = {k: np.asarray(v, dtype=np.int64) for k, v in vec_of.items()}
    mats = []
    for x in group.generators:
        rows = []
        for b in basis:
            rows.append(full[b.conjugate(x)])
        mats.append(np.stack(rows) % p)
    module = FpModule(p, dim, mats)

    def elem_of(vec) -> Permutation:
        acc = elem_ab.identity()
        for b, k in zip(basis, np.asarray(vec, dtype=np.int64) % p):
            acc = compose(acc, b ** int(k))
        return acc

    return module, basis, full, elem_of


def _elementary_part(group: PermGroup, normal: PermGroup):
    """An elementary abelian subgroup normal in `group` inside abelian `normal`."""
    orders = [g.order() for g in normal.generators]
    p = min(prime_factors(o)[0] for o in orders if o > 1)
    seeds = []
    for g in normal.generators:
        n = g.order()
        if n % p == 0:
            seeds.append(g ** (n // p))
    elem = group.normal_closure([s for s in seeds if not s.is_identity()])
    return elem, p


@dataclass
class MinimalNormalInfo:
    """Certified minimal normal subgroups of a large group.

    ``found`` lists every minimal normal subgroup (the certificate guarantees
    completeness); identification data rides along so chief-series steps do
    not re-derive it.
    """

    found: list[PermGroup]
    unique: bool
    kind: str                    # 'abelian' | 'nonabelian'
    prime: int = 0               # abelian case
    components: tuple = ()       # nonabelian case, for the canonical member
    module: FpModule | None = None       # abelian case: conjugation module of layer
    layer: PermGroup | None = None       # the regular elementary layer
    elem_of = None                       # vector -> layer element
    subspaces: tuple = ()                # found, as submodules of the layer


def _minimal_normals_abelian_regular(group: PermGroup, elem: PermGroup, p: int):
    """Minimal normal subgroups inside a self-centralizing elementary layer.

    Requires the layer to be regular: then it equals its own centralizer, so
    every minimal normal subgroup of the group lies inside and is a minimal
    submodule of the conjugation module.
    """
    module, _, _, elem_of = conjugation_module(group, elem, p)
    n = module.dim
    spans: dict[bytes, Subspace] = {}
    for support in range(n):
        head = [0] * support + [1]
        for tail in itertools.product(range(p), repeat=n - support - 1):
            sub = spin(module, np.asarray(head + list(tail), dtype=np.int64))
            spans[sub.key()] = sub
    subs = list(spans.values())
    minimal = [
        s for s in subs
        if not any(o.dim < s.dim and s.contains_subspace(o) for o in subs)
    ]
    minimal.sort(key=lambda s: s.key())
    groups = [
        PermGroup(group.degree, [elem_of(row) for row in sub.basis]) for sub in minimal
    ]
    return groups, minimal, module, elem_of


def _socle_components(ambient: PermGroup, normal: PermGroup):
    """Simple components of a nonabelian normal subgroup's socle.

    Returns (components, soc); soc = <T^ambient> for a simple subnormal T
    found by normal-closure descent, certified as an internal direct product.
    """
    current = normal
    while True:
        best = None
        for h in _probe_elements(current):
            ncl = current.normal_closure([h])
            if 1 < ncl.order() < current.order():
                if best is None or ncl.order() < best.order():
                    best = ncl
        if best is None:
            break
        current = best
    t_cand = current
    if not _table_feasible(t_cand):
        raise CapExceeded("socle component too large to certify simple")
    if t_cand.is_abelian():
        raise CapExceeded("descent inside a nonabelian layer reached an abelian piece")
    t_table = ElementTable(t_cand)
    if len(_normal_ids_small(t_table)) != 2:
        raise CapExceeded("could not descend to a simple component")
    components = [t_cand]
    frontier = [t_cand]
    while frontier:
        comp = frontier.pop()
        for g in ambient.generators:
            img = comp.conjugated_by(g)
            if not any(img.equals(c) for c in components):
                components.append(img)
                frontier.append(img)
    gens = []
    for c in components:
        gens.extend(c.generators)
    soc = PermGroup(ambient.degree, gens)
    for i, a in enumerate(components):
        for b in components[i + 1 :]:
            for x in a.generators:
                for y in b.generators:
                    if compose(x, y) != compose(y, x):
                        raise CapExceeded("socle components do not commute")
    expected = 1
    for c in components:
        expected *= c.order()
    if expected != soc.order():
        raise CapExceeded("socle components do not span a direct product")
    return components, soc


def _component_kernel_matches(ambient: PermGroup, components, soc: PermGroup) -> bool:
    """Whether the kernel of the component action equals the socle itself.

    When it does, anything centralizing the socle would lie inside it and hit
    its trivial centre, so the socle is the unique minimal normal subgroup.
    """
    k = len(components)
    img_arrays = []
    for g in ambient.generators:
        arr = np.empty(k, dtype=DTYPE)
        for i, comp in enumerate(components):
            moved = comp.conjugated_by(g)
            target = next((j for j, c in enumerate(components) if c.equals(moved)), None)
            if target is None:
                raise CapExceeded("component set is not closed under conjugation")
            arr[i] = target
        img_arrays.append(arr)
    image = PermGroup(k, [Permutation(a, k) for a in img_arrays])
    return ambient.order() // image.order() == soc.order()


def _minimal_normals_certified(group: PermGroup) -> MinimalNormalInfo:
    """Minimal normal subgroups of a group too large to enumerate.

    Exact in two regimes: an abelian layer that joins up to a regular
    elementary subgroup (then every minimal normal subgroup is a minimal
    submodule of its conjugation module), or a nonabelian candidate whose
    socle is transitively permuted with component kernel equal to the socle.
    Anything else raises CapExceeded rather than guessing.
    """
    closures = []
    for h in _probe_elements(group):
        if any(c.contains(h) for c in closures):
            continue
        ncl = group.normal_closure([h])
        if ncl.order() > 1:
            closures.append(ncl)
    if not closures:
        raise ValueError("the trivial group has no minimal normal subgroups")

    abelian = [c for c in closures if c.is_abelian()]
    if abelian:
        join_gens = []
        for c in abelian:
            join_gens.extend(c.generators)
        join = PermGroup(group.degree, join_gens)
        if join.is_abelian():
            elem, p = _elementary_part(group, join)
            if elem.order() > 1 and elem.is_transitive() and elem.order() == group.degree:
                groups, subspaces, module, elem_of = _minimal_normals_abelian_regular(
                    group, elem, p
                )
                info = MinimalNormalInfo(
                    found=groups,
                    unique=len(groups) == 1,
                    kind="abelian",
                    prime=p,
                    module=module,
                    layer=elem,
                    subspaces=tuple(subspaces),
                )
                info.elem_of = elem_of
                return info

    best = min(closures, key=lambda c: c.order())
    if best.is_abelian():
        raise CapExceeded("abelian layer without a regularity certificate")
    components, soc = _socle_components(group, best)
    while soc.order() < best.order():
        best = soc
        components, soc = _socle_components(group, best)
    if not _component_kernel_matches(group, components, soc):
        raise CapExceeded("component kernel exceeds the socle; uniqueness undecided")
    return MinimalNormalInfo(
        found=[soc], unique=True, kind="nonabelian", components=tuple(components)
    )


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

def quotient(group: PermGroup, normal: PermGroup, max_index: int = DEFAULT_MAX_COSET_INDEX):
    """Faithful permutation representation of the quotient; returns (image, hom)."""
    if not normal.is_normal_in(group):
        raise NotNormal("subgroup is not normal in the group")
    index, rem = divmod(group.order(), normal.order())
    if rem:
        raise NotNormal("order does not divide the group order")
    if index > max_index:
        raise IndexCapExceeded(f"index {index} exceeds cap {max_index}")
    if normal.order() == 1:
        ident_blocks = np.arange(group.degree, dtype=DTYPE)
        return partition_action(group, ident_blocks)
    # fast path: the orbits of the normal subgroup form an invariant partition
    orbits = normal.orbits()
    if 1 < len(orbits) < group.degree:
        block_of = np.empty(group.degree, dtype=DTYPE)
        for i, orb in enumerate(orbits):
            block_of[np.asarray(orb, dtype=np.int64)] = i
        image, hom = partition_action(group, block_of)
        if image.order() == index:
            return image, hom
    return coset_action(group, normal, max_index=max_index)


# ---------------------------------------------------------------------------
# chief series
# ---------------------------------------------------------------------------

@dataclass
class ChiefFactor:
    """A chief factor upper/lower, with identification and a Frattini flag."""

    upper: PermGroup
    lower: PermGroup
    simple_type: SimpleGroupDescriptor | None
    width: int
    is_frattini: bool
    order: int
    type_order: int

    def type_name(self) -> str:
        if self.simple_type is not None:
            return str(self.simple_type)
        return f"?{self.type_order}"

    def describe(self) -> str:
        name = self.type_name()
        out = name if self.width == 1 else f"{name}^{self.width}"
        return f"({out})" if self.is_frattini else out


@dataclass
class ChiefSeries:
    ambient: PermGroup
    factors: list[ChiefFactor]  # top to bottom
    unique: bool

    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]


def _identify_simple_component(component: PermGroup):
    """Name one simple factor by order, breaking the 20160 tie by a census."""
    t_order = component.order()
    candidates = lookup_simple_by_order(t_order)
    if not candidates:
        return None
    if len(candidates) == 1:
        return candidates[0]
    named = {str(c): c for c in candidates}
    if sorted(named) != ["A8", "PSL3(4)"]:
        raise UnrecognizedSimpleType(
            f"unexpected order collision at {t_order}", order=t_order
        )
    element_orders = set(ElementTable(component).orders.tolist())
    return named["A8"] if 15 in element_orders else named["PSL3(4)"]


def identify_factor_group(factor: PermGroup):
    """(descriptor or None, width) for a characteristically simple group."""
    size = factor.order()
    if size == 1:
        raise ValueError("trivial factor")
    if factor.is_abelian():
        primes = prime_factors(size)
        if len(primes) != 1:
            raise AssertionError("abelian chief factor must be a p-group")
        p = primes[0]
        width = 0
        n = size
        while n > 1:
            n //= p
            width += 1
        return SimpleGroupDescriptor.cyclic(p), width
    if not _table_feasible(factor):
        raise CapExceeded("factor too large to identify")
    minimals = minimal_normal_subgroups(factor)
    width = len(minimals)
    t_order = minimals[0].order()
    if any(m.order() != t_order for m in minimals) or t_order**width != size:
        raise AssertionError("factor is not characteristically simple")
    return _identify_simple_component(minimals[0]), width


def identify_chief_factor(upper: PermGroup, lower: PermGroup):
    """(descriptor or None, width) for the factor upper/lower."""
    if lower.order() == 1:
        return identify_factor_group(upper)
    image, _ = quotient(upper, lower)
    return identify_factor_group(image)


def _frattini_flag(quo: PermGroup, minimal: PermGroup, desc, lattice_cap: int,
                   info: MinimalNormalInfo | None = None) -> bool:
    """Whether the minimal normal subgroup sits inside Frat of the quotient."""
    if desc is not None and desc.kind != "cyclic":
        return False  # a Frattini subgroup is nilpotent; nonabelian factors never embed
    if not minimal.is_abelian():
        return False
    # a point stabilizer complementing an abelian minimal normal subgroup
    # certifies a non-Frattini factor without any lattice work
    for orbit in quo.orbits():
        stab = quo.point_stabilizer(orbit[0])
        if stab.order() * minimal.order() != quo.order():
            continue
        if all(
            elem.is_identity() or not stab.contains(elem)
            for elem in brute_elements(minimal)
        ):
            return False
    if info is not None and info.kind == "abelian" and info.module is not None:
        return _frattini_flag_via_layer(quo, minimal, info)
    if quo.order() <= lattice_cap and _table_feasible(quo):
        frat = frattini(quo, cap=lattice_cap)
        return all(frat.contains(g) for g in minimal.generators)
    raise CapExceeded("cannot decide the Frattini flag at this size")


def _frattini_flag_via_layer(quo: PermGroup, minimal: PermGroup,
                             info: MinimalNormalInfo) -> bool:
    """Decide the flag through the regular elementary layer.

    A maximal subgroup M avoiding the factor N intersects the layer E in a
    submodule complementing N (M∩E is normal in ME = G and meets N trivially,
    with order forced to |E|/|N|).  Hence: no submodule complement of N in E
    means N lies in every maximal subgroup.  Conversely a submodule complement
    U plus the point stabilizer H assemble a candidate group complement UH,
    verified by order and trivial intersection.
    """
    module = info.module
    sub_n = next(
        (s for s, grp in zip(info.subspaces, info.found) if grp.equals(minimal)), None
    )
    if sub_n is None:
        raise CapExceeded("factor does not align with the computed layer")
    complements = [
        u
        for u in all_submodules(module)
        if u.dim + sub_n.dim == module.dim and u.intersection(sub_n).dim == 0
    ]
    if not complements:
        return True
    stab = quo.point_stabilizer(0)
    if stab.order() * info.layer.order() == quo.order():
        for u in complements:
            gens = [info.elem_of(row) for row in u.basis] + list(stab.generators)
            cand = PermGroup(quo.degree, gens)
            if cand.order() * minimal.order() != quo.order():
                continue
            if all(
                e.is_identity() or not cand.contains(e)
                for e in brute_elements(minimal)
            ):
                return False
    raise CapExceeded("cannot decide the Frattini flag at this size")


def _canonical_minimal(table: ElementTable, id_sets):
    """Deterministic choice among minimal normal subgroups of a small group."""
    return min(id_sets, key=lambda ids: (ids.size, ids.tobytes()))


def chief_series(group: PermGroup, lattice_cap: int = 20_000,
                 max_index: int = DEFAULT_MAX_COSET_INDEX) -> ChiefSeries:
    """A chief series, bottom-up; the unique one when the group is uniserial.

    For non-uniserial groups the minimal normal subgroup picked at each step
    is the canonical least one, making the output deterministic.  The result
    is cached on the group handle.
    """
    cached = getattr(group, "_chief_series", None)
    if cached is not None:
        return cached
    factors_bottom_up: list[ChiefFactor] = []
    maps = []
    kernel_gens: list[Permutation] = []
    unique = True
    quo = group
    while quo.order() > 1:
        info = None
        if _table_feasible(quo):
            table = ElementTable(quo)
            id_sets = [ids for ids in _normal_ids_small(table) if ids.size > 1]
            minimal_sets = [
                ids
                for ids in id_sets
                if not any(o.size < ids.size and np.isin(o, ids).all() for o in id_sets)
            ]
            if len(minimal_sets) > 1:
                unique = False
            chosen = table.subgroup_from_ids(_canonical_minimal(table, minimal_sets))
            desc, width = identify_factor_group(chosen)
        else:
            info = _minimal_normals_certified(quo)
            if not info.unique:
                unique = False
            chosen = info.found[0]
            if info.kind == "abelian":
                desc = SimpleGroupDescriptor.cyclic(info.prime)
                width = 0
                n = chosen.order()
                while n > 1:
                    n //= info.prime
                    width += 1
            else:
                width = len(info.components)
                desc = _identify_simple_component(info.components[0])
        flag = _frattini_flag(quo, chosen, desc, lattice_cap, info)
        lower = PermGroup(group.degree, list(kernel_gens))
        pulled = []
        for m in chosen.generators:
            x = m
            for hom in reversed(maps):
                x = hom.preimage(x)
            pulled.append(x)
        upper_gens = list(kernel_gens) + pulled
        upper = PermGroup(group.degree, upper_gens)
        t_order = desc.order() if desc is not None else integer_nth_root(
            chosen.order(), width
        )
        factors_bottom_up.append(
            ChiefFactor(
                upper=upper,
                lower=lower,
                simple_type=desc,
                width=width,
                is_frattini=flag,
                order=chosen.order(),
                type_order=t_order,
            )
        )
        kernel_gens = upper_gens
        quo, hom = quotient(quo, chosen, max_index=max_index)
        maps.append(hom)
    series = ChiefSeries(group, list(reversed(factors_bottom_up)), unique)
    group._chief_series = series
    return series


def is_uniserial(group: PermGroup) -> bool:
    """Whether the normal subgroups form a chain (unique chief series)."""
    if group.order() == 1:
        return True
    return chief_series(group).unique


def frattini(group: PermGroup, cap: int = 20_000) -> PermGroup:
    """Intersection of all maximal subgroups."""
    lat = lattice_of(group, cap=cap)
    mask = np.ones(lat.table.m, dtype=bool)
    for idx, cls in enumerate(lat.classes):
        if not cls.is_maximal:
            continue
        for conj in lat.conjugates_of(idx):
            inside = np.zeros(lat.table.m, dtype=bool)
            inside[conj] = True
            mask &= inside
    ids = np.nonzero(mask)[0]
    return lat.table.subgroup_from_ids(ids)


def width_sequence(group: PermGroup):
    """Per-factor (descriptor, width, frattini) of the unique chief series.

    Raises NotUniserial when the series is not unique.  The companion
    ``non_frattini_widths`` reads off the subsequence driving the growth
    analysis.
    """
    series = chief_series(group)
    if not series.unique:
        raise NotUniserial("group has more than one chief series")
    return [(f.simple_type, f.width, f.is_frattini) for f in series.factors]


def non_frattini_widths(group: PermGroup) -> list[int]:
    return [w for _, w, flag in width_sequence(group) if not flag]


def socle_width_report(group: PermGroup) -> dict:
    """Compare the socle width against the deepest clean layer above it.

    Applies to uniserial groups with trivial Frattini subgroup and at least
    two chief factors: writing S^m for the factor at the largest index whose
    quotient has trivial Frattini subgroup, and T^n for the socle, the width
    n is bounded below in terms of m through four shape cases.  The case
    with nonabelian S over abelian T needs the minimal faithful projective
    degree of S; outside the shipped table that entry is reported as skipped.
    """
    from .alpha import min_faithful_projective_degree
    from .errors import OutsideTable

    series = chief_series(group)
    if not series.unique:
        raise NotUniserial("the width comparison concerns unique chief series")
    factors = series.factors
    if len(factors) < 2:
        return {"applicable": False, "reason": "chief series has a single factor"}
    # the bottom factor is non-Frattini exactly when Frat(G) = 1
    if factors[-1].is_frattini:
        return {"applicable": False, "reason": "Frattini subgroup is nontrivial"}
    upper_idx = None
    for idx in range(len(factors) - 2, -1, -1):
        if not factors[idx].is_frattini:
            upper_idx = idx
            break
    if upper_idx is None:
        return {"applicable": False, "reason": "no clean layer above the socle"}
    upper = factors[upper_idx]
    socle = factors[-1]
    s_desc, m = upper.simple_type, upper.width
    t_desc, n = socle.simple_type, socle.width
    if s_desc is None or t_desc is None:
        return {"applicable": False, "reason": "unidentified factor type"}
    s_ab = s_desc.kind == "cyclic"
    t_ab = t_desc.kind == "cyclic"
    report = {
        "applicable": True,
        "upper": f"{s_desc}^{m}",
        "socle": f"{t_desc}^{n}",
        "m": m,
        "n": n,
    }
    if not s_ab and not t_ab:
        p = max(prime_factors(s_desc.order()))
        report["case"] = "nonabelian-over-nonabelian"
        report["bound"] = p * m
        report["holds"] = n >= p * m
    elif s_ab and not t_ab:
        triality = (
            t_desc.kind == "lie"
            and t_desc.family == "POmega+"
            and t_desc.n == 8
            and t_desc.q % 2 == 1
        )
        delta = Fraction(1, 2) if (s_desc.q == 2 and triality) else Fraction(1)
        report["case"] = "abelian-over-nonabelian"
        report["bound"] = delta * m
        report["holds"] = n >= delta * m
    elif not s_ab and t_ab:
        report["case"] = "nonabelian-over-abelian"
        try:
            t_param = min_faithful_projective_degree(s_desc)
        except OutsideTable:
            report["skipped"] = "projective degree outside the shipped table"
            return report
        report["bound"] = t_param * m
        report["holds"] = n >= t_param * m
    else:
        report["case"] = "abelian-over-abelian"
        report["bound"] = m if n < 5 else m + 1
        report["holds"] = n >= m and (n < 5 or n >= m + 1)
    return report


# ---------------------------------------------------------------------------
# classical normal-structure facts, exposed as testable predicates
# ---------------------------------------------------------------------------

def has_complement(group: PermGroup, normal: PermGroup, cap: int = 20_000) -> bool:
    """Brute complement search through the subgroup lattice (small groups)."""
    lat = lattice_of(group, cap=cap)
    target = group.order() // normal.order()
    norm_ids = lat.table.lookup_rows(
        np.stack([e.images for e in brute_elements(normal)])
    )
    norm_ids = np.sort(norm_ids)
    ident = lat.table.identity_id
    for idx, cls in enumerate(lat.classes):
        if cls.order != target:
            continue
        for conj in lat.conjugates_of(idx):
            common = np.intersect1d(conj, norm_ids)
            if common.size == 1 and common[0] == ident:
                return True
    return False


def centralizer_in_quotient_trivial(group: PermGroup, normal: PermGroup) -> bool:
    """Whether the conjugation action of G/N on abelian minimal normal N is faithful."""
    image, hom = quotient(group, normal)
    norm_elems = [e for e in brute_elements(normal) if not e.is_identity()]
    for img_elem in brute_elements(image):
        if img_elem.is_identity():
            continue
        g = hom.preimage(img_elem)
        if all(compose(g.inverse(), compose(n, g)) == n for n in norm_elems):
            return False
    return True
