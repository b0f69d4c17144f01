"""Finite permutation group engine.

Permutations act on the points 0..degree-1 and are stored as dense image
arrays.  ``compose(p, q)`` applies p first, then q, so point images obey
x^(p*q) = (x^p)^q.  Groups carry a lazily built stabilizer chain (base and
strong generating set) providing orders, membership tests, exactly uniform
random elements and coset enumeration.  The chain is built deterministically
and certified by a full Schreier-generator sweep, so every order reported
downstream is exact rather than Monte-Carlo-probable.
"""

from __future__ import annotations

import json
import math
import re
import threading

import numpy as np

from .errors import (
    CapExceeded,
    DegreeMismatch,
    ElementNotInGroup,
    IndexCapExceeded,
    NotSubgroup,
)

DTYPE = np.int32

DEFAULT_MAX_DEGREE = 100_000
DEFAULT_MAX_COSET_INDEX = 100_000


def _as_images(seq, degree=None):
    arr = np.array(seq, dtype=DTYPE)
    if arr.ndim != 1:
        raise ValueError("permutation images must be one-dimensional")
    n = arr.shape[0] if degree is None else degree
    if arr.shape[0] != n:
        raise DegreeMismatch(f"expected degree {n}, got {arr.shape[0]}")
    if n and (arr.min(initial=0) < 0 or arr.max(initial=-1) >= n
              or np.bincount(arr, minlength=n).max(initial=0) != 1):
        raise ValueError("images are not a bijection on 0..degree-1")
    arr.setflags(write=False)
    return arr


def _inv_images(images):
    inv = np.empty_like(images)
    inv[images] = np.arange(images.shape[0], dtype=DTYPE)
    return inv


class Permutation:
    """An element of the symmetric group on 0..degree-1."""

    __slots__ = ("images", "_hash")

    def __init__(self, images, degree=None, _trusted=False):
        if _trusted:
            self.images = images
        else:
            self.images = _as_images(images, degree)
        self._hash = None

    @classmethod
    def _wrap(cls, arr):
        arr.setflags(write=False)
        return cls(arr, _trusted=True)

    @classmethod
    def identity(cls, degree):
        return cls._wrap(np.arange(degree, dtype=DTYPE))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from a list of cycles, each a sequence of distinct points."""
        arr = np.arange(degree, dtype=DTYPE)
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if pt in seen:
                    raise ValueError(f"point {pt} repeated across cycles")
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} out of range for degree {degree}")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:]):
                arr[a] = b
            if cyc:
                arr[cyc[-1]] = cyc[0]
        return cls._wrap(arr)

    @classmethod
    def parse(cls, text, degree):
        """Parse a parenthesized cycle string like ``(0,1,2)(3,4)``."""
        text = text.strip()
        if text in ("", "()"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\s*\d+(\s*[, ]\s*\d+)*\s*\)\s*)+", text):
            raise ValueError(f"cannot parse cycle string {text!r}")
        cycles = []
        for grp in re.findall(r"\(([^()]*)\)", text):
            cycles.append([int(tok) for tok in re.split(r"[,\s]+", grp.strip()) if tok])
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self):
        return self.images.shape[0]

    def __call__(self, point):
        return int(self.images[point])

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, n):
        if n == 0:
            return Permutation.identity(self.degree)
        if n < 0:
            return self.inverse() ** (-n)
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def inverse(self):
        return Permutation._wrap(_inv_images(self.images))

    def conjugate(self, g):
        """Return g^-1 * self * g."""
        return compose(compose(g.inverse(), self), g)

    def is_identity(self):
        return bool(np.array_equal(self.images, np.arange(self.degree, dtype=DTYPE)))

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = math.lcm(n, len(cyc))
        return n

    def cycles(self, include_fixed=False):
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = int(self.images[start])
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = int(self.images[nxt])
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.images, other.images)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation mapping x to q(p(x))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    return Permutation._wrap(q.images[p.images])


class _Level:
    """One stabilizer-chain level: a base point with its orbit tree.

    Orbits are computed with respect to every strong generator at this level
    or deeper, since those are exactly the generators of this level's group.
    """

    __slots__ = ("beta", "own_gens", "parent", "via", "orbit", "_reps", "_tree_gens")

    def __init__(self, beta, degree):
        self.beta = beta
        self.own_gens = []
        self.parent = np.full(degree, -1, dtype=DTYPE)
        self.via = np.full(degree, -1, dtype=DTYPE)
        self.orbit = [beta]
        self._reps = {}
        self._tree_gens = []

    def recompute_orbit(self, gens):
        self._tree_gens = gens
        self.parent.fill(-1)
        self.via.fill(-1)
        self.parent[self.beta] = self.beta
        self.orbit = [self.beta]
        self._reps = {}
        i = 0
        while i < len(self.orbit):
            pt = self.orbit[i]
            i += 1
            for k, g in enumerate(gens):
                img = int(g[pt])
                if self.parent[img] < 0:
                    self.parent[img] = pt
                    self.via[img] = k
                    self.orbit.append(img)

    def in_orbit(self, point):
        return self.parent[point] >= 0

    def rep(self, point):
        """Transversal image array u with beta^u = point (None = identity)."""
        if point == self.beta:
            return None
        cached = self._reps.get(point)
        if cached is not None:
            return cached
        if self.parent[point] < 0:
            raise KeyError(point)
        path = []
        pt = point
        while pt != self.beta:
            path.append(int(self.via[pt]))
            pt = int(self.parent[pt])
        rep = None
        for k in reversed(path):
            g = self._tree_gens[k]
            rep = g.copy() if rep is None else g[rep]  # compose(rep, g)
        self._reps[point] = rep
        return rep


class StabilizerChain:
    """Base and strong generating set, built deterministically and certified."""

    def __init__(self, generators, degree, base_prefix=()):
        self.degree = degree
        self._identity = np.arange(degree, dtype=DTYPE)
        self.levels = [_Level(b, degree) for b in base_prefix]
        arrs = [g.images if isinstance(g, Permutation) else np.asarray(g, dtype=DTYPE)
                for g in generators]
        arrs = [a for a in arrs if not np.array_equal(a, self._identity)]
        for arr in arrs:
            self._insert(arr)
        self._close()
        self.levels = [lvl for lvl in self.levels if len(lvl.orbit) > 1]
        self.verify()

    # -- construction --------------------------------------------------------

    def _gens_at(self, i):
        out = []
        for lvl in self.levels[i:]:
            out.extend(lvl.own_gens)
        return out

    def _refresh(self, upto):
        for i in range(upto + 1):
            self.levels[i].recompute_orbit(self._gens_at(i))

    def _insert(self, arr):
        """Place a strong generator at the first level whose base point it moves."""
        idx = 0
        while True:
            if idx == len(self.levels):
                moved = int(np.nonzero(arr != self._identity)[0][0])
                self.levels.append(_Level(moved, self.degree))
                self.levels[idx].own_gens.append(arr)
                break
            if int(arr[self.levels[idx].beta]) != self.levels[idx].beta:
                self.levels[idx].own_gens.append(arr)
                break
            idx += 1
        self._refresh(idx)
        return idx

    def _sift_images(self, arr, start=0):
        """Sift an image array; return (None, _) on success or (residue, level)."""
        cur = arr
        for idx in range(start, len(self.levels)):
            level = self.levels[idx]
            delta = int(cur[level.beta])
            if delta == level.beta:
                continue
            if not level.in_orbit(delta):
                return cur, idx
            u = level.rep(delta)
            cur = _inv_images(u)[cur]  # compose(cur, u^-1)
            if np.array_equal(cur, self._identity):
                return None, idx
        if np.array_equal(cur, self._identity):
            return None, len(self.levels)
        return cur, len(self.levels)

    def _schreier_residue(self, level, pt, g, start):
        u = level.rep(pt)
        pg = g if u is None else g[u]  # compose(u, g)
        target = level.rep(int(pg[level.beta]))
        schreier = pg if target is None else _inv_images(target)[pg]
        return self._sift_images(schreier, start)

    def _one_pass(self, i):
        """Sift all Schreier generators of level i; returns new level on failure."""
        level = self.levels[i]
        gens = self._gens_at(i)
        for pt in list(level.orbit):
            for g in gens:
                residue, depth = self._schreier_residue(level, pt, g, i + 1)
                if residue is not None:
                    residue.setflags(write=False)
                    return self._place_residue(residue, depth)
        return None

    def _place_residue(self, residue, depth):
        if depth == len(self.levels):
            moved = int(np.nonzero(residue != self._identity)[0][0])
            self.levels.append(_Level(moved, self.degree))
        self.levels[depth].own_gens.append(residue)
        self._refresh(depth)
        return depth

    def _close(self):
        i = len(self.levels) - 1
        while i >= 0:
            depth = self._one_pass(i)
            i = i - 1 if depth is None else depth

    # -- certified queries -----------------------------------------------------

    def verify(self):
        """Certify the chain: every Schreier generator must sift to identity."""
        for i, level in enumerate(self.levels):
            gens = self._gens_at(i)
            for pt in level.orbit:
                for g in gens:
                    residue, _ = self._schreier_residue(level, pt, g, i + 1)
                    if residue is not None:
                        raise AssertionError("stabilizer chain failed certification")

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.orbit)
        return n

    def contains_images(self, arr) -> bool:
        residue, _ = self._sift_images(arr)
        return residue is None

    def base(self):
        return [lvl.beta for lvl in self.levels]

    def random_images(self, rng):
        """Exactly uniform element: one transversal representative per level."""
        out = None
        for level in reversed(self.levels):
            pt = level.orbit[rng.randrange(len(level.orbit))]
            u = level.rep(pt)
            if u is None:
                continue
            out = u.copy() if out is None else u[out]  # compose(stab_part, u)
        return self._identity.copy() if out is None else out

    def canonical_coset_images(self, arr):
        """Canonical representative of (this group)*g, minimizing base images."""
        cur = arr
        for level in self.levels:
            pts = np.asarray(level.orbit, dtype=DTYPE)
            pick = int(pts[np.argmin(cur[pts])])
            u = level.rep(pick)
            if u is not None:
                cur = cur[u]  # compose(u, cur)
        return cur

    def stabilizer_generator_arrays(self, depth):
        """Strong generators fixing the first `depth` base points."""
        return [arr.copy() for arr in self._gens_at(depth)]


_CHAIN_LOCK = threading.Lock()


class PermGroup:
    """A finite permutation group given by generators on 0..degree-1.

    Immutable once built; the stabilizer chain is constructed on first use and
    shared by all subsequent queries, so handles are safe for concurrent
    read-only use.
    """

    def __init__(self, degree, generators, max_degree=DEFAULT_MAX_DEGREE):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if degree > max_degree:
            raise CapExceeded(f"degree {degree} exceeds cap {max_degree}")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g, degree)
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = None
        self._lock = threading.Lock()

    # -- constructors ----------------------------------------------------------

    @classmethod
    def trivial(cls, degree):
        return cls(degree, [])

    @classmethod
    def symmetric(cls, n):
        if n < 2:
            return cls.trivial(max(n, 1))
        gens = [Permutation.from_cycles([[0, 1]], n)]
        if n > 2:
            gens.append(Permutation.from_cycles([list(range(n))], n))
        return cls(n, gens)

    @classmethod
    def alternating(cls, n):
        if n < 3:
            return cls.trivial(max(n, 1))
        gens = [Permutation.from_cycles([[0, 1, 2]], n)]
        if n > 3:
            if n % 2:
                gens.append(Permutation.from_cycles([list(range(n))], n))
            else:
                gens.append(Permutation.from_cycles([list(range(1, n))], n))
        return cls(n, gens)

    @classmethod
    def cyclic(cls, n):
        if n <= 1:
            return cls.trivial(1)
        return cls(n, [Permutation.from_cycles([list(range(n))], n)])

    @classmethod
    def dihedral(cls, n):
        """Dihedral group of order 2n acting on n points."""
        rot = Permutation.from_cycles([list(range(n))], n)
        flip = Permutation([(n - i) % n for i in range(n)], n)
        return cls(n, [rot, flip])

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def from_dict(cls, data):
        degree = int(data["degree"])
        gens = []
        for item in data["generators"]:
            if isinstance(item, str):
                gens.append(Permutation.parse(item, degree))
            else:
                gens.append(Permutation(item, degree))
        return cls(degree, gens)

    def to_dict(self):
        return {
            "degree": self.degree,
            "generators": [[int(x) for x in g.images] for g in self.generators],
        }

    # -- chain-backed queries ----------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degrees {p.degree} and {self.degree} differ")
        return self.chain.contains_images(p.images)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def random_element(self, rng) -> Permutation:
        return Permutation._wrap(self.chain.random_images(rng))

    def is_trivial(self):
        return not self.generators

    def is_abelian(self):
        gens = self.generators
        return all(
            np.array_equal(compose(a, b).images, compose(b, a).images)
            for i, a in enumerate(gens)
            for b in gens[i + 1 :]
        )

    def orbits(self):
        seen = np.full(self.degree, -1, dtype=DTYPE)
        orbits = []
        for start in range(self.degree):
            if seen[start] >= 0:
                continue
            idx = len(orbits)
            queue = [start]
            seen[start] = idx
            k = 0
            while k < len(queue):
                pt = queue[k]
                k += 1
                for g in self.generators:
                    img = int(g.images[pt])
                    if seen[img] < 0:
                        seen[img] = idx
                        queue.append(img)
            orbits.append(queue)
        return orbits

    def is_transitive(self):
        return self.degree <= 1 or len(self.orbits()) == 1

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def is_normal_in(self, other: "PermGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(
            self.contains(h.conjugate(g))
            for g in other.generators
            for h in self.generators
        )

    def conjugated_by(self, g: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [h.conjugate(g) for h in self.generators])

    # -- structural primitives ------------------------------------------------------

    def subgroup(self, gens) -> "PermGroup":
        return PermGroup(self.degree, gens)

    def normal_closure(self, elements) -> "PermGroup":
        """Smallest normal subgroup of this group containing the elements."""
        elements = list(elements)
        for s in elements:
            if not self.contains(s):
                raise ElementNotInGroup("seed element lies outside the group")
        gens = [s for s in elements if not s.is_identity()]
        closure = PermGroup(self.degree, gens)
        fresh = list(gens)
        while fresh:
            missing = []
            for h in fresh:
                for g in self.generators:
                    c = h.conjugate(g)
                    if not closure.contains(c) and all(c != m for m in missing):
                        missing.append(c)
            if missing:
                gens.extend(missing)
                closure = PermGroup(self.degree, gens)
            fresh = missing
        return closure

    def derived_subgroup(self) -> "PermGroup":
        comms = []
        gens = self.generators
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                c = compose(compose(a, b).inverse(), compose(b, a))
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def is_perfect(self) -> bool:
        return not self.is_trivial() and self.derived_subgroup().order() == self.order()

    def perfect_residual(self) -> "PermGroup":
        """Last term of the derived series."""
        cur = self
        while True:
            nxt = cur.derived_subgroup()
            if nxt.order() == cur.order():
                return cur
            cur = nxt

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Stabilizer of a point, via a chain rebased at that point."""
        chain = StabilizerChain(self.generators, self.degree, base_prefix=(point,))
        if not chain.levels or chain.levels[0].beta != point:
            return PermGroup(self.degree, self.generators)
        gens = [Permutation._wrap(a) for a in chain.stabilizer_generator_arrays(1)]
        stab = PermGroup(self.degree, gens)
        assert stab.order() * len(chain.levels[0].orbit) == self.order()
        return stab

    def coset_action(self, sub: "PermGroup", max_index=DEFAULT_MAX_COSET_INDEX):
        return coset_action(self, sub, max_index=max_index)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


def _pair_preimage(pair_chain: StabilizerChain, n_img: int, n_src: int, q: Permutation):
    """Reconstruct a source element from an image element via a pair chain.

    The chain lives on the disjoint union (image block first) of block-diagonal
    permutations, with every base point of the image group's own chain leading;
    sifting the image part then accumulates a matching source part.
    """
    cur_img = q.images
    cur_src = np.arange(n_src, dtype=DTYPE)
    ident_img = np.arange(n_img, dtype=DTYPE)
    for level in pair_chain.levels:
        if level.beta >= n_img:
            break
        delta = int(cur_img[level.beta])
        if delta == level.beta:
            continue
        if not level.in_orbit(delta):
            raise ElementNotInGroup("element is not in the image group")
        u = level.rep(delta)
        u_img, u_src = u[:n_img], (u[n_img:] - n_img).astype(DTYPE)
        cur_img = _inv_images(u_img)[cur_img]
        cur_src = _inv_images(u_src)[cur_src]
    if not np.array_equal(cur_img, ident_img):
        raise ElementNotInGroup("element is not in the image group")
    return Permutation._wrap(_inv_images(cur_src))


def _build_pair_chain(image: PermGroup, img_arrays, src_arrays, src_degree):
    """Chain over image ⊕ source with the image base leading.

    The arrays are aligned per original source generator, including those
    whose image is the identity (their source parts seed the kernel levels).
    """
    n_img = image.degree
    pair_gens = []
    for img_arr, src_arr in zip(img_arrays, src_arrays):
        pair = np.concatenate([img_arr, src_arr + n_img]).astype(DTYPE)
        pair.setflags(write=False)
        pair_gens.append(Permutation(pair, _trusted=True))
    prefix = tuple(image.chain.base())
    return StabilizerChain(pair_gens, n_img + src_degree, base_prefix=prefix)


class CosetActionHom:
    """Record of the homomorphism G -> image produced by a coset action."""

    def __init__(self, source, image, pair_chain, reps, lookup, sub_chain):
        self.source = source
        self.image = image
        self._pair_chain = pair_chain
        self._reps = reps
        self._lookup = lookup
        self._sub_chain = sub_chain

    def kernel_order(self):
        return self.source.order() // self.image.order()

    def kernel(self) -> PermGroup:
        """The kernel, read off the pair chain below the image base."""
        n_img = self.image.degree
        gens = []
        for lvl in self._pair_chain.levels:
            if lvl.beta < n_img:
                continue
            for arr in lvl.own_gens:
                src = (arr[n_img:] - n_img).astype(DTYPE)
                src.setflags(write=False)
                gens.append(Permutation(src, _trusted=True))
        return PermGroup(self.source.degree, gens)

    def apply(self, g: Permutation) -> Permutation:
        """Image of a source-group element."""
        if g.degree != self.source.degree:
            raise DegreeMismatch("element does not act on the source domain")
        out = np.empty(self.image.degree, dtype=DTYPE)
        for i, rep in enumerate(self._reps):
            canon = self._sub_chain.canonical_coset_images(g.images[rep])
            idx = self._lookup.get(canon.tobytes())
            if idx is None:
                raise ElementNotInGroup("element does not normalize the coset space")
            out[i] = idx
        return Permutation._wrap(out)

    def preimage(self, q: Permutation) -> Permutation:
        """Some source element mapping onto the image element q."""
        if q.degree != self.image.degree:
            raise DegreeMismatch("element does not live in the image group")
        return _pair_preimage(self._pair_chain, self.image.degree, self.source.degree, q)


class PartitionActionHom:
    """Homomorphism record for the action on an invariant partition."""

    def __init__(self, source, image, pair_chain, block_of):
        self.source = source
        self.image = image
        self._pair_chain = pair_chain
        self.block_of = block_of          # point -> block index
        reps = np.full(image.degree, -1, dtype=DTYPE)
        for pt in range(len(block_of) - 1, -1, -1):
            reps[block_of[pt]] = pt
        self._block_reps = reps

    def kernel_order(self):
        return self.source.order() // self.image.order()

    def apply(self, g: Permutation) -> Permutation:
        if g.degree != self.source.degree:
            raise DegreeMismatch("element does not act on the source domain")
        return Permutation._wrap(self.block_of[g.images[self._block_reps]].astype(DTYPE))

    def preimage(self, q: Permutation) -> Permutation:
        if q.degree != self.image.degree:
            raise DegreeMismatch("element does not live in the image group")
        return _pair_preimage(self._pair_chain, self.image.degree, self.source.degree, q)


def partition_action(group: PermGroup, block_of):
    """Action of the group on an invariant partition (blocks by index array)."""
    block_of = np.asarray(block_of, dtype=DTYPE)
    n_blocks = int(block_of.max(initial=-1)) + 1
    reps = np.full(n_blocks, -1, dtype=DTYPE)
    for pt in range(block_of.shape[0] - 1, -1, -1):
        reps[block_of[pt]] = pt
    img_arrays = [block_of[g.images[reps]].astype(DTYPE) for g in group.generators]
    img_gens = [Permutation(arr.copy(), degree=n_blocks) for arr in img_arrays]
    image = PermGroup(n_blocks, img_gens)
    pair_chain = _build_pair_chain(
        image, img_arrays, [g.images for g in group.generators], group.degree
    )
    return image, PartitionActionHom(group, image, pair_chain, block_of)


def coset_action(group: PermGroup, sub: PermGroup, max_index=DEFAULT_MAX_COSET_INDEX):
    """Permutation action of `group` on the right cosets of `sub`.

    Returns ``(image, hom)``.  When `sub` is normal the image is a faithful
    representation of the quotient and the kernel equals `sub`.
    """
    if not sub.is_subgroup_of(group):
        raise NotSubgroup("not a subgroup of the given group")
    index, rem = divmod(group.order(), sub.order())
    if rem:
        raise NotSubgroup("order does not divide the group order")
    if index > max_index:
        raise IndexCapExceeded(f"index {index} exceeds cap {max_index}")

    sub_chain = sub.chain
    ident = np.arange(group.degree, dtype=DTYPE)
    start = sub_chain.canonical_coset_images(ident)
    reps = [start]
    lookup = {start.tobytes(): 0}
    gen_arrays = [g.images for g in group.generators]
    images = [[] for _ in gen_arrays]
    k = 0
    while k < len(reps):
        rep = reps[k]
        for gi, g in enumerate(gen_arrays):
            canon = sub_chain.canonical_coset_images(g[rep])  # compose(rep, g)
            key = canon.tobytes()
            idx = lookup.get(key)
            if idx is None:
                idx = len(reps)
                if idx >= index:
                    raise NotSubgroup("coset enumeration exceeded the subgroup index")
                lookup[key] = idx
                reps.append(canon)
            images[gi].append(idx)
        k += 1
    if len(reps) != index:
        raise AssertionError("coset enumeration undercounted the index")

    n_img = index
    img_arrays = [np.asarray(images[gi], dtype=DTYPE) for gi in range(len(gen_arrays))]
    img_gens = [Permutation._wrap(arr.copy()) for arr in img_arrays]
    image = PermGroup(n_img, img_gens, max_degree=max(max_index, DEFAULT_MAX_DEGREE))
    pair_chain = _build_pair_chain(image, img_arrays, gen_arrays, group.degree)
    hom = CosetActionHom(group, image, pair_chain, reps, lookup, sub_chain)
    return image, hom


def direct_product(left: PermGroup, right: PermGroup) -> PermGroup:
    """Intransitive direct product acting on the disjoint union of domains."""
    n, m = left.degree, right.degree
    gens = []
    for g in left.generators:
        arr = np.concatenate([g.images, np.arange(n, n + m, dtype=DTYPE)]).astype(DTYPE)
        arr.setflags(write=False)
        gens.append(Permutation(arr, _trusted=True))
    for g in right.generators:
        arr = np.concatenate([np.arange(n, dtype=DTYPE), g.images + n]).astype(DTYPE)
        arr.setflags(write=False)
        gens.append(Permutation(arr, _trusted=True))
    return PermGroup(n + m, gens)
