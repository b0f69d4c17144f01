"""Builders for uniserial families: wreath products, affine groups, modules.

Linear algebra is over prime fields with row vectors acted on from the
right, so composing two matrix actions left-to-right matches permutation
composition.  Affine groups put the vectors of F_p^n in lexicographic order
(first coordinate most significant) and adjoin translations by the standard
basis, which keeps point labels reproducible across runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadCenter,
    CapExceeded,
    NoSuchPrime,
    NotTransitive,
    NotUniserialModule,
    SearchFailed,
    SingularMatrix,
)
from .lattice import ElementTable
from .perm import DEFAULT_MAX_DEGREE, DTYPE, PermGroup, Permutation

DEFAULT_SUBMODULE_POINT_CAP = 1_000_000


# ---------------------------------------------------------------------------
# prime-field linear algebra
# ---------------------------------------------------------------------------

def _mod_inv(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref_mod(rows, p: int) -> np.ndarray:
    """Reduced row echelon form over F_p; canonical basis of the row space."""
    mat = np.array(rows, dtype=np.int64) % p
    if mat.ndim == 1:
        mat = mat[None, :]
    mat = mat.copy()
    n_rows, n_cols = mat.shape
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if mat[r, col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        mat[rank] = (mat[rank] * _mod_inv(mat[rank, col], p)) % p
        for r in range(n_rows):
            if r != rank and mat[r, col]:
                mat[r] = (mat[r] - mat[r, col] * mat[rank]) % p
        rank += 1
        if rank == n_rows:
            break
    return mat[:rank]


def det_mod(matrix, p: int) -> int:
    mat = np.array(matrix, dtype=np.int64) % p
    n = mat.shape[0]
    det = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r, col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            mat[[col, pivot]] = mat[[pivot, col]]
            det = -det
        det = (det * mat[col, col]) % p
        inv = _mod_inv(mat[col, col], p)
        for r in range(col + 1, n):
            if mat[r, col]:
                mat[r] = (mat[r] - mat[r, col] * inv * mat[col]) % p
    return det % p


def in_row_space(vec, basis, p: int) -> bool:
    """Whether vec lies in the span of an rref basis."""
    v = np.array(vec, dtype=np.int64) % p
    for row in basis:
        lead = int(np.argmax(row != 0)) if row.any() else None
        if lead is None:
            continue
        if v[lead]:
            v = (v - v[lead] * row) % p
    return not v.any()


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n in canonical reduced-echelon form."""

    p: int
    ambient_dim: int
    basis: np.ndarray = field(repr=False)  # rref rows

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def key(self) -> bytes:
        return self.basis.astype(np.int64).tobytes() + bytes([self.dim])

    def contains(self, vec) -> bool:
        return in_row_space(vec, self.basis, self.p)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def sum_with(self, other: "Subspace") -> "Subspace":
        if not other.basis.size:
            return self
        if not self.basis.size:
            return other
        stacked = np.vstack([self.basis, other.basis])
        return Subspace(self.p, self.ambient_dim, rref_mod(stacked, self.p))

    def intersection(self, other: "Subspace") -> "Subspace":
        # row space of the common solutions, via the kernel of the stacked duals
        p, n = self.p, self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace(p, n, np.zeros((0, n), dtype=np.int64))
        # solve x in both spans: x = a*B1 = b*B2
        b1, b2 = self.basis, other.basis
        stacked = np.vstack([b1, b2])
        k1 = b1.shape[0]
        null = _nullspace_mod(stacked.T, p)  # combos (a, -b) with a*B1 - ... = 0
        vecs = [(row[:k1] @ b1) % p for row in null]
        vecs = [v for v in vecs if v.any()]
        if not vecs:
            return Subspace(p, n, np.zeros((0, n), dtype=np.int64))
        return Subspace(p, n, rref_mod(np.array(vecs), p))


def _nullspace_mod(mat, p: int) -> np.ndarray:
    """Basis of the right kernel of mat over F_p (rows are kernel vectors)."""
    mat = np.array(mat, dtype=np.int64) % p
    m, n = mat.shape
    aug = rref_mod(mat, p)
    pivots = []
    for row in aug:
        if row.any():
            pivots.append(int(np.argmax(row != 0)))
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-aug[r, fc]) % p
        out.append(v)
    return np.array(out, dtype=np.int64) if out else np.zeros((0, n), dtype=np.int64)


# ---------------------------------------------------------------------------
# modules over F_p
# ---------------------------------------------------------------------------

@dataclass
class FpModule:
    """A finite-dimensional module: acting matrices, one per abstract generator."""

    p: int
    dim: int
    action: list[np.ndarray]
    generator_labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        fixed = []
        for mat in self.action:
            arr = np.array(mat, dtype=np.int64) % self.p
            if arr.shape != (self.dim, self.dim):
                raise ValueError("action matrix has the wrong shape")
            if det_mod(arr, self.p) == 0:
                raise SingularMatrix("action matrix is singular")
            fixed.append(arr)
        self.action = fixed
        if not self.generator_labels:
            self.generator_labels = [f"g{i}" for i in range(len(self.action))]

    def zero_subspace(self) -> Subspace:
        return Subspace(self.p, self.dim, np.zeros((0, self.dim), dtype=np.int64))

    def full_space(self) -> Subspace:
        return Subspace(self.p, self.dim, rref_mod(np.eye(self.dim, dtype=np.int64), self.p))


def spin(module: FpModule, vec) -> Subspace:
    """Smallest invariant subspace containing the vector."""
    p = module.p
    v = np.array(vec, dtype=np.int64) % p
    if not v.any():
        return module.zero_subspace()
    basis = rref_mod(v[None, :], p)
    changed = True
    while changed:
        changed = False
        for mat in module.action:
            images = (basis @ mat) % p
            for row in images:
                if not in_row_space(row, basis, p):
                    basis = rref_mod(np.vstack([basis, row[None, :]]), p)
                    changed = True
    return Subspace(p, module.dim, basis)


def all_submodules(module: FpModule, point_cap: int = DEFAULT_SUBMODULE_POINT_CAP):
    """Every invariant subspace, as the sum-closure of cyclic submodules."""
    p, n = module.p, module.dim
    if p**n > point_cap and n > 12:
        raise CapExceeded(f"{p}^{n} vectors exceed the submodule enumeration cap")
    found: dict[bytes, Subspace] = {}

    def note(sub):
        key = sub.key()
        if key not in found:
            found[key] = sub
            return True
        return False

    note(module.zero_subspace())
    # one representative per 1-dimensional subspace: first nonzero entry is 1
    for support in range(n):
        head = [0] * support + [1]
        for tail in itertools.product(range(p), repeat=n - support - 1):
            vec = np.array(head + list(tail), dtype=np.int64)
            note(spin(module, vec))
    worklist = list(found.values())
    while worklist:
        cur = worklist.pop()
        for other in list(found.values()):
            upper = cur.sum_with(other)
            if note(upper):
                worklist.append(upper)
    return sorted(found.values(), key=lambda s: (s.dim, s.key()))


def module_composition_series(module: FpModule):
    """Unique composition series, top-down; raises when submodules form no chain."""
    subs = all_submodules(module)
    by_dim = sorted(subs, key=lambda s: -s.dim)
    for bigger, smaller in zip(by_dim, by_dim[1:]):
        if not bigger.contains_subspace(smaller):
            raise NotUniserialModule("submodules are not totally ordered")
    return by_dim


def is_uniserial_module(module: FpModule) -> bool:
    try:
        module_composition_series(module)
        return True
    except NotUniserialModule:
        return False


def acts_faithfully_on_top(module: FpModule, group_order_cap: int = 100_000) -> bool:
    """Whether the acting group is faithful on the quotient by the maximal submodule."""
    series = module_composition_series(module)
    if len(series) < 2:
        raise NotUniserialModule("zero module has no top quotient")
    top_kernel = series[1]  # unique maximal submodule
    p = module.p
    elements = {np.eye(module.dim, dtype=np.int64).tobytes(): np.eye(module.dim, dtype=np.int64)}
    frontier = [np.eye(module.dim, dtype=np.int64)]
    while frontier:
        nxt = []
        for mat in frontier:
            for gen in module.action:
                prod = (mat @ gen) % p
                key = prod.tobytes()
                if key not in elements:
                    if len(elements) >= group_order_cap:
                        raise CapExceeded("matrix group too large to enumerate")
                    elements[key] = prod
                    nxt.append(prod)
        frontier = nxt
    ident = np.eye(module.dim, dtype=np.int64)
    for mat in elements.values():
        if np.array_equal(mat, ident):
            continue
        diff = (mat - ident) % p
        if all(in_row_space(row, top_kernel.basis, p) for row in diff):
            return False
    return True


def solve_in_row_space(basis, vec, p: int):
    """Coordinates of vec in the span of the basis rows, or None."""
    bmat = np.array(basis, dtype=np.int64) % p
    target = np.array(vec, dtype=np.int64) % p
    # eliminate on the transpose: solve x @ bmat = target
    aug = np.hstack([bmat.T, target[:, None]]) % p
    aug = rref_mod(aug, p)
    k = bmat.shape[0]
    x = np.zeros(k, dtype=np.int64)
    for row in aug:
        lead = np.nonzero(row[:-1])[0]
        if lead.size == 0:
            if row[-1] % p:
                return None
            continue
        x[lead[0]] = row[-1] % p
    if not np.array_equal((x @ bmat) % p, target):
        return None
    return x


def quotient_module(module: FpModule, subspace: Subspace) -> FpModule:
    """The module structure induced on the quotient by an invariant subspace.

    Coordinates on the quotient are the non-pivot columns of the subspace's
    echelon basis; reduction against that basis projects onto them.
    """
    p = module.p
    basis = np.array(subspace.basis, dtype=np.int64) % p
    pivots = []
    for row in basis:
        nz = np.nonzero(row)[0]
        if nz.size:
            pivots.append(int(nz[0]))
    free = [c for c in range(module.dim) if c not in pivots]

    def reduce(vec):
        v = vec.copy() % p
        for row, piv in zip(basis, pivots):
            if v[piv]:
                v = (v - v[piv] * row) % p
        return v

    mats = []
    for mat in module.action:
        rows = []
        for j in free:
            image = reduce(mat[j].copy())
            rows.append(image[free])
        mats.append(np.array(rows, dtype=np.int64) % p)
    return FpModule(p, len(free), mats, list(module.generator_labels))


def restrict_to_submodule(module: FpModule, subspace: Subspace) -> FpModule:
    """The module structure induced on an invariant subspace, in its basis."""
    p = module.p
    basis = subspace.basis
    mats = []
    for mat in module.action:
        rows = []
        for b in basis:
            coords = solve_in_row_space(basis, (np.array(b, dtype=np.int64) @ mat) % p, p)
            if coords is None:
                raise ValueError("subspace is not invariant under the action")
            rows.append(coords)
        mats.append(np.array(rows, dtype=np.int64) % p)
    return FpModule(p, subspace.dim, mats, list(module.generator_labels))


def permutation_module(n: int, p: int) -> tuple[FpModule, Subspace, Subspace]:
    """Natural coordinate-permutation module for S_n, with its two named submodules.

    Returns (module, sum_zero, constants).
    """
    if n < 2:
        raise ValueError("need at least two coordinates")

    def perm_matrix(images):
        mat = np.zeros((n, n), dtype=np.int64)
        for i, j in enumerate(images):
            mat[i, j] = 1
        return mat

    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % n for i in range(n)]
    module = FpModule(p, n, [perm_matrix(swap), perm_matrix(cycle)], ["swap01", "cycle"])
    sum_zero_rows = [
        [1 if j == i else (-1 if j == i + 1 else 0) for j in range(n)] for i in range(n - 1)
    ]
    sum_zero = Subspace(p, n, rref_mod(np.array(sum_zero_rows), p))
    constants = Subspace(p, n, rref_mod(np.ones((1, n), dtype=np.int64), p))
    return module, sum_zero, constants


# ---------------------------------------------------------------------------
# wreath products and affine groups
# ---------------------------------------------------------------------------

def wreath_product(bottom: PermGroup, top: PermGroup,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """Imprimitive wreath product: one bottom copy per top point, top permuting blocks."""
    if not top.is_transitive():
        raise NotTransitive("top group must be transitive on its domain")
    d, k = bottom.degree, top.degree
    degree = d * k
    if degree > max_degree:
        raise CapExceeded(f"wreath degree {degree} exceeds cap {max_degree}")
    gens = []
    for g in bottom.generators:
        img = np.arange(degree, dtype=DTYPE)
        img[:d] = g.images
        gens.append(Permutation._wrap(img))
    for s in top.generators:
        img = np.empty(degree, dtype=DTYPE)
        for block in range(k):
            target = int(s.images[block])
            img[block * d : (block + 1) * d] = np.arange(
                target * d, (target + 1) * d, dtype=DTYPE
            )
        gens.append(Permutation._wrap(img))
    return PermGroup(degree, gens)


def _vector_points(p: int, n: int):
    """All vectors of F_p^n in lexicographic order, row per point."""
    grids = np.indices((p,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids.astype(np.int64))


def affine_group(p: int, n: int, matrices,
                 max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """Translations of F_p^n extended by the given invertible linear maps."""
    degree = p**n
    if degree > max_degree:
        raise CapExceeded(f"{p}^{n} points exceed the degree cap {max_degree}")
    pts = _vector_points(p, n)
    weights = np.array([p ** (n - 1 - i) for i in range(n)], dtype=np.int64)

    def to_index(rows):
        return (rows % p) @ weights

    gens = []
    for i in range(n):
        shift = pts.copy()
        shift[:, i] += 1
        gens.append(Permutation(to_index(shift).astype(DTYPE), degree))
    for mat in matrices:
        arr = np.array(mat, dtype=np.int64) % p
        if arr.shape != (n, n):
            raise ValueError("linear part has the wrong shape")
        if det_mod(arr, p) == 0:
            raise SingularMatrix("linear part is singular")
        gens.append(Permutation(to_index(pts @ arr).astype(DTYPE), degree))
    return PermGroup(degree, gens)


def matrix_group_order(p: int, matrices, cap: int = 1_000_000) -> int:
    """Order of the matrix group generated over F_p, by closure."""
    mats = [np.array(m, dtype=np.int64) % p for m in matrices]
    dim = mats[0].shape[0]
    ident = np.eye(dim, dtype=np.int64)
    elements = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for mat in frontier:
            for gen in mats:
                prod = (mat @ gen) % p
                key = prod.tobytes()
                if key not in elements:
                    if len(elements) >= cap:
                        raise CapExceeded("matrix group exceeds the closure cap")
                    elements.add(key)
                    nxt.append(prod)
        frontier = nxt
    return len(elements)


# ---------------------------------------------------------------------------
# the two named constructions
# ---------------------------------------------------------------------------

def sl2_5() -> PermGroup:
    """The double cover of A5, acting on the 24 nonzero vectors of F_5^2."""
    pts = [(a, b) for a in range(5) for b in range(5) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(pts)}

    def mat_perm(m):
        images = [0] * 24
        for v, i in index.items():
            w = (
                (m[0][0] * v[0] + m[1][0] * v[1]) % 5,
                (m[0][1] * v[0] + m[1][1] * v[1]) % 5,
            )
            images[i] = index[w]
        return Permutation(images, 24)

    return PermGroup(24, [mat_perm([[1, 0], [1, 1]]), mat_perm([[0, 1], [4, 0]])])


def psl3_4() -> PermGroup:
    """PSL(3,4) on the 21 points of the projective plane over GF(4).

    GF(4) elements are encoded 0..3 as polynomials over F_2 modulo x^2+x+1.
    """
    add = [[a ^ b for b in range(4)] for a in range(4)]
    mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]

    def vec_canon(v):
        lead = next(x for x in v if x)
        inv = [0, 1, 3, 2][lead]
        return tuple(mul[inv][x] for x in v)

    points = []
    seen = set()
    for v in itertools.product(range(4), repeat=3):
        if any(v):
            c = vec_canon(v)
            if c not in seen:
                seen.add(c)
                points.append(c)
    index = {v: i for i, v in enumerate(points)}

    def apply(mat, v):
        out = []
        for col in range(3):
            acc = 0
            for row in range(3):
                acc = add[acc][mul[v[row]][mat[row][col]]]
            out.append(acc)
        return tuple(out)

    def mat_perm(mat):
        images = [0] * 21
        for v, i in index.items():
            images[i] = index[vec_canon(apply(mat, v))]
        return Permutation(images, 21)

    # a transvection plus a determinant-one companion; the pair closes to
    # the full projective image of order 20160 (asserted below)
    t = [[1, 0, 0], [1, 1, 0], [0, 0, 1]]
    s = [[3, 2, 0], [0, 0, 3], [0, 3, 2]]
    group = PermGroup(21, [mat_perm(t), mat_perm(s)])
    assert group.order() == 20160
    return group


def _first_matrix_with(p, condition):
    for x, y, z, w in itertools.product(range(p), repeat=4):
        mat = np.array([[x, y], [z, w]], dtype=np.int64)
        if condition(mat):
            return mat
    return None


def build_affine_equality_group(p: int, max_degree: int = DEFAULT_MAX_DEGREE):
    """Affine group p^4 : H for the index-two subgroup H of a wreathed
    pair of normalizers of quaternion subgroups of GL2(p).

    Requires p = +/-1 mod 8 so that GL2(p) holds the order-48 nonsplit
    extension used as the building block.  Returns (group, h_matrices).
    """
    if p < 3 or p % 8 not in (1, 7):
        raise NoSuchPrime(f"p = {p} is not +/-1 mod 8")
    if p**4 > max_degree:
        raise CapExceeded(f"{p}^4 points exceed the degree cap")
    neg_ident = (-np.eye(2, dtype=np.int64)) % p

    def order_is(mat, k):
        acc = np.eye(2, dtype=np.int64)
        for i in range(1, k + 1):
            acc = (acc @ mat) % p
            if np.array_equal(acc, np.eye(2, dtype=np.int64)):
                return i == k
        return False

    a = _first_matrix_with(
        p, lambda m: np.array_equal((m @ m) % p, neg_ident)
    )
    if a is None:
        raise SearchFailed("no order-4 matrix squaring to -1")

    def anti_commutes(m):
        return (
            np.array_equal((m @ m) % p, neg_ident)
            and np.array_equal((a @ m) % p, (neg_ident @ m @ a) % p)
        )

    b = _first_matrix_with(p, anti_commutes)
    if b is None:
        raise SearchFailed("no anti-commuting partner for the quaternion pair")
    ab = (a @ b) % p

    def cycles_quaternions(m):
        if det_mod(m, p) != 1 or not order_is(m, 3):
            return False
        m_inv = np.array(
            [[m[1, 1], (-m[0, 1]) % p], [(-m[1, 0]) % p, m[0, 0]]], dtype=np.int64
        ) % p
        return np.array_equal((m_inv @ a @ m) % p, b) and np.array_equal(
            (m_inv @ b @ m) % p, ab
        )

    c = _first_matrix_with(p, cycles_quaternions)
    if c is None:
        raise SearchFailed("no order-3 element cycling the quaternion triple")

    def swaps_pair(m):
        if det_mod(m, p) != 1:
            return False
        d = det_mod(m, p)
        m_inv = np.array(
            [[m[1, 1], (-m[0, 1]) % p], [(-m[1, 0]) % p, m[0, 0]]], dtype=np.int64
        ) * _mod_inv(d, p) % p
        return np.array_equal((m_inv @ a @ m) % p, b) and np.array_equal(
            (m_inv @ b @ m) % p, a
        )

    e = _first_matrix_with(p, swaps_pair)
    if e is None:
        raise SearchFailed("no swap element extending the triple cycle")
    block = matrix_group_order(p, [a, b, c, e])
    if block != 48:
        raise SearchFailed(f"building block closed to order {block}, expected 48")

    ident2 = np.eye(2, dtype=np.int64)
    swap4 = np.zeros((4, 4), dtype=np.int64)
    for i in range(2):
        for j in range(2):
            swap4[2 * i + j, 2 * j + i] = 1
    h_gens = [np.kron(m, ident2) % p for m in (a, b, c)]
    h_gens += [np.kron(ident2, m) % p for m in (a, b, c)]
    h_gens.append((swap4 @ np.kron(ident2, e)) % p)
    h_order = matrix_group_order(p, h_gens)
    if h_order != 1152:
        raise SearchFailed(f"linear part closed to order {h_order}, expected 1152")
    return affine_group(p, 4, h_gens, max_degree=max_degree), h_gens


def center_ids(table: ElementTable) -> np.ndarray:
    fixed = np.ones(table.m, dtype=bool)
    for cm in table.gen_conj_maps:
        fixed &= cm == np.arange(table.m)
    return np.nonzero(fixed)[0]


def build_wreath_quasisimple(
    n: int,
    quasisimple: PermGroup | None = None,
    quotient: str = "full",
    max_degree: int = DEFAULT_MAX_DEGREE,
):
    """Quotient of (quasisimple wr S_n) by a submodule of the central block.

    ``quotient='full'`` keeps the whole wreath product; ``'central-product'``
    factors out the diagonal of the centers (supported for central order 2),
    acting on center-identified point pairs.  Returns (group, info dict).
    """
    from .alpha import is_prime

    base = quasisimple if quasisimple is not None else sl2_5()
    table = ElementTable(base)
    z_ids = center_ids(table)
    z_size = int(z_ids.size)
    if not is_prime(z_size):
        raise BadCenter(f"center has order {z_size}, need prime cyclic")
    p = z_size
    if n < 5 or n % p:
        raise BadCenter(f"need n >= 5 divisible by the central order {p}")
    if not base.is_perfect():
        raise BadCenter("bottom group must be quasisimple (perfect)")
    info = {
        "center_order": p,
        "bottom_order": base.order(),
        "top_order": math.factorial(n),
    }
    if quotient == "full":
        group = wreath_product(base, PermGroup.symmetric(n), max_degree=max_degree)
        info["retained_dim"] = n
        info["order"] = base.order() ** n * math.factorial(n)
        return group, info
    if quotient != "central-product":
        raise ValueError("quotient must be 'full' or 'central-product'")
    if p != 2:
        raise BadCenter("central-product quotient implemented for central order 2")

    zeta = None
    for z in z_ids.tolist():
        if z != table.identity_id:
            zeta = table.perms[z]
            break
    d = base.degree
    pairs = {}
    points = []
    for i in range(n):
        for j in range(i + 1, n):
            for x in range(d):
                if int(zeta[x]) < x:
                    continue  # canonical side of the center flip
                for y in range(d):
                    pairs[(i, j, x, y)] = len(points)
                    points.append((i, j, x, y))
    degree = len(points)
    if degree > max_degree:
        raise CapExceeded(f"central-product action needs {degree} points")

    def canon(i, j, x, y):
        if i > j:
            i, j, x, y = j, i, y, x
        if int(zeta[x]) < x:
            x, y = int(zeta[x]), int(zeta[y])
        return pairs[(i, j, x, y)]

    gens = []
    for g in base.generators:  # acting on the first block
        img = np.empty(degree, dtype=DTYPE)
        for idx, (i, j, x, y) in enumerate(points):
            nx = int(g.images[x]) if i == 0 else x
            ny = int(g.images[y]) if j == 0 else y
            img[idx] = canon(i, j, nx, ny)
        gens.append(Permutation(img, degree))
    for s in PermGroup.symmetric(n).generators:
        img = np.empty(degree, dtype=DTYPE)
        for idx, (i, j, x, y) in enumerate(points):
            img[idx] = canon(int(s.images[i]), int(s.images[j]), x, y)
        gens.append(Permutation(img, degree))
    group = PermGroup(degree, gens)
    info["retained_dim"] = n - 1
    info["order"] = base.order() ** n * math.factorial(n) // 2
    return group, info
