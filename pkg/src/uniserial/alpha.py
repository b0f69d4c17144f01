"""Symbolic finite simple groups and the weight functions on them.

A descriptor names a simple group (cyclic, alternating, Lie type, sporadic,
or the Tits group) together with exact order and outer-automorphism data.
The weight ``alpha_star`` depends only on the family and its parameters; the
refined weight ``alpha`` folds in a term shrinking like a power of the group
order and is returned as a certified rational interval, so the strict
inequalities checked downstream are machine-verified rather than floated.

Naming conventions: a group is viewed as alternating whenever possible, the
minus-type rank-2 orthogonal groups are rendered as PSL2(q^2), PSL3(2) as
PSL2(7), and PSp4(3) as PSU4(2).  Ranks of twisted types are untwisted ranks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import OutsideTable, UnknownSporadic, UnnormalizedDescriptor
from .intervals import RatInterval

SPORADIC_ORDERS = {
    "M11": 7920,
    "M12": 95040,
    "M22": 443520,
    "M23": 10200960,
    "M24": 244823040,
    "J1": 175560,
    "J2": 604800,
    "J3": 50232960,
    "J4": 86775571046077562880,
    "Co1": 4157776806543360000,
    "Co2": 42305421312000,
    "Co3": 495766656000,
    "Fi22": 64561751654400,
    "Fi23": 4089470473293004800,
    "Fi24'": 1255205709190661721292800,
    "HS": 44352000,
    "McL": 898128000,
    "He": 4030387200,
    "Ru": 145926144000,
    "Suz": 448345497600,
    "ON": 460815505920,
    "HN": 273030912000000,
    "Ly": 51765179004000000,
    "Th": 90745943887872000,
    "B": 4154781481226426191177580544000000,
    "M": 808017424794512875886459904961710757005754368000000000,
}

SPORADIC_OUT_TWO = {
    "M12", "M22", "J2", "J3", "HS", "McL", "He", "Suz", "ON", "Fi22", "Fi24'", "HN",
}

TITS_ORDER = 17971200

LIE_FAMILIES = {
    "PSL", "PSU", "PSp", "Omega", "POmega+", "POmega-",
    "G2", "F4", "E6", "2E6", "E7", "E8", "2B2", "2G2", "2F4", "3D4",
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_decomposition(q: int):
    """(p, f) with q = p**f, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1)
        if q % p == 0:
            f = 0
            while q % p == 0:
                q //= p
                f += 1
            return (p, f) if q == 1 else None
    return None


@dataclass(frozen=True)
class SimpleGroupDescriptor:
    """A finite simple group in canonical form."""

    kind: str            # cyclic | alternating | lie | sporadic | tits
    family: str = ""     # lie family name, or sporadic name
    n: int = 0           # alternating degree, or lie dimension parameter
    q: int = 0           # field size for lie types; prime for cyclic

    def __str__(self):
        if self.kind == "cyclic":
            return f"C{self.q}"
        if self.kind == "alternating":
            return f"A{self.n}"
        if self.kind == "sporadic":
            return self.family
        if self.kind == "tits":
            return "2F4(2)'"
        if self.family in ("PSL", "PSU", "PSp", "Omega"):
            return f"{self.family}{self.n}({self.q})"
        if self.family.startswith("POmega"):
            return f"POmega{self.family[-1]}{self.n}({self.q})"
        return f"{self.family}({self.q})"

    # -- constructors -------------------------------------------------------------

    @staticmethod
    def cyclic(p: int) -> "SimpleGroupDescriptor":
        if not is_prime(p):
            raise UnnormalizedDescriptor(f"{p} is not prime")
        return SimpleGroupDescriptor("cyclic", q=p)

    @staticmethod
    def alternating(m: int) -> "SimpleGroupDescriptor":
        if m < 5:
            raise UnnormalizedDescriptor(f"A{m} is not simple")
        return SimpleGroupDescriptor("alternating", n=m)

    @staticmethod
    def sporadic(name: str) -> "SimpleGroupDescriptor":
        if name in ("2F4(2)'", "Tits", "T"):
            return SimpleGroupDescriptor("tits")
        if name not in SPORADIC_ORDERS:
            raise UnknownSporadic(f"unknown sporadic group {name!r}")
        return SimpleGroupDescriptor("sporadic", family=name)

    @staticmethod
    def lie(family: str, n: int, q: int) -> "SimpleGroupDescriptor":
        """Canonicalized Lie-type descriptor; applies the aliasing conventions."""
        if family not in LIE_FAMILIES:
            raise UnnormalizedDescriptor(f"unknown family {family!r}")
        pp = prime_power_decomposition(q)
        if pp is None:
            raise UnnormalizedDescriptor(f"{q} is not a prime power")
        p, f = pp
        fam, m = family, n

        # low-dimensional redundancies collapse to the canonical family
        if fam == "PSU" and m == 2:
            fam = "PSL"
        if fam == "PSp" and m == 2:
            fam, m = "PSL", 2
        if fam == "Omega" and m == 3:
            fam, m = "PSL", 2
        if fam == "Omega" and m == 5:
            fam, m = "PSp", 4
        if fam == "POmega+" and m == 6:
            fam, m = "PSL", 4
        if fam == "POmega-" and m == 6:
            fam, m = "PSU", 4
        if fam == "POmega-" and m == 4:
            fam, m, q = "PSL", 2, q * q
            p, f = prime_power_decomposition(q)

        # simplicity checks on the remaining parameters
        if fam == "PSL":
            if m < 2 or (m == 2 and q < 4):
                raise UnnormalizedDescriptor(f"PSL{m}({q}) is not simple")
        elif fam == "PSU":
            if m < 3 or (m == 3 and q == 2):
                raise UnnormalizedDescriptor(f"PSU{m}({q}) is not simple")
        elif fam == "PSp":
            if m < 4 or m % 2 or (m == 4 and q == 2):
                raise UnnormalizedDescriptor(f"PSp{m}({q}) is not simple")
        elif fam == "Omega":
            if m < 7 or m % 2 == 0 or q % 2 == 0:
                raise UnnormalizedDescriptor(f"Omega{m}({q}) is not in canonical form")
        elif fam in ("POmega+", "POmega-"):
            if m < 8 or m % 2:
                raise UnnormalizedDescriptor(f"{fam}{m}({q}) is not in canonical form")
        elif fam == "G2" and q < 3:
            raise UnnormalizedDescriptor("G2(2) is not simple")
        elif fam == "2B2" and (p != 2 or f < 3 or f % 2 == 0):
            raise UnnormalizedDescriptor("2B2 needs q = 2^(2k+1) >= 8")
        elif fam == "2G2" and (p != 3 or f < 3 or f % 2 == 0):
            raise UnnormalizedDescriptor("2G2 needs q = 3^(2k+1) >= 27")
        elif fam == "2F4" and (p != 2 or f < 3 or f % 2 == 0):
            raise UnnormalizedDescriptor("2F4 needs q = 2^(2k+1) >= 8; use the Tits group for q = 2")

        # alternating aliases
        if fam == "PSL" and m == 2 and q in (4, 5):
            return SimpleGroupDescriptor.alternating(5)
        if fam == "PSL" and m == 2 and q == 9:
            return SimpleGroupDescriptor.alternating(6)
        if fam == "PSL" and m == 4 and q == 2:
            return SimpleGroupDescriptor.alternating(8)
        # named exceptional coincidences
        if fam == "PSL" and m == 3 and q == 2:
            fam, m, q = "PSL", 2, 7
        if fam == "PSp" and m == 4 and q == 3:
            fam, m, q = "PSU", 4, 2
        return SimpleGroupDescriptor("lie", family=fam, n=m, q=q)

    @staticmethod
    def parse(text: str) -> "SimpleGroupDescriptor":
        """Parse descriptor strings like C:7, A:12, L:PSL2:49, Sp:M11."""
        parts = [t.strip() for t in text.split(":")]
        tag = parts[0].upper()
        try:
            if tag == "C" and len(parts) == 2:
                return SimpleGroupDescriptor.cyclic(int(parts[1]))
            if tag == "A" and len(parts) == 2:
                return SimpleGroupDescriptor.alternating(int(parts[1]))
            if tag == "SP" and len(parts) == 2:
                return SimpleGroupDescriptor.sporadic(parts[1])
            if tag == "L" and len(parts) == 3:
                fam = parts[1]
                q = int(parts[2])
                head = fam.rstrip("0123456789")
                digits = fam[len(head):]
                n = int(digits) if digits else 0
                name_map = {
                    "PSL": "PSL", "PSU": "PSU", "PSP": "PSp", "PSp": "PSp",
                    "OMEGA": "Omega", "Omega": "Omega",
                    "POMEGA+": "POmega+", "POmega+": "POmega+",
                    "POMEGA-": "POmega-", "POmega-": "POmega-",
                    "G": "G2", "G2": "G2", "F": "F4", "F4": "F4",
                    "E": {6: "E6", 7: "E7", 8: "E8"}.get(n, "E6"),
                    "E6": "E6", "E7": "E7", "E8": "E8",
                    "2E": "2E6", "2E6": "2E6", "2B": "2B2", "2B2": "2B2",
                    "2G": "2G2", "2G2": "2G2", "2F": "2F4", "2F4": "2F4",
                    "3D": "3D4", "3D4": "3D4",
                }
                family = name_map.get(head) or name_map.get(fam)
                if family is None:
                    raise UnnormalizedDescriptor(f"unknown Lie family in {text!r}")
                return SimpleGroupDescriptor.lie(family, n, q)
        except ValueError as exc:
            raise UnnormalizedDescriptor(f"cannot parse {text!r}") from exc
        raise UnnormalizedDescriptor(f"cannot parse {text!r}")

    # -- derived data ----------------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        return self.kind == "cyclic"

    def order(self) -> int:
        return order_of_simple(self)

    def rank(self) -> int:
        """Untwisted Lie rank."""
        if self.kind != "lie":
            raise UnnormalizedDescriptor("rank applies to Lie-type groups only")
        fam, m = self.family, self.n
        if fam in ("PSL", "PSU"):
            return m - 1
        if fam == "PSp":
            return m // 2
        if fam == "Omega":
            return (m - 1) // 2
        if fam in ("POmega+", "POmega-"):
            return m // 2
        return {
            "G2": 2, "F4": 4, "E6": 6, "2E6": 6, "E7": 7, "E8": 8,
            "2B2": 2, "2G2": 2, "2F4": 4, "3D4": 4,
        }[fam]


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def order_of_simple(desc: SimpleGroupDescriptor) -> int:
    """Exact order from the standard formulas (or lookup for sporadics)."""
    if desc.kind == "cyclic":
        return desc.q
    if desc.kind == "alternating":
        return math.factorial(desc.n) // 2
    if desc.kind == "sporadic":
        return SPORADIC_ORDERS[desc.family]
    if desc.kind == "tits":
        return TITS_ORDER
    fam, n, q = desc.family, desc.n, desc.q
    if fam == "PSL":
        num = q ** (n * (n - 1) // 2) * _prod(q**i - 1 for i in range(2, n + 1))
        return num // math.gcd(n, q - 1)
    if fam == "PSU":
        num = q ** (n * (n - 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, n + 1))
        return num // math.gcd(n, q + 1)
    if fam == "PSp":
        m = n // 2
        num = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return num // math.gcd(2, q - 1)
    if fam == "Omega":
        m = (n - 1) // 2
        num = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return num // math.gcd(2, q - 1)
    if fam in ("POmega+", "POmega-"):
        m = n // 2
        eps = 1 if fam == "POmega+" else -1
        num = q ** (m * (m - 1)) * (q**m - eps) * _prod(
            q ** (2 * i) - 1 for i in range(1, m)
        )
        return num // math.gcd(4, q**m - eps)
    if fam == "G2":
        return q**6 * (q**6 - 1) * (q**2 - 1)
    if fam == "F4":
        return q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1)
    if fam == "E6":
        num = q**36 * _prod(q**i - 1 for i in (12, 9, 8, 6, 5, 2))
        return num // math.gcd(3, q - 1)
    if fam == "2E6":
        num = q**36 * (q**12 - 1) * (q**9 + 1) * (q**8 - 1) * (q**6 - 1) * (q**5 + 1) * (q**2 - 1)
        return num // math.gcd(3, q + 1)
    if fam == "E7":
        num = q**63 * _prod(q**i - 1 for i in (18, 14, 12, 10, 8, 6, 2))
        return num // math.gcd(2, q - 1)
    if fam == "E8":
        return q**120 * _prod(q**i - 1 for i in (30, 24, 20, 18, 14, 12, 8, 2))
    if fam == "2B2":
        return q**2 * (q**2 + 1) * (q - 1)
    if fam == "2G2":
        return q**3 * (q**3 + 1) * (q - 1)
    if fam == "2F4":
        return q**12 * (q**6 + 1) * (q**4 - 1) * (q**3 + 1) * (q - 1)
    if fam == "3D4":
        return q**12 * (q**8 + q**4 + 1) * (q**6 - 1) * (q**2 - 1)
    raise UnnormalizedDescriptor(f"no order formula for {desc}")


def out_metadata(desc: SimpleGroupDescriptor):
    """(|Out T|, profile) where profile is 'cyclic' or 'noncyclic-2x2'.

    The profile records whether every chief factor of the outer automorphism
    group is cyclic; the only exception among simple groups is plus-type
    rank-4 orthogonal over odd fields, whose outer group has a 2x2 factor.
    """
    if desc.kind == "cyclic":
        return desc.q - 1, "cyclic"
    if desc.kind == "alternating":
        return (4 if desc.n == 6 else 2), "cyclic"
    if desc.kind == "sporadic":
        return (2 if desc.family in SPORADIC_OUT_TWO else 1), "cyclic"
    if desc.kind == "tits":
        return 2, "cyclic"
    fam, n, q = desc.family, desc.n, desc.q
    p, f = prime_power_decomposition(q)
    if fam == "PSL":
        if n == 2:
            return math.gcd(2, q - 1) * f, "cyclic"
        return 2 * f * math.gcd(n, q - 1), "cyclic"
    if fam == "PSU":
        return 2 * f * math.gcd(n, q + 1), "cyclic"
    if fam == "PSp":
        if n == 4 and p == 2:
            return 2 * f, "cyclic"
        return math.gcd(2, q - 1) * f, "cyclic"
    if fam == "Omega":
        return math.gcd(2, q - 1) * f, "cyclic"
    if fam == "POmega+":
        m = n // 2
        if m == 4:
            if p == 2:
                return 6 * f, "cyclic"
            return 24 * f, "noncyclic-2x2"
        return math.gcd(4, q**m - 1) * 2 * f, "cyclic"
    if fam == "POmega-":
        m = n // 2
        return math.gcd(4, q**m + 1) * 2 * f, "cyclic"
    if fam == "G2":
        return (2 * f if p == 3 else f), "cyclic"
    if fam == "F4":
        return (2 * f if p == 2 else f), "cyclic"
    if fam == "E6":
        return 2 * f * math.gcd(3, q - 1), "cyclic"
    if fam == "2E6":
        return 2 * f * math.gcd(3, q + 1), "cyclic"
    if fam == "E7":
        return math.gcd(2, q - 1) * f, "cyclic"
    if fam == "E8":
        return f, "cyclic"
    if fam in ("2B2", "2G2", "2F4"):
        return f, "cyclic"
    if fam == "3D4":
        return 3 * f, "cyclic"
    raise OutsideTable(f"no outer-automorphism data for {desc}")


def alpha_star(desc: SimpleGroupDescriptor) -> RatInterval:
    """The family weight: p, m/4, q^(r/30), or 2."""
    if desc.kind == "cyclic":
        return RatInterval.exact(desc.q)
    if desc.kind == "alternating":
        return RatInterval.exact(Fraction(desc.n, 4))
    if desc.kind in ("sporadic", "tits"):
        return RatInterval.exact(2)
    base = RatInterval.exact(desc.q)
    return base.pow_rational(Fraction(desc.rank(), 30))


def alpha(desc: SimpleGroupDescriptor) -> RatInterval:
    """The refined weight, as a certified interval of width below 1e-9.

    For cyclic groups it equals the prime itself; otherwise the family weight
    is harmonically combined with a term that grows like |T|^(3/8).
    """
    star = alpha_star(desc)
    if desc.is_abelian:
        return star
    size = order_of_simple(desc)
    t38 = RatInterval.exact(size).pow_rational(Fraction(3, 8))
    half_t38 = t38 * Fraction(1, 2)
    inner = star.pow_rational(-2) + Fraction(61, 60) * half_t38.pow_rational(-2)
    return inner.pow_rational(Fraction(-1, 2))


def simple_order_table(limit: int = 10_000_000):
    """All canonical simple-group descriptors of order <= limit, keyed by order."""
    table: dict[int, list[SimpleGroupDescriptor]] = {}

    def note(desc):
        size = order_of_simple(desc)
        if size <= limit:
            bucket = table.setdefault(size, [])
            if all(str(d) != str(desc) for d in bucket):
                bucket.append(desc)
            return True
        return False

    m = 5
    while note(SimpleGroupDescriptor.alternating(m)):
        m += 1
    for name in SPORADIC_ORDERS:
        note(SimpleGroupDescriptor.sporadic(name))
    note(SimpleGroupDescriptor("tits"))

    def prime_powers():
        q = 2
        while True:
            if prime_power_decomposition(q):
                yield q
            q += 1

    for fam, dims in (
        ("PSL", (2, 3, 4, 5, 6)),
        ("PSU", (3, 4, 5)),
        ("PSp", (4, 6, 8)),
        ("Omega", (7,)),
        ("POmega+", (8,)),
        ("POmega-", (8,)),
        ("G2", (0,)),
        ("2B2", (0,)),
        ("2G2", (0,)),
        ("3D4", (0,)),
    ):
        for n in dims:
            for q in prime_powers():
                try:
                    desc = SimpleGroupDescriptor.lie(fam, n, q)
                except UnnormalizedDescriptor:
                    if q > 32:
                        break
                    continue
                if not note(desc):
                    break
    return table


_ORDER_TABLE = None


def lookup_simple_by_order(size: int):
    """Canonical descriptors of the given order, if within the table."""
    global _ORDER_TABLE
    if _ORDER_TABLE is None:
        _ORDER_TABLE = simple_order_table()
    return list(_ORDER_TABLE.get(size, []))


def verify_alpha_lower_bound(descriptors, floor=Fraction(101, 100)) -> dict:
    """Certify the uniform lower bound over an iterator of descriptors.

    Returns per-family minima with witnesses and the list of failures (which
    is expected to stay empty: the floor 1.01 holds across all families).
    """
    minima: dict[str, tuple[RatInterval, str]] = {}
    failures = []
    count = 0
    for desc in descriptors:
        count += 1
        val = alpha(desc)
        if val.width() > Fraction(1, 10**9):
            raise AssertionError("certified width exceeded the contract")
        kind = desc.kind if desc.kind != "tits" else "sporadic"
        if kind == "lie":
            kind = "lie"
        cur = minima.get(kind)
        if cur is None or val.lo < cur[0].lo:
            minima[kind] = (val, str(desc))
        if not val.at_least(floor):
            failures.append(str(desc))
    return {
        "count": count,
        "floor": floor,
        "minima": {k: (v[0], v[1]) for k, v in minima.items()},
        "failures": failures,
        "passed": not failures,
    }


# Smallest degrees of faithful projective representations in positive
# characteristic, for the simple groups small enough to appear in the desk
# corpus.  Values beyond this table are not computed by this package.
MIN_FAITHFUL_PROJECTIVE_DEGREE = {
    "A5": 2,
    "A6": 2,
    "A7": 3,
    "A8": 4,
    "A9": 7,
    "A10": 8,
    "PSL2(7)": 2,
    "PSL2(8)": 2,
    "PSL2(11)": 2,
    "PSL2(13)": 2,
    "PSL3(3)": 3,
    "PSL3(4)": 3,
    "PSU3(3)": 3,
    "PSU4(2)": 4,
    "M11": 5,
    "M12": 6,
}


def min_faithful_projective_degree(desc: SimpleGroupDescriptor) -> int:
    got = MIN_FAITHFUL_PROJECTIVE_DEGREE.get(str(desc))
    if got is None:
        raise OutsideTable(f"no projective-degree entry for {desc}")
    return got


def aut_order(desc: SimpleGroupDescriptor) -> int:
    if desc.kind == "cyclic":
        return desc.q - 1
    return order_of_simple(desc) * out_metadata(desc)[0]


def hull_order(desc: SimpleGroupDescriptor, n: int) -> int:
    """Order of the embedding hull of the n-th power of the group.

    An abelian power embeds its ambient as the affine extension of the
    automorphism group; a nonabelian power needs only the automorphisms
    (single-factor automorphisms wreathed by coordinate permutations).
    """
    if desc.kind == "cyclic":
        p = desc.q
        gl = 1
        for i in range(n):
            gl *= p**n - p**i
        return p**n * gl
    return aut_order(desc) ** n * math.factorial(n)


def alpha_growth_witness(target, families, max_power: int = 8):
    """A hull-order threshold forcing alpha(T)^n past the target, per family grid.

    Scans the supplied descriptors with powers up to max_power: among pairs
    whose alpha power stays below the target, the largest hull order is
    returned (plus one), so any pair with a hull at least that large clears
    the target.  Terminates because the grid is finite.
    """
    target = Fraction(target)
    worst = 0
    for desc in families:
        base = alpha(desc)
        for n in range(1, max_power + 1):
            powered = base.pow_rational(n)
            if powered.lo < target:
                worst = max(worst, hull_order(desc, n))
    return worst + 1
