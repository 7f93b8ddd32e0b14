"""Finite ring descriptors and exact element arithmetic.

Every supported ring is a free ``Z_M``-module of some rank ``dim`` with a
bilinear product, so an element is stored as a flat tuple of ``dim``
residues in ``[0, M)``.  Nested payloads (matrices of Gaussian integers,
group-ring coefficient vectors, ...) are flattened row-major, which makes
the lexicographic order on payloads the same as the order on tuples.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .errors import ShapeError, UnsupportedError, ValidationError
from .groups import FiniteGroup, group_from_json
from .ntheory import ideal_gcd, is_prime, prime_power

MAX_DEPTH = 2
MAX_GALOIS_DEGREE = 4


class Ring:
    """Common behaviour of the descriptor dataclasses below."""

    modulus: int
    dim: int
    depth = 0
    commutative = True

    # subclasses implement mul_coords, with_modulus, to_json, flatten, unflatten

    @property
    def order(self) -> int:
        return self.modulus ** self.dim

    def __len__(self):
        return self.order

    def element(self, payload) -> "RingElement":
        """Build an element from a (possibly nested) payload, normalising residues."""
        coords = self.flatten(payload)
        if len(coords) != self.dim:
            raise ShapeError(f"payload has {len(coords)} coordinates, {self!r} needs {self.dim}")
        m = self.modulus
        return RingElement(self, tuple(int(c) % m for c in coords))

    def from_coords(self, coords) -> "RingElement":
        m = self.modulus
        coords = tuple(int(c) % m for c in coords)
        if len(coords) != self.dim:
            raise ShapeError(f"expected {self.dim} coordinates, got {len(coords)}")
        return RingElement(self, coords)

    def __call__(self, payload):
        return self.element(payload)

    @cached_property
    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.dim)

    @cached_property
    def one(self) -> "RingElement":
        return RingElement(self, self.one_coords())

    def scalar(self, c: int) -> "RingElement":
        """The element ``c * 1``."""
        m = self.modulus
        return RingElement(self, tuple(v * c % m for v in self.one.coords))

    def basis(self):
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1 % self.modulus
            yield RingElement(self, tuple(v))

    def elements(self):
        """All elements in canonical (lexicographic payload) order."""
        for coords in itertools.product(range(self.modulus), repeat=self.dim):
            yield RingElement(self, coords)

    def quotient(self, c: int, e: int = 1) -> "Ring":
        """Descriptor of ``R / c^e R`` for an integer ``c``."""
        q = ideal_gcd(c, e, self.modulus)
        if q == 1:
            raise UnsupportedError(f"{c}^{e} generates the whole ring; the quotient is zero")
        return self.with_modulus(q)

    def is_field(self) -> bool:
        return False

    def residue_field_order(self):
        """Order of ``R/pR`` when that quotient is a field, else ``None``."""
        pp = prime_power(self.modulus)
        if pp is None:
            return None
        quot = self.with_modulus(pp[0])
        return quot.order if quot.is_field() else None


@dataclass(frozen=True, repr=False)
class ZMod(Ring):
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValidationError(f"Z_m needs m >= 2, got {self.m!r}")

    @property
    def modulus(self):
        return self.m

    dim = 1

    def one_coords(self):
        return (1,)

    def mul_coords(self, a, b):
        return (a[0] * b[0] % self.m,)

    def with_modulus(self, q):
        return ZMod(q)

    def is_field(self):
        return is_prime(self.m)

    def flatten(self, payload):
        if isinstance(payload, (list, tuple)):
            if len(payload) != 1:
                raise ShapeError(f"Z_{self.m} element must be a single integer")
            payload = payload[0]
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise ShapeError(f"Z_{self.m} element must be an integer, got {payload!r}")
        return (payload,)

    def unflatten(self, coords):
        return coords[0]

    def to_json(self):
        return {"type": "zmod", "m": self.m}

    def __repr__(self):
        return f"Z_{self.m}"


@dataclass(frozen=True, repr=False)
class GaussianMod(Ring):
    """``Z_{p^k}[i]`` with ``i^2 = -1`` and ``p`` an odd prime."""

    p: int
    k: int = 1

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValidationError(f"Gaussian rings need an odd prime p, got {self.p}")
        if self.k < 1:
            raise ValidationError("k must be >= 1")

    @property
    def modulus(self):
        return self.p ** self.k

    dim = 2

    def one_coords(self):
        return (1, 0)

    def mul_coords(self, x, y):
        m = self.modulus
        a, b = x
        c, d = y
        return ((a * c - b * d) % m, (a * d + b * c) % m)

    def with_modulus(self, q):
        pp = prime_power(q)
        if pp is None or pp[0] != self.p:
            raise UnsupportedError(f"Z_{q}[i] is not a quotient of {self!r}")
        return GaussianMod(self.p, pp[1])

    def is_field(self):
        return self.k == 1 and self.p % 4 == 3

    def flatten(self, payload):
        if isinstance(payload, int) and not isinstance(payload, bool):
            return (payload, 0)
        if not isinstance(payload, (list, tuple)) or len(payload) != 2:
            raise ShapeError("Gaussian element must be a pair [a, b]")
        return tuple(_int(v) for v in payload)

    def unflatten(self, coords):
        return list(coords)

    def to_json(self):
        return {"type": "gaussian", "p": self.p, "k": self.k}

    def __repr__(self):
        return f"Z_{self.modulus}[i]"


def _poly_irreducible_mod_p(q, p):
    """Exhaustive search for a monic factor of degree 1..deg/2 modulo ``p``."""
    r = len(q) - 1
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = [c % p for c in q]
            for shift in range(r - d, -1, -1):
                lead = rem[shift + d]
                if lead:
                    for j in range(d + 1):
                        rem[shift + j] = (rem[shift + j] - lead * div[j]) % p
            if not any(rem):
                return False
    return True


@dataclass(frozen=True, repr=False)
class GaloisRing(Ring):
    """``Z_{p^k}[x] / (q(x))`` with ``q`` monic and irreducible mod ``p``.

    ``q`` is the coefficient list in ascending degree, leading 1 included.
    """

    p: int
    k: int
    q: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"p must be prime, got {self.p}")
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        q = tuple(int(c) % self.modulus for c in self.q)
        object.__setattr__(self, "q", q)
        r = len(q) - 1
        if r < 1 or q[-1] != 1:
            raise ValidationError("q must be monic of degree >= 1")
        if r > MAX_GALOIS_DEGREE:
            raise ValidationError(f"irreducibility check supports degree <= {MAX_GALOIS_DEGREE}")
        if not _poly_irreducible_mod_p(q, self.p):
            raise ValidationError(f"q = {list(q)} is reducible modulo {self.p}")

    @property
    def modulus(self):
        return self.p ** self.k

    @property
    def dim(self):
        return len(self.q) - 1

    @property
    def degree(self):
        return len(self.q) - 1

    def one_coords(self):
        return (1,) + (0,) * (self.dim - 1)

    @cached_property
    def _reductions(self):
        # x^j for r <= j <= 2r-2 expressed in the basis 1, x, ..., x^(r-1)
        r, m = self.dim, self.modulus
        if r == 1:
            return []
        cur = [(-c) % m for c in self.q[:-1]]
        out = [tuple(cur)]
        for _ in range(r - 2):
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(cur[i] + top * (-self.q[i])) % m for i in range(r)]
            out.append(tuple(cur))
        return out

    def mul_coords(self, a, b):
        r, m = self.dim, self.modulus
        prod = [0] * (2 * r - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        res = prod[:r]
        for j, red in enumerate(self._reductions):
            c = prod[r + j]
            if c:
                for i in range(r):
                    res[i] += c * red[i]
        return tuple(v % m for v in res)

    def with_modulus(self, q):
        pp = prime_power(q)
        if pp is None or pp[0] != self.p:
            raise UnsupportedError(f"modulus {q} is not a power of {self.p}")
        return GaloisRing(self.p, pp[1], self.q)

    def is_field(self):
        return self.k == 1

    def flatten(self, payload):
        if isinstance(payload, int) and not isinstance(payload, bool):
            return (payload,) + (0,) * (self.dim - 1)
        if not isinstance(payload, (list, tuple)) or len(payload) != self.dim:
            raise ShapeError(f"Galois ring element must be {self.dim} coefficients")
        return tuple(_int(v) for v in payload)

    def unflatten(self, coords):
        return list(coords)

    def to_json(self):
        return {"type": "galois", "p": self.p, "k": self.k, "q": list(self.q)}

    def __repr__(self):
        return f"GR({self.modulus},{self.dim})[q={list(self.q)}]"


@dataclass(frozen=True, repr=False)
class MatrixRing(Ring):
    n: int
    base: Ring

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("matrix size must be >= 1")
        if not isinstance(self.base, Ring):
            raise ValidationError("matrix base must be a ring descriptor")
        if self.depth > MAX_DEPTH:
            raise ValidationError(f"descriptor nesting deeper than {MAX_DEPTH}")

    @property
    def modulus(self):
        return self.base.modulus

    @property
    def dim(self):
        return self.n * self.n * self.base.dim

    @property
    def depth(self):
        return 1 + self.base.depth

    @property
    def commutative(self):
        return self.n == 1 and self.base.commutative

    def one_coords(self):
        n, bd = self.n, self.base.dim
        zero = (0,) * bd
        one = self.base.one.coords
        out = []
        for i in range(n):
            for j in range(n):
                out.extend(one if i == j else zero)
        return tuple(out)

    def entry(self, coords, i, j):
        bd = self.base.dim
        start = (i * self.n + j) * bd
        return coords[start:start + bd]

    def mul_coords(self, a, b):
        n, base = self.n, self.base
        if isinstance(base, ZMod):
            return tuple(kernels.matmul_mod(a, b, n, base.m))
        bd, m = base.dim, base.modulus
        blocks_a = [a[i * bd:(i + 1) * bd] for i in range(n * n)]
        blocks_b = [b[i * bd:(i + 1) * bd] for i in range(n * n)]
        out = []
        for i in range(n):
            for j in range(n):
                acc = [0] * bd
                for k in range(n):
                    prod = base.mul_coords(blocks_a[i * n + k], blocks_b[k * n + j])
                    for t in range(bd):
                        acc[t] += prod[t]
                out.extend(v % m for v in acc)
        return tuple(out)

    def with_modulus(self, q):
        return MatrixRing(self.n, self.base.with_modulus(q))

    def flatten(self, payload):
        n = self.n
        if not isinstance(payload, (list, tuple)) or len(payload) != n:
            raise ShapeError(f"matrix payload must have {n} rows")
        out = []
        for row in payload:
            if not isinstance(row, (list, tuple)) or len(row) != n:
                raise ShapeError(f"matrix rows must have {n} entries")
            for entry in row:
                out.extend(self.base.flatten(entry))
        return tuple(out)

    def unflatten(self, coords):
        n, bd = self.n, self.base.dim
        return [
            [self.base.unflatten(coords[(i * n + j) * bd:(i * n + j + 1) * bd]) for j in range(n)]
            for i in range(n)
        ]

    def to_json(self):
        return {"type": "matrix", "n": self.n, "base": self.base.to_json()}

    def __repr__(self):
        return f"M_{self.n}({self.base!r})"


@dataclass(frozen=True, repr=False)
class GroupRing(Ring):
    group: FiniteGroup
    base: Ring

    def __post_init__(self):
        if not isinstance(self.group, FiniteGroup):
            raise ValidationError("group ring needs a FiniteGroup")
        if not isinstance(self.base, Ring):
            raise ValidationError("group ring base must be a ring descriptor")
        if self.depth > MAX_DEPTH:
            raise ValidationError(f"descriptor nesting deeper than {MAX_DEPTH}")

    @property
    def modulus(self):
        return self.base.modulus

    @property
    def dim(self):
        return self.group.order * self.base.dim

    @property
    def depth(self):
        return 1 + self.base.depth

    @property
    def commutative(self):
        return self.group.is_abelian and self.base.commutative

    def one_coords(self):
        return self.base.one.coords + (0,) * (self.dim - self.base.dim)

    def coefficient(self, coords, g):
        bd = self.base.dim
        return coords[g * bd:(g + 1) * bd]

    def mul_coords(self, x, y):
        order, base = self.group.order, self.base
        if isinstance(base, ZMod):
            return tuple(kernels.convolve_mod(x, y, self.group.flat_table, order, base.m))
        bd, m, table = base.dim, base.modulus, self.group.table
        zero = (0,) * bd
        xs = [x[g * bd:(g + 1) * bd] for g in range(order)]
        ys = [y[g * bd:(g + 1) * bd] for g in range(order)]
        acc = [[0] * bd for _ in range(order)]
        for g1 in range(order):
            if xs[g1] == zero:
                continue
            row = table[g1]
            for g2 in range(order):
                if ys[g2] == zero:
                    continue
                prod = base.mul_coords(xs[g1], ys[g2])
                tgt = acc[row[g2]]
                for t in range(bd):
                    tgt[t] += prod[t]
        return tuple(v % m for block in acc for v in block)

    def with_modulus(self, q):
        return GroupRing(self.group, self.base.with_modulus(q))

    def flatten(self, payload):
        if not isinstance(payload, (list, tuple)) or len(payload) != self.group.order:
            raise ShapeError(f"group-ring payload must have {self.group.order} coefficients")
        out = []
        for c in payload:
            out.extend(self.base.flatten(c))
        return tuple(out)

    def unflatten(self, coords):
        bd = self.base.dim
        return [self.base.unflatten(coords[g * bd:(g + 1) * bd]) for g in range(self.group.order)]

    def embed(self, base_elem: "RingElement", g: int = 0) -> "RingElement":
        """``b * g`` as a group-ring element."""
        if base_elem.ring != self.base:
            raise ShapeError("coefficient lives in the wrong ring")
        bd = self.base.dim
        coords = [0] * self.dim
        coords[g * bd:(g + 1) * bd] = base_elem.coords
        return RingElement(self, tuple(coords))

    def to_json(self):
        return {"type": "group_ring", "group": self.group.to_json(), "base": self.base.to_json()}

    def __repr__(self):
        return f"({self.base!r}){self.group!r}"


def _int(v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ShapeError(f"expected an integer, got {v!r}")
    return v


class RingElement:
    """An element of a described ring; immutable and hashable."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: Ring, coords: tuple):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ShapeError(f"descriptor mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.ring.modulus
        return RingElement(self.ring, tuple((a + b) % m for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.ring.modulus
        return RingElement(self.ring, tuple((a - b) % m for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        m = self.ring.modulus
        return RingElement(self.ring, tuple(-a % m for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            m = self.ring.modulus
            return RingElement(self.ring, tuple(a * other % m for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring.mul_coords(self.coords, other.coords))

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, e):
        return power(self, e)[0]

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.coords == other.coords
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coords == self.ring.scalar(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def is_zero(self):
        return not any(self.coords)

    @property
    def payload(self):
        return self.ring.unflatten(self.coords)

    def __repr__(self):
        return f"{self.ring!r}<{self.payload}>"


def power(x: RingElement, e: int):
    """``x**e`` by square and multiply; returns ``(value, multiplications)``."""
    if e < 0:
        raise ValueError("negative exponent")
    ring = x.ring
    if isinstance(ring, MatrixRing) and isinstance(ring.base, ZMod):
        coords, used = kernels.matpow_mod(x.coords, e, ring.n, ring.base.m)
        return RingElement(ring, tuple(coords)), used
    if e == 0:
        return ring.one, 0
    result, used = x, 0
    for bit in bin(e)[3:]:
        result = RingElement(ring, ring.mul_coords(result.coords, result.coords))
        used += 1
        if bit == "1":
            result = RingElement(ring, ring.mul_coords(result.coords, x.coords))
            used += 1
    return result, used


def element_arithmetic(a: RingElement, b: RingElement, op: str) -> RingElement:
    if a.ring != b.ring:
        raise ShapeError(f"descriptor mismatch: {a.ring!r} vs {b.ring!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def reduce_to(x: RingElement, ring: Ring) -> RingElement:
    """Coordinatewise reduction into ``ring``, which must share ``x``'s shape
    with a modulus dividing ``x.ring.modulus``."""
    if ring.dim != x.ring.dim or x.ring.modulus % ring.modulus:
        raise ShapeError(f"{ring!r} is not a coordinate quotient of {x.ring!r}")
    q = ring.modulus
    return RingElement(ring, tuple(c % q for c in x.coords))


def lift_from(xbar: RingElement, ring: Ring) -> RingElement:
    """Canonical preimage: residues reused verbatim as coordinates of ``ring``."""
    if ring.dim != xbar.ring.dim or ring.modulus % xbar.ring.modulus:
        raise ShapeError(f"{xbar.ring!r} is not a coordinate quotient of {ring!r}")
    return RingElement(ring, xbar.coords)


def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValidationError(f"bad ring descriptor {obj!r}")
    kind = obj["type"]
    try:
        if kind == "zmod":
            return ZMod(_int(obj["m"]))
        if kind == "gaussian":
            return GaussianMod(_int(obj["p"]), _int(obj.get("k", 1)))
        if kind == "galois":
            return GaloisRing(_int(obj["p"]), _int(obj["k"]), tuple(obj["q"]))
        if kind == "matrix":
            return MatrixRing(_int(obj["n"]), ring_from_json(obj["base"]))
        if kind == "group_ring":
            return GroupRing(group_from_json(obj["group"]), ring_from_json(obj["base"]))
    except KeyError as exc:
        raise ValidationError(f"ring descriptor {kind!r} is missing {exc}") from None
    except ShapeError as exc:
        raise ValidationError(str(exc)) from None
    raise ValidationError(f"unknown ring type {kind!r}")
