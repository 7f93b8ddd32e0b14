"""Brute-force ground truth.

Nothing here uses the lifting theorems.  Inverses are found by trying every
candidate ``y``; the only shortcut is that ``x*y`` is linear in ``y``, so all
candidates are multiplied at once as one integer matrix product.
"""

from dataclasses import dataclass, field

import numpy as np

from .chain import CncChain, IdealDescriptor, default_chain, enumeration_cap
from .errors import ResourceError, ShapeError
from .rings import GaussianMod, Ring, RingElement

NOT_A_UNIT = None


@dataclass(frozen=True)
class EnumerableRing:
    ring: Ring
    cap: int = None
    _grid: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        cap = self.cap or enumeration_cap()
        object.__setattr__(self, "cap", cap)
        if self.ring.order > cap:
            raise ResourceError(f"{self.ring!r} has {self.ring.order} elements, cap is {cap}")

    def __len__(self):
        return self.ring.order

    def __iter__(self):
        return iter(self.ring.elements())

    @property
    def grid(self) -> np.ndarray:
        """All coordinate tuples, one per row, in canonical order."""
        if not self._grid:
            m, d = self.ring.modulus, self.ring.dim
            idx = np.arange(m ** d, dtype=np.int64)
            cols = [(idx // m ** (d - 1 - j)) % m for j in range(d)]
            self._grid.append(np.stack(cols, axis=1))
        return self._grid[0]

    def row_index(self, coords) -> int:
        m = self.ring.modulus
        out = 0
        for c in coords:
            out = out * m + c
        return out


def _as_enumerable(ring) -> EnumerableRing:
    return ring if isinstance(ring, EnumerableRing) else EnumerableRing(ring)


def _mult_matrices(x: RingElement):
    """Integer matrices ``L``, ``R`` with ``x*y = L y`` and ``y*x = R y``."""
    ring = x.ring
    basis = list(ring.basis())
    left = np.array([ring.mul_coords(x.coords, b.coords) for b in basis], dtype=np.int64).T
    right = np.array([ring.mul_coords(b.coords, x.coords) for b in basis], dtype=np.int64).T
    return left, right


def _inverse_rows(er: EnumerableRing, x: RingElement):
    left, right = _mult_matrices(x)
    grid = er.grid
    one = np.array(er.ring.one.coords, dtype=np.int64)
    m = er.ring.modulus
    hit_left = np.all((grid @ left.T) % m == one, axis=1)
    hit_right = np.all((grid @ right.T) % m == one, axis=1)
    return np.nonzero(hit_left & hit_right)[0]


def brute_inverse(x: RingElement, ring: EnumerableRing = None):
    """The unique two-sided inverse of ``x``, or ``NOT_A_UNIT``."""
    er = ring or EnumerableRing(x.ring)
    if er.ring != x.ring:
        raise ShapeError("element is not in the enumerated ring")
    rows = _inverse_rows(er, x)
    if len(rows) > 1:
        raise AssertionError(f"{x!r} has {len(rows)} distinct inverses")
    if len(rows) == 0:
        return NOT_A_UNIT
    return er.ring.from_coords(er.grid[rows[0]].tolist())


def enumerate_units(ring) -> list:
    """``[(unit, inverse), ...]`` sorted by unit."""
    er = _as_enumerable(ring)
    out = []
    for x in er:
        inv = brute_inverse(x, er)
        if inv is not NOT_A_UNIT:
            out.append((x, inv))
    return out


def count_units(ring) -> int:
    return len(enumerate_units(ring))


def _members(ideal: IdealDescriptor, cap: int) -> set:
    """Elements of ``<a>^e`` as coordinate tuples, from ``R a^e R``."""
    ring = ideal.ring
    if ring.order > cap:
        raise ResourceError(f"{ring!r} has {ring.order} elements, cap is {cap}")
    a = ideal.generator ** ideal.exponent
    elems = list(ring.elements())
    left = {(y * a).coords for y in elems}
    if ring.commutative:
        return left
    # two-sided: additive span of y a z
    return _additive_span({(y * a * z).coords for y in elems for z in ring.basis()}, ring)


def _additive_span(gens, ring) -> set:
    m = ring.modulus
    span = {(0,) * ring.dim}
    for g in sorted(gens):
        if g in span:
            continue
        new = set(span)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                t = tuple((a + b) % m for a, b in zip(s, g))
                if t not in new:
                    new.add(t)
                    nxt.append(t)
            frontier = nxt
        span = new
    return span


def _product_span(A: set, B: set, ring) -> set:
    """Additive span of ``{a b}``; bilinearity lets additive generators suffice."""
    ga = _generators(A, ring)
    gb = _generators(B, ring)
    return _additive_span({ring.mul_coords(a, b) for a in ga for b in gb}, ring)


def _generators(S: set, ring) -> list:
    gens, span = [], {(0,) * ring.dim}
    for s in sorted(S):
        if s not in span:
            gens.append(s)
            span = _additive_span(set(gens), ring)
    return gens


def infer_indices(N: IdealDescriptor, N_next: IdealDescriptor, cap: int = None) -> tuple:
    """Minimal ``t`` with ``N^t ⊆ N_next`` and minimal ``s >= 1`` with ``s N ⊆ N_next``."""
    cap = cap or enumeration_cap()
    ring = N.ring
    if N_next.ring != ring:
        raise ShapeError("ideals live in different rings")
    n_set = _members(N, cap)
    nxt = _members(N_next, cap)
    power, t = set(n_set), 1
    while not power <= nxt:
        t += 1
        if t > len(n_set) + 1:
            raise ValueError("N is not nilpotent modulo N_next")
        power = _product_span(power, n_set, ring)
    m = ring.modulus
    s = 1
    while not all(tuple(s * c % m for c in v) in nxt for v in n_set):
        s += 1
    return t, s


def _quotient_units(ring: Ring, ideal: IdealDescriptor) -> int:
    if ideal.is_zero():
        return count_units(ring)
    return count_units(ideal.quotient_ring())


def verify_cardinality(ring: Ring, chain: CncChain = None) -> dict:
    """Enumerated ``|R*|`` against ``|(R/N_1)*| |N_1|`` and the levelwise
    identities ``|(R/N_{i+1})*| = |(R/N_i)*| |N_i / N_{i+1}|``."""
    chain = chain or default_chain(ring)
    cap = enumeration_cap()
    units = count_units(ring)
    sizes = [len(_members(i, cap)) for i in chain.ideals]
    quot_units = [_quotient_units(ring, i) for i in chain.ideals]
    checks = [{
        "identity": "|R*| = |(R/N_1)*| |N_1|",
        "lhs": units,
        "rhs": quot_units[0] * sizes[0],
        "ok": units == quot_units[0] * sizes[0],
    }]
    for i in range(len(chain.ideals) - 1):
        lhs = quot_units[i + 1]
        rhs = quot_units[i] * (sizes[i] // sizes[i + 1])
        checks.append({
            "identity": f"|(R/N_{i + 2})*| = |(R/N_{i + 1})*| |N_{i + 1}/N_{i + 2}|",
            "lhs": lhs,
            "rhs": rhs,
            "ok": lhs == rhs and sizes[i] % sizes[i + 1] == 0,
        })
    return {
        "ring": ring.to_json(),
        "units": units,
        "ideal_sizes": sizes,
        "quotient_units": quot_units,
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
    }


def gaussian_unit_count_report(p: int, k: int) -> dict:
    """Decide between ``(p^2-1) p^k`` and ``(p^2-1) p^(2(k-1))`` for ``Z_{p^k}[i]``."""
    ring = GaussianMod(p, k)
    units = count_units(ring)
    claims = {
        "(p^2-1)p^k": (p * p - 1) * p ** k,
        "(p^2-1)p^(2(k-1))": (p * p - 1) * p ** (2 * (k - 1)),
    }
    return {
        "ring": ring.to_json(),
        "ring_size": ring.order,
        "units": units,
        "claims": {name: {"value": v, "matches": v == units} for name, v in claims.items()},
        "failing": sorted(name for name, v in claims.items() if v != units),
    }
