"""Principal power ideals and CNC chains.

An ideal here is ``<a>^e = a^e R`` for a central element ``a``.  When ``a``
is an integer multiple of the identity (every ideal the lifting theorems
use: ``p`` in ``Z_{p^k}``, ``p I`` in ``M_n(Z_{p^k})``, ``p * 1`` in a group
ring) the ideal is "scalar" and equals ``gcd(c^e, M) R`` coordinatewise,
which makes membership, containment and quotients structural.  Other
central generators are handled by enumeration only.
"""

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod

from .errors import ResourceError, UnsupportedError, ValidationError
from .ntheory import factorize, ideal_gcd
from .rings import Ring, RingElement, reduce_to

DEFAULT_CAP = 10 ** 5


def enumeration_cap() -> int:
    return int(os.environ.get("UNITLIFT_CAP", DEFAULT_CAP))


def span(generators, ring: Ring, cap: int = None) -> frozenset:
    """Additive subgroup of ``ring`` generated by ``generators`` (as coord tuples)."""
    cap = cap or enumeration_cap()
    m = ring.modulus
    zero = (0,) * ring.dim
    members = {zero}
    for g in generators:
        g = tuple(g)
        if g in members:
            continue
        # add multiples of g to every current member
        multiples = []
        cur = g
        while cur != zero:
            multiples.append(cur)
            cur = tuple((a + b) % m for a, b in zip(cur, g))
        new = set(members)
        for x in members:
            for mult in multiples:
                new.add(tuple((a + b) % m for a, b in zip(x, mult)))
                if len(new) > cap:
                    raise ResourceError(f"ideal has more than {cap} elements")
        members = new
    return frozenset(members)


@dataclass(frozen=True)
class IdealDescriptor:
    """``<generator>^exponent`` in ``ring``."""

    ring: Ring
    generator: RingElement
    exponent: int = 1
    _members: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.generator.ring != self.ring:
            raise ValidationError("ideal generator lives in a different ring")
        if self.exponent < 1:
            raise ValidationError("ideal exponent must be >= 1")

    @classmethod
    def principal(cls, ring: Ring, c: int, exponent: int = 1) -> "IdealDescriptor":
        return cls(ring, ring.scalar(c), exponent)

    @classmethod
    def zero(cls, ring: Ring) -> "IdealDescriptor":
        return cls(ring, ring.zero, 1)

    @property
    def scalar(self):
        """Integer ``c`` with ``generator == c * 1``, or ``None``."""
        one = self.ring.one.coords
        idx = next(i for i, v in enumerate(one) if v)
        c = self.generator.coords[idx]
        if self.ring.scalar(c) == self.generator:
            return c
        return None

    @property
    def modulus_gcd(self):
        """For scalar ideals: ``d`` with ``ideal = d R``, ``d | M``."""
        c = self.scalar
        if c is None:
            return None
        return ideal_gcd(c, self.exponent, self.ring.modulus)

    def power(self, t: int) -> "IdealDescriptor":
        """``(<a>^e)^t = <a>^(e t)`` (valid for central ``a``)."""
        return IdealDescriptor(self.ring, self.generator, self.exponent * t)

    def promote(self, ring: Ring, embed) -> "IdealDescriptor":
        """Image under ``embed`` of the generator in a matrix or group ring."""
        return IdealDescriptor(ring, embed(self.generator), self.exponent)

    def is_zero(self) -> bool:
        d = self.modulus_gcd
        if d is not None:
            return d == self.ring.modulus
        return (self.generator ** self.exponent).is_zero()

    def contains(self, x: RingElement) -> bool:
        d = self.modulus_gcd
        if d is not None:
            return all(c % d == 0 for c in x.coords)
        return x.coords in self.members()

    def members(self, cap: int = None) -> frozenset:
        """Every element of the ideal as coordinate tuples (enumeration)."""
        cap = cap or enumeration_cap()
        key = cap
        if key not in self._members:
            a = self.generator ** self.exponent
            d = self.modulus_gcd
            if d is not None:
                size = (self.ring.modulus // d) ** self.ring.dim
                if size > cap:
                    raise ResourceError(f"ideal has {size} elements, cap is {cap}")
            if not self.ring.commutative and self.scalar is None:
                gens = [(b * a * c).coords for b in self.ring.basis() for c in self.ring.basis()]
            else:
                gens = [(a * b).coords for b in self.ring.basis()]
            self._members[key] = span(gens, self.ring, cap)
        return self._members[key]

    def cardinality(self) -> int:
        d = self.modulus_gcd
        if d is not None:
            return (self.ring.modulus // d) ** self.ring.dim
        return len(self.members())

    def quotient_ring(self) -> Ring:
        d = self.modulus_gcd
        if d is None:
            raise UnsupportedError("quotient by a non-scalar ideal is not representable")
        if d == self.ring.modulus:
            return self.ring
        return self.ring.with_modulus(d)

    def to_json(self):
        return {"generator": self.generator.payload, "exponent": self.exponent}

    def __repr__(self):
        c = self.scalar
        g = c if c is not None else self.generator.payload
        return f"<{g}>^{self.exponent} in {self.ring!r}"


def residue_map(x: RingElement, ideal: IdealDescriptor) -> RingElement:
    """Image of ``x`` in ``R/N`` as an element of the quotient descriptor."""
    if x.ring != ideal.ring:
        raise ValidationError("element and ideal live in different rings")
    return reduce_to(x, ideal.quotient_ring())


@dataclass(frozen=True)
class CncChain:
    ideals: tuple
    t: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(self.ideals))
        object.__setattr__(self, "t", tuple(int(v) for v in self.t))
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        k = len(self.ideals)
        if k < 1:
            raise ValidationError("a chain needs at least the zero ideal")
        if len(self.t) != k - 1 or len(self.s) != k - 1:
            raise ValidationError(f"need {k - 1} nilpotency indices and characteristics")
        if any(v < 1 for v in self.s):
            raise ValidationError("characteristics must be >= 1")
        ring = self.ideals[0].ring
        if any(i.ring != ring for i in self.ideals):
            raise ValidationError("all ideals of a chain must live in one ring")

    @property
    def ring(self) -> Ring:
        return self.ideals[0].ring

    @property
    def length(self) -> int:
        return len(self.ideals)

    @property
    def exponent(self) -> int:
        return lifting_exponent(self)

    @property
    def top(self) -> IdealDescriptor:
        return self.ideals[0]

    def promote(self, ring: Ring, embed) -> "CncChain":
        """Structural promotion to ``M_n(R)`` or ``RG``; indices carry over unchanged."""
        return CncChain(tuple(i.promote(ring, embed) for i in self.ideals), self.t, self.s)

    def to_json(self):
        return {"ideals": [i.to_json() for i in self.ideals], "t": list(self.t), "s": list(self.s)}


def make_power_chain(a: RingElement, k: int, s: int) -> CncChain:
    """``{<a>, <a>^2, ..., <a>^k}`` with ``t_i = 2`` and ``s_i = s``."""
    ring = a.ring
    if k < 1:
        raise ValidationError("nilpotency index must be >= 1")
    if not (a ** k).is_zero():
        raise ValidationError(f"{a!r} is not nilpotent of index {k} (a^k != 0)")
    if k > 1 and (a ** (k - 1)).is_zero():
        raise ValidationError(f"{a!r} has nilpotency index below {k}")
    if s < 1:
        raise ValidationError("characteristic must be >= 1")
    top = IdealDescriptor(ring, a, 1)
    if k > 1 and not top.contains(ring.scalar(s)):
        raise ValidationError(f"{s} * 1 is not in <a>, so {s} is not the characteristic of R/<a>")
    ideals = tuple(IdealDescriptor(ring, a, e) for e in range(1, k + 1))
    return CncChain(ideals, (2,) * (k - 1), (s,) * (k - 1))


def lifting_exponent(chain: CncChain) -> int:
    """``S = s_1 s_2 ... s_{k-1}`` (empty product is 1)."""
    return prod(chain.s)


def default_chain(ring: Ring) -> CncChain:
    """The ``<rad M>``-power chain of a ring over ``Z_M``.

    For ``M = p^k`` this is the maximal-ideal chain ``{<p>, ..., <p>^k}``
    with ``s = p``; for squarefree ``M`` it degenerates to ``{0}``.
    """
    factors = factorize(ring.modulus)
    rad = prod(p for p, _ in factors)
    k = max(e for _, e in factors)
    if k == 1:
        return CncChain((IdealDescriptor.zero(ring),), (), ())
    return make_power_chain(ring.scalar(rad), k, rad)


@dataclass
class ValidationReport:
    chain: bool = True
    nilpotency: bool = True
    characteristic: bool = True
    method: str = "structural"
    messages: list = field(default_factory=list)
    enumerative: dict = None

    @property
    def ok(self) -> bool:
        return self.chain and self.nilpotency and self.characteristic

    def fail(self, condition: str, message: str):
        setattr(self, condition, False)
        self.messages.append(f"{condition}: {message}")

    def to_json(self):
        out = {
            "ok": self.ok,
            "chain": self.chain,
            "nilpotency": self.nilpotency,
            "characteristic": self.characteristic,
            "method": self.method,
            "messages": list(self.messages),
        }
        if self.enumerative is not None:
            out["enumerative"] = self.enumerative
        return out


def _prime_factor_rule(chain: CncChain, report: ValidationReport):
    for i, (t, s) in enumerate(zip(chain.t, chain.s), start=1):
        if t < 2:
            report.fail("nilpotency", f"t_{i} = {t} < 2")
        small = [p for p, _ in factorize(s) if p < t] if s > 1 else []
        if small:
            report.fail("characteristic", f"s_{i} = {s} has prime factors {small} below t_{i} = {t}")


def _structural(chain: CncChain, report: ValidationReport):
    ideals = chain.ideals
    ds = [i.modulus_gcd for i in ideals]
    M = chain.ring.modulus
    if ds[-1] != M:
        report.fail("chain", "last ideal is not zero")
    for i in range(len(ideals) - 1):
        here, nxt = ideals[i], ideals[i + 1]
        c, e = here.scalar, here.exponent
        # I subset J  iff  gcd_J divides gcd_I
        if ds[i + 1] % ds[i]:
            report.fail("chain", f"N_{i + 2} is not contained in N_{i + 1}")
        t, s = chain.t[i], chain.s[i]
        if ideal_gcd(c, e * t, M) % ds[i + 1]:
            report.fail("nilpotency", f"N_{i + 1}^{t} is not contained in N_{i + 2}")
        if gcd(s * ds[i], M) % ds[i + 1]:
            report.fail("characteristic", f"{s} N_{i + 1} is not contained in N_{i + 2}")


def _ideal_power_members(ideal: IdealDescriptor, t: int, cap: int) -> frozenset:
    """``N^t`` as the additive span of t-fold products, built from spanning sets."""
    ring = ideal.ring
    base = ideal.members(cap)
    gens_n = _spanning_subset(base, ring)
    current = base
    for _ in range(t - 1):
        gens_cur = _spanning_subset(current, ring)
        products = [ring.mul_coords(x, y) for x in gens_cur for y in gens_n]
        current = span(products, ring, cap)
    return current


def _spanning_subset(members, ring):
    """Greedy small generating set of an additive subgroup."""
    chosen, covered = [], frozenset({(0,) * ring.dim})
    for x in sorted(members):
        if x not in covered:
            chosen.append(x)
            covered = span(chosen, ring)
            if len(covered) == len(members):
                break
    return chosen


def _enumerative(chain: CncChain, cap: int) -> dict:
    ideals = chain.ideals
    sets = [i.members(cap) for i in ideals]
    ring = chain.ring
    m = ring.modulus
    out = {"chain": sets[-1] == frozenset({(0,) * ring.dim}), "nilpotency": True, "characteristic": True}
    for i in range(len(ideals) - 1):
        if not sets[i + 1] <= sets[i]:
            out["chain"] = False
        if not _ideal_power_members(ideals[i], chain.t[i], cap) <= sets[i + 1]:
            out["nilpotency"] = False
        s = chain.s[i]
        if any(tuple(s * v % m for v in x) not in sets[i + 1] for x in sets[i]):
            out["characteristic"] = False
    return out


def validate_cnc(chain: CncChain, cap: int = None, exhaustive: bool = None) -> ValidationReport:
    """Check the chain, nilpotency and characteristic conditions.

    Scalar chains are checked symbolically.  When the top ideal has at most
    ``cap`` elements the containments are also checked by exhaustive
    membership (``exhaustive=False`` skips this for scalar chains) and a
    failure on either route fails the condition.  Failures are reported,
    never raised.
    """
    cap = cap or enumeration_cap()
    report = ValidationReport()
    _prime_factor_rule(chain, report)
    scalar = all(i.scalar is not None for i in chain.ideals)
    if scalar:
        _structural(chain, report)
        if exhaustive is False:
            return report
    try:
        enumerable = chain.top.cardinality() <= cap
    except ResourceError:
        enumerable = False
    enum = None
    if enumerable:
        try:
            enum = _enumerative(chain, cap)
        except ResourceError:
            enum = None
    if enum is None:
        if not scalar:
            raise UnsupportedError("non-scalar chain too large to enumerate")
        return report
    report.enumerative = enum
    report.method = "structural+enumerative" if scalar else "enumerative"
    for cond, ok in enum.items():
        if not ok and getattr(report, cond):
            report.fail(cond, "exhaustive membership check failed")
    return report


@lru_cache(maxsize=256)
def require_valid(chain: CncChain) -> ValidationReport:
    """Raise :class:`ValidationError` unless the chain passes (structural when possible)."""
    report = validate_cnc(chain, exhaustive=False)
    if not report.ok:
        raise ValidationError("invalid CNC chain: " + "; ".join(report.messages))
    return report


def chain_from_json(obj, ring: Ring) -> CncChain:
    if not isinstance(obj, dict):
        raise ValidationError(f"bad chain descriptor {obj!r}")
    if "chain" in obj:
        obj = obj["chain"]

    def generator(g):
        # a bare integer means that multiple of the identity
        if isinstance(g, int) and not isinstance(g, bool):
            return ring.scalar(g)
        return ring.element(g)

    try:
        if "ideals" in obj:
            ideals = [
                IdealDescriptor(ring, generator(i["generator"]), int(i.get("exponent", 1)))
                for i in obj["ideals"]
            ]
            return CncChain(tuple(ideals), tuple(obj["t"]), tuple(obj["s"]))
        return make_power_chain(generator(obj["generator"]), int(obj["k"]), int(obj["s"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed chain descriptor: {exc}") from None

