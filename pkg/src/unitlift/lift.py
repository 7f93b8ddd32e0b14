"""Unit detection and inverse lifting along CNC chains.

The main entry point is :func:`lift_inverse`, which returns
``g (xg)^(S-1)`` where ``g`` inverts ``x`` modulo the top ideal of the
chain and ``S`` is the product of the chain characteristics.  Every result
is checked (``x * inverse == inverse * x == 1``) before it is returned.
"""

from dataclasses import dataclass, field
from math import comb

from .chain import CncChain, IdealDescriptor, default_chain, enumeration_cap, lifting_exponent, require_valid
from .crt import CrtBasis, crt_combine, crt_split
from .errors import (
    InternalError,
    NotAUnitError,
    PreconditionError,
    ResourceError,
    ShapeError,
    UnsupportedError,
)
from .modlinalg import gauss_jordan_inverse, solve_left_regular
from .ntheory import is_prime, is_squarefree, prime_power
from .rings import GaussianMod, MatrixRing, RingElement, ZMod, lift_from, power, reduce_to

DEFAULT_NILPOTENCY_BOUND = 64


@dataclass(frozen=True)
class UnitCertificate:
    x: RingElement
    inverse: RingElement
    g: RingElement
    exponent: int
    trace: tuple = ()
    product: RingElement = None
    power: RingElement = None
    method: str = "lift"
    components: tuple = field(default=())

    def verify(self) -> bool:
        one = self.x.ring.one
        return self.x * self.inverse == one and self.inverse * self.x == one

    def to_json(self) -> dict:
        out = {
            "x": self.x.payload,
            "inverse": self.inverse.payload,
            "g": self.g.payload,
            "exponent": self.exponent,
            "method": self.method,
            "trace": [
                {"ring": t.ring.to_json(), "residue": t.payload} for t in self.trace
            ],
        }
        if self.product is not None:
            out["xg"] = self.product.payload
        if self.power is not None:
            out["xg_power"] = self.power.payload
        if self.components:
            out["components"] = [
                dict(c.to_json(), ring=c.x.ring.to_json()) for c in self.components
            ]
        return out


def _check(x, inverse, what):
    one = x.ring.one
    if x * inverse != one or inverse * x != one:
        raise InternalError(f"{what} produced a non-inverse for {x!r}")


def _regular_inverse(x: RingElement, p: int) -> RingElement:
    """Invert in a ``Z_p``-algebra by solving ``L_x y = 1`` for the left
    multiplication map ``L_x`` written in the coordinate basis."""
    ring = x.ring
    columns = [ring.mul_coords(x.coords, b.coords) for b in ring.basis()]
    y = solve_left_regular(columns, ring.one.coords, p)
    if y is None:
        raise NotAUnitError(f"{x!r} is not a unit", failing_prime=p)
    inv = RingElement(ring, tuple(y))
    if inv * x != ring.one:
        raise InternalError("one-sided inverse in a finite ring")
    return inv


def _prime_inverse(x: RingElement) -> RingElement:
    ring = x.ring
    p = ring.modulus
    if isinstance(ring, ZMod):
        if x.coords[0] % p == 0:
            raise NotAUnitError(f"{x!r} is not a unit", failing_prime=p)
        return RingElement(ring, (pow(x.coords[0], -1, p),))
    if isinstance(ring, GaussianMod):
        a, b = x.coords
        norm = (a * a + b * b) % p
        if norm == 0:
            raise NotAUnitError(f"{x!r} has norm 0 mod {p}", failing_prime=p)
        ninv = pow(norm, -1, p)
        return RingElement(ring, (a * ninv % p, -b * ninv % p))
    if isinstance(ring, MatrixRing) and isinstance(ring.base, ZMod):
        n = ring.n
        rows = [list(x.coords[i * n:(i + 1) * n]) for i in range(n)]
        inv = gauss_jordan_inverse(rows, p)
        return RingElement(ring, tuple(v for row in inv for v in row))
    return _regular_inverse(x, p)


def quotient_inverse(xbar: RingElement) -> RingElement:
    """Inverse in a quotient ring; raises :class:`NotAUnitError`.

    Prime modulus: direct field / linear-algebra inversion.  Squarefree
    composite modulus: per-prime inversion glued by CRT.  Otherwise the
    ring's own default chain is used, so this recurses at most once.
    """
    ring = xbar.ring
    m = ring.modulus
    if is_prime(m):
        return _prime_inverse(xbar)
    if is_squarefree(m):
        basis = CrtBasis.of(m)
        parts = []
        for comp in crt_split(xbar, basis):
            try:
                parts.append(_prime_inverse(comp))
            except NotAUnitError as exc:
                raise NotAUnitError(str(exc), failing_prime=comp.ring.modulus) from None
        return crt_combine(parts, basis, ring)
    return invert(xbar).inverse


def quotient_lift(x: RingElement, chain: CncChain) -> RingElement:
    """A ``g`` in ``R`` with ``x g - 1`` in the top ideal.

    For scalar chains this inverts the residue in ``R/N_1`` and lifts it with
    all extra coordinates zero; otherwise ``R`` is searched exhaustively.
    """
    top = chain.top
    if top.scalar is not None:
        quot = top.quotient_ring()
        if quot == x.ring:
            return quotient_inverse(x)
        gbar = quotient_inverse(reduce_to(x, quot))
        return lift_from(gbar, x.ring)
    ring = x.ring
    if ring.order > enumeration_cap():
        raise UnsupportedError("non-scalar top ideal and ring too large to search")
    one = ring.one
    for g in ring.elements():
        if top.contains(x * g - one):
            return g
    raise NotAUnitError(f"{x!r} is not a unit modulo {top!r}")


def is_unit_via_quotient(x: RingElement, chain: CncChain) -> bool:
    if x.ring != chain.ring:
        raise ShapeError("element and chain live in different rings")
    try:
        quotient_lift(x, chain)
    except NotAUnitError:
        return False
    return True


def _residue(y: RingElement, ideal: IdealDescriptor) -> RingElement:
    if ideal.scalar is not None:
        return reduce_to(y, ideal.quotient_ring())
    return y


def lift_inverse(x: RingElement, g: RingElement, chain: CncChain) -> UnitCertificate:
    """``x^-1 = g (xg)^(S-1)`` with ``S = s_1 ... s_{k-1}``.

    The trace records ``(xg)^(s_1...s_i)`` in ``R/N_{i+1}``; each entry is 1
    there, and the last one is ``(xg)^S = 1`` in ``R`` itself.
    """
    if x.ring != chain.ring or g.ring != chain.ring:
        raise ShapeError("x, g and the chain must share one ring")
    require_valid(chain)
    one = x.ring.one
    xg = x * g
    if not chain.top.contains(xg - one):
        raise PreconditionError("g is not an inverse of x modulo the top ideal")
    S = lifting_exponent(chain)
    trace = []
    cur = xg
    for s_i, ideal in zip(chain.s, chain.ideals[1:]):
        cur = cur ** s_i
        if not ideal.contains(cur - one):
            raise InternalError(f"lifting stalled at {ideal!r}; the chain indices are wrong")
        trace.append(_residue(cur, ideal))
    pw, _ = power(xg, S - 1)
    inverse = g * pw
    _check(x, inverse, "lift_inverse")
    return UnitCertificate(x, inverse, g, S, tuple(trace), xg, pw, "lift")


def lift_inverse_commutative(x: RingElement, g: RingElement, chain: CncChain) -> RingElement:
    """``g^S x^(S-1)``; only for commutative rings."""
    if not x.ring.commutative:
        raise UnsupportedError(f"{x.ring!r} is not commutative")
    if x.ring != chain.ring or g.ring != chain.ring:
        raise ShapeError("x, g and the chain must share one ring")
    require_valid(chain)
    if not chain.top.contains(x * g - x.ring.one):
        raise PreconditionError("g is not an inverse of x modulo the top ideal")
    S = lifting_exponent(chain)
    inverse = (g ** S) * (x ** (S - 1))
    _check(x, inverse, "lift_inverse_commutative")
    return inverse


def binomial_inverse(x: RingElement, g: RingElement, ideal: IdealDescriptor,
                     bound: int = DEFAULT_NILPOTENCY_BOUND) -> RingElement:
    """Inverse from the binomial expansion of ``(xg - 1)^(2n+1) = 0``.

    ``2n+1`` is the smallest odd exponent killing ``xg - 1``, found by
    repeated multiplication up to ``bound``.
    """
    ring = x.ring
    one = ring.one
    xg = x * g
    e = xg - one
    if not ideal.contains(e):
        raise PreconditionError("xg - 1 is not in the given ideal")
    j, acc = 1, e
    while not acc.is_zero():
        j += 1
        if j > bound:
            raise PreconditionError(f"xg - 1 is not nilpotent within {bound} steps")
        acc = acc * e
    odd = j if j % 2 else j + 1
    n2 = odd - 1
    # sum_{i=0}^{2n} C(2n+1, i) (xg)^(2n-i) (-1)^i, Horner in xg
    total = ring.zero
    for i in range(n2 + 1):
        coeff = comb(odd, i) * (-1) ** i
        total = total * xg + ring.scalar(coeff)
    inverse = g * total
    _check(x, inverse, "binomial_inverse")
    return inverse


def power_reduction_witness(n_elt: RingElement, p: int, t: int) -> RingElement:
    """``r = sum_{i=1}^{t-1} (C(p,i)/p) n^(i-1)`` with ``(1+n)^p = 1 + p n r``."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if t < 1:
        raise PreconditionError("t must be >= 1")
    if p < t:
        raise PreconditionError(f"p = {p} is below the nilpotency index t = {t}")
    if not (n_elt ** t).is_zero():
        raise PreconditionError(f"n^{t} != 0")
    ring = n_elt.ring
    r = ring.zero
    npow = ring.one
    for i in range(1, t):
        r = r + npow * (comb(p, i) // p)
        npow = npow * n_elt
    one = ring.one
    if (one + n_elt) ** p != one + n_elt * r * p:
        raise InternalError("(1+n)^p != 1 + p n r")
    return r


def unit_class(residue: RingElement, chain: CncChain):
    """Certificates for every element of the coset ``f + N_1`` over a unit
    ``residue`` of ``R/N_1``, all sharing the same ``g``."""
    top = chain.top
    ring = chain.ring
    quot = top.quotient_ring()
    if residue.ring != quot:
        raise ShapeError(f"residue must live in {quot!r}")
    size = top.cardinality()
    if size > enumeration_cap():
        raise ResourceError(f"N_1 has {size} elements, cap is {enumeration_cap()}")
    gbar = quotient_inverse(residue)
    f = lift_from(residue, ring)
    g = lift_from(gbar, ring)
    m = ring.modulus
    xs = sorted(tuple((a + b) % m for a, b in zip(f.coords, n)) for n in top.members())
    for coords in xs:
        yield lift_inverse(RingElement(ring, coords), g, chain)


def invert(x: RingElement, chain: CncChain = None) -> UnitCertificate:
    """Invert ``x`` with certificate.

    With no chain, a ring over ``Z_M`` for composite non-prime-power ``M``
    is split by CRT and each prime-power component is lifted along its
    default chain; otherwise the default ``<rad M>`` chain is used.
    """
    ring = x.ring
    if chain is None:
        m = ring.modulus
        if prime_power(m) is None and not is_squarefree(m):
            return invert_crt(x)
        chain = default_chain(ring)
    g = quotient_lift(x, chain)
    return lift_inverse(x, g, chain)


def invert_crt(x: RingElement) -> UnitCertificate:
    ring = x.ring
    basis = CrtBasis.of(ring.modulus)
    comps = []
    for comp, (p, _) in zip(crt_split(x, basis), basis.factors):
        try:
            comps.append(invert(comp))
        except NotAUnitError:
            raise NotAUnitError(f"{x!r} is not a unit modulo {p}", failing_prime=p) from None
    inverse = crt_combine([c.inverse for c in comps], basis, ring)
    g = crt_combine([c.g for c in comps], basis, ring)
    _check(x, inverse, "invert_crt")
    return UnitCertificate(x, inverse, g, None, (), None, None, "crt", tuple(comps))

