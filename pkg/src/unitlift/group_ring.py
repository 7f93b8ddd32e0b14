"""Units of group rings ``R[G]``.

Lifting runs along the promoted chain ``{N G, N^2 G, ...}``, whose
nilpotency indices and characteristics are those of ``{N, N^2, ...}``.
For ``Z_m G`` with ``G`` abelian there are two CRT-style constructions:
one per prime power, and one through ``Z_P`` for ``P = rad(m)``.
"""

from math import prod

from .chain import CncChain, IdealDescriptor, default_chain, enumeration_cap, make_power_chain
from .counting import count_units
from .crt import CrtBasis, crt_split
from .errors import InternalError, NotAUnitError, PreconditionError, ResourceError, ShapeError
from .lift import UnitCertificate, lift_inverse, lift_inverse_commutative, quotient_inverse, unit_class
from .ntheory import factorize
from .rings import GaloisRing, GaussianMod, GroupRing, Ring, RingElement, ZMod


def _require_group_ring(x):
    if not isinstance(x.ring, GroupRing):
        raise ShapeError(f"{x.ring!r} is not a group ring")
    return x.ring


def group_ring_mul(x: RingElement, y: RingElement) -> RingElement:
    """``(xy)_h = sum_{g1 g2 = h} x_g1 y_g2``."""
    ring = _require_group_ring(x)
    if y.ring != ring:
        raise ShapeError("operands live in different group rings")
    return x * y


def promoted_chain(ring: GroupRing, N: IdealDescriptor, k: int, s: int) -> CncChain:
    """``{NG, N^2 G, ..., N^k G}`` from ``N = <a>`` in the base ring."""
    if N.ring != ring.base:
        raise ShapeError("N must be an ideal of the coefficient ring")
    a = N.generator ** N.exponent
    base_chain = make_power_chain(a, k, s)
    return base_chain.promote(ring, ring.embed)


def lift_inverse_group_ring(x: RingElement, g: RingElement, N: IdealDescriptor,
                            k: int, s: int) -> UnitCertificate:
    """``x^-1 = g (xg)^(s^(k-1) - 1)`` in ``RG``."""
    ring = _require_group_ring(x)
    return lift_inverse(x, g, promoted_chain(ring, N, k, s))


def _maximal_ideal(base: Ring):
    """``(p, k)`` for a chain ring over ``Z_{p^k}`` whose maximal ideal is ``<p>``."""
    factors = factorize(base.modulus)
    if len(factors) != 1:
        raise PreconditionError(f"{base!r} is not local")
    p, k = factors[0]
    if isinstance(base, (ZMod, GaloisRing)):
        return p, k
    if isinstance(base, GaussianMod) and p % 4 == 3:
        return p, k
    raise PreconditionError(f"{base!r} is not a chain ring with maximal ideal <p>")


def chain_ring_units(base: Ring, group) -> "ChainRingUnits":
    """Units of ``RG`` for a chain ring ``R`` and abelian ``G``.

    Every unit of the residue group ring ``FG`` is lifted as the coset
    ``f + <a>G``, each element certified through ``g^r f^(r-1)`` with
    ``r = p^(k-1)``.
    """
    return ChainRingUnits(base, group)


class ChainRingUnits:
    def __init__(self, base: Ring, group):
        if not group.is_abelian:
            raise PreconditionError("chain-ring unit description needs an abelian group")
        self.p, self.k = _maximal_ideal(base)
        self.ring = GroupRing(group, base)
        self.residue_ring = GroupRing(group, base.with_modulus(self.p))
        cap = enumeration_cap()
        if self.residue_ring.order > cap:
            raise ResourceError(f"(FG) has {self.residue_ring.order} elements, cap is {cap}")
        self.chain = default_chain(self.ring)
        self.lifting_exponent = self.p ** (self.k - 1)

    def residue_units(self):
        """``(f_bar, g_bar)`` for every unit of ``FG`` in canonical order."""
        out = []
        for fbar in self.residue_ring.elements():
            try:
                out.append((fbar, quotient_inverse(fbar)))
            except NotAUnitError:
                continue
        return out

    @property
    def ideal_size(self) -> int:
        """``|<a>|^|G|``."""
        return self.p ** ((self.k - 1) * self.ring.dim)

    def count(self) -> int:
        """``|(RG)*| = |(FG)*| |<a>|^|G|``."""
        return len(self.residue_units()) * self.ideal_size

    def __iter__(self):
        r = self.lifting_exponent
        for fbar, _ in self.residue_units():
            for cert in unit_class(fbar, self.chain):
                alt = (cert.g ** r) * (cert.x ** (r - 1))
                if alt != cert.inverse:
                    raise InternalError("g^r f^(r-1) disagrees with the lifted inverse")
                yield cert


def _component_data(f_components, g_components, primes):
    if len(f_components) != len(primes) or len(g_components) != len(primes):
        raise ShapeError(f"need one component per prime {primes}")
    group = None
    for i, (f, g, p) in enumerate(zip(f_components, g_components, primes)):
        ring = _require_group_ring(f)
        if g.ring != ring or ring.modulus != p or not isinstance(ring.base, ZMod):
            raise ShapeError(f"component {i} must live in Z_{p} G")
        group = group or ring.group
        if ring.group != group:
            raise ShapeError("components use different groups")
        if f * g != ring.one:
            raise NotAUnitError(f"component {i}: g is not an inverse of f modulo {p}",
                                failing_prime=p)
    if not group.is_abelian:
        raise PreconditionError("Z_m G constructions need an abelian group")
    return group


def invert_zmg_crt(f_components, g_components, basis: CrtBasis) -> UnitCertificate:
    """``f = sum s_i m_i f_i`` and ``f^-1 = sum s_i m_i g_i^a_i f_i^(a_i - 1)``,
    ``a_i = p_i^(r_i - 1)``, from units ``f_i`` of ``Z_{p_i} G``."""
    primes = [p for p, _ in basis.factors]
    group = _component_data(f_components, g_components, primes)
    ring = GroupRing(group, ZMod(basis.m))
    m = basis.m
    f_coords = [0] * ring.dim
    inv_coords = [0] * ring.dim
    g_coords = [0] * ring.dim
    comps = []
    for (p, r), e, fi, gi in zip(basis.factors, basis.idempotents, f_components, g_components):
        local = GroupRing(group, ZMod(p ** r))
        f_loc = local.from_coords(fi.coords)
        g_loc = local.from_coords(gi.coords)
        alpha = p ** (r - 1)
        inv_loc = (g_loc ** alpha) * (f_loc ** (alpha - 1))
        if f_loc * inv_loc != local.one:
            raise InternalError(f"component lift failed modulo {p}^{r}")
        comps.append(UnitCertificate(f_loc, inv_loc, g_loc, alpha, method="commutative"))
        for j in range(ring.dim):
            f_coords[j] += e * fi.coords[j]
            inv_coords[j] += e * inv_loc.coords[j]
            g_coords[j] += e * gi.coords[j]
    f = ring.from_coords(v % m for v in f_coords)
    inverse = ring.from_coords(v % m for v in inv_coords)
    g = ring.from_coords(v % m for v in g_coords)
    if f * inverse != ring.one:
        raise InternalError("CRT assembly did not produce an inverse")
    return UnitCertificate(f, inverse, g, None, method="crt", components=tuple(comps))


def radical_coefficients(m: int):
    """``(P, k, [(p_i, t_i c_i)])`` with ``P = rad(m)``, ``k`` the top exponent,
    ``c_i = P / p_i`` and ``t_i c_i = 1 mod p_i``."""
    factors = factorize(m)
    P = prod(p for p, _ in factors)
    k = max(e for _, e in factors)
    coeffs = []
    for p, _ in factors:
        c = P // p
        coeffs.append((p, pow(c, -1, p) * c))
    return P, k, coeffs


def invert_zmg_radical(f_components, g_components, m: int, x: RingElement = None) -> UnitCertificate:
    """``f = sum t_i c_i f_i``, ``w = sum t_i c_i g_i`` and
    ``f^-1 = w^(P^(k-1)) f^(P^(k-1) - 1)``.

    ``f_i`` are taken as integer coefficient vectors in ``[0, p_i)``, so ``f``
    is the literal sum reduced mod ``m``.  Passing ``x`` inverts that element
    instead; it must agree with ``f`` modulo ``P``.
    """
    P, k, coeffs = radical_coefficients(m)
    primes = [p for p, _ in coeffs]
    group = _component_data(f_components, g_components, primes)
    ring = GroupRing(group, ZMod(m))
    f_sum = [0] * ring.dim
    w_sum = [0] * ring.dim
    for (_, tc), fi, gi in zip(coeffs, f_components, g_components):
        for j in range(ring.dim):
            f_sum[j] += tc * fi.coords[j]
            w_sum[j] += tc * gi.coords[j]
    f = ring.from_coords(f_sum)
    w = ring.from_coords(w_sum)
    if x is not None:
        if x.ring != ring:
            raise ShapeError(f"x must live in {ring!r}")
        if any((a - b) % P for a, b in zip(x.coords, f.coords)):
            raise PreconditionError(f"x does not reduce to the assembled f modulo {P}")
        f = x
    if k == 1:
        chain = CncChain((IdealDescriptor.zero(ring),), (), ())
    else:
        chain = make_power_chain(ring.scalar(P), k, P)
    cert = lift_inverse(f, w, chain)
    if lift_inverse_commutative(f, w, chain) != cert.inverse:
        raise InternalError("commutative form disagrees with the lifted inverse")
    return UnitCertificate(f, cert.inverse, w, cert.exponent, cert.trace, cert.product,
                           cert.power, "radical")


def decompose_zmg(f: RingElement, basis: CrtBasis = None):
    """Residue components ``f mod p_i`` and their inverses for a unit of ``Z_m G``."""
    ring = _require_group_ring(f)
    if not isinstance(ring.base, ZMod):
        raise ShapeError("decomposition needs a Z_m coefficient ring")
    basis = basis or CrtBasis.of(ring.modulus)
    fs, gs = [], []
    for comp, (p, _) in zip(crt_split(f, basis), basis.factors):
        fbar = GroupRing(ring.group, ZMod(p)).from_coords(comp.coords)
        try:
            gs.append(quotient_inverse(fbar))
        except NotAUnitError:
            raise NotAUnitError(f"{f!r} is not a unit modulo {p}", failing_prime=p) from None
        fs.append(fbar)
    return fs, gs, basis


def invert_zmg(f: RingElement) -> UnitCertificate:
    """Invert a unit of ``Z_m G`` through its residue components."""
    fs, gs, basis = decompose_zmg(f)
    return invert_zmg_radical(fs, gs, basis.m, x=f)


def zmg_unit_count(m: int, group) -> int:
    """``(m / P)^|G| prod |(Z_{p_i} G)*|``."""
    P, _, coeffs = radical_coefficients(m)
    out = (m // P) ** group.order
    for p, _ in coeffs:
        out *= count_units(GroupRing(group, ZMod(p)))[0]
    return out


def count_group_ring_units(ring: GroupRing, chain: CncChain = None) -> int:
    """``|(RG)*| = |N_1|^|G| |((R/N_1)G)*|`` with ``N_1`` from a chain of ``R``."""
    if not isinstance(ring, GroupRing):
        raise ShapeError(f"{ring!r} is not a group ring")
    chain = chain or default_chain(ring.base)
    if chain.ring != ring.base:
        raise ShapeError("chain must be a chain of the coefficient ring")
    top = chain.top
    if top.is_zero():
        quot = ring
        n1 = 1
    else:
        quot = GroupRing(ring.group, top.quotient_ring())
        n1 = top.cardinality()
    cap = enumeration_cap()
    if quot.order > cap:
        raise ResourceError(f"(R/N_1)G has {quot.order} elements, cap is {cap}")
    units = 0
    for xbar in quot.elements():
        try:
            quotient_inverse(xbar)
        except NotAUnitError:
            continue
        units += 1
    return n1 ** ring.group.order * units


__all__ = [
    "ChainRingUnits",
    "chain_ring_units",
    "count_group_ring_units",
    "decompose_zmg",
    "group_ring_mul",
    "invert_zmg",
    "invert_zmg_crt",
    "invert_zmg_radical",
    "lift_inverse_group_ring",
    "promoted_chain",
    "radical_coefficients",
    "zmg_unit_count",
]
