"""Chinese-remainder decomposition of rings over ``Z_m``.

Every descriptor in :mod:`unitlift.rings` is a ``Z_m``-algebra with integer
structure constants, so reducing coordinates modulo each prime-power
factor is a ring homomorphism for all of them, not only for ``Z_m``.
"""

from dataclasses import dataclass

from .errors import ShapeError, ValidationError
from .ntheory import factorize
from .rings import Ring, RingElement, reduce_to


@dataclass(frozen=True)
class CrtBasis:
    m: int
    factors: tuple  # ((p_i, r_i), ...)

    def __post_init__(self):
        prod = 1
        for p, r in self.factors:
            prod *= p ** r
        if prod != self.m:
            raise ValidationError(f"factors {self.factors} do not multiply to {self.m}")
        if len({p for p, _ in self.factors}) != len(self.factors):
            raise ValidationError("CRT primes must be distinct")

    @classmethod
    def of(cls, m: int) -> "CrtBasis":
        if m < 2:
            raise ValidationError("CRT basis needs m >= 2")
        return cls(m, tuple(factorize(m)))

    @property
    def moduli(self) -> list:
        return [p ** r for p, r in self.factors]

    @property
    def cofactors(self) -> list:
        """``m_i = m / p_i^{r_i}``."""
        return [self.m // q for q in self.moduli]

    @property
    def coefficients(self) -> list:
        """``s_i`` with ``s_i * m_i = 1 (mod p_i^{r_i})``."""
        return [pow(mi, -1, q) if q > 1 else 0 for mi, q in zip(self.cofactors, self.moduli)]

    @property
    def idempotents(self) -> list:
        """``s_i * m_i`` reduced mod ``m``; they sum to 1 mod ``m``."""
        return [s * mi % self.m for s, mi in zip(self.coefficients, self.cofactors)]


def component_rings(ring: Ring, basis: CrtBasis) -> list:
    if ring.modulus != basis.m:
        raise ShapeError(f"basis is for m={basis.m}, ring has modulus {ring.modulus}")
    return [ring.with_modulus(q) for q in basis.moduli]


def crt_split(x: RingElement, basis: CrtBasis) -> list:
    """Component ``i`` is ``x mod p_i^{r_i}`` in the matching component ring."""
    return [reduce_to(x, r) for r in component_rings(x.ring, basis)]


def crt_combine(components, basis: CrtBasis, ring: Ring = None) -> RingElement:
    """Inverse of :func:`crt_split`: ``sum(s_i m_i f_i) mod m``."""
    components = list(components)
    if len(components) != len(basis.factors):
        raise ShapeError(f"expected {len(basis.factors)} components, got {len(components)}")
    for comp, q in zip(components, basis.moduli):
        if comp.ring.modulus != q:
            raise ShapeError(f"component over modulus {comp.ring.modulus} where {q} expected")
    if ring is None:
        ring = components[0].ring.with_modulus(basis.m)
    dim = ring.dim
    acc = [0] * dim
    for comp, e in zip(components, basis.idempotents):
        if comp.ring.dim != dim:
            raise ShapeError("component shapes differ")
        for i, c in enumerate(comp.coords):
            acc[i] += e * c
    return ring.from_coords(acc)
