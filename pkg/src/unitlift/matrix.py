"""Matrix rings: determinants, the three inversion routes and unit counts.

Routes for ``f`` in ``M_n(Z_{p^k})``:

* lift: invert ``f mod p`` over ``Z_p``, then ``g (fg)^(p^(k-1) - 1)``;
* Gauss-Jordan directly over ``Z_{p^k}`` with unit pivots;
* adjugate: ``det(f)^-1 adj(f)``.
"""

import operator

from .chain import make_power_chain
from .counting import count_units, gl_order
from .crt import CrtBasis, crt_combine, crt_split
from .errors import InternalError, NotAUnitError, ShapeError, UnsupportedError
from .lift import UnitCertificate, lift_inverse, quotient_inverse
from .modlinalg import charpoly_berkowitz, det_bareiss, det_cofactor, gauss_jordan_inverse
from .ntheory import is_prime, prime_power
from .rings import MatrixRing, RingElement, ZMod, reduce_to

COFACTOR_LIMIT = 4


def _require_matrix(f):
    if not isinstance(f.ring, MatrixRing):
        raise ShapeError(f"{f.ring!r} is not a matrix ring")
    return f.ring


def entries(f: RingElement):
    """Rows of base-ring elements."""
    ring = _require_matrix(f)
    n, base, bd = ring.n, ring.base, ring.base.dim
    return [
        [RingElement(base, f.coords[(i * n + j) * bd:(i * n + j + 1) * bd]) for j in range(n)]
        for i in range(n)
    ]


def int_rows(f: RingElement):
    ring = _require_matrix(f)
    if not isinstance(ring.base, ZMod):
        raise ShapeError("integer rows need a Z_m base")
    n = ring.n
    return [list(f.coords[i * n:(i + 1) * n]) for i in range(n)]


def from_int_rows(ring: MatrixRing, rows) -> RingElement:
    return ring.from_coords([v for row in rows for v in row])


def mat_det(f: RingElement) -> RingElement:
    """Cofactor expansion for ``n <= 4``; larger ``n`` uses Bareiss on integer
    lifts over ``Z_m`` and the division-free Berkowitz recurrence otherwise."""
    ring = _require_matrix(f)
    base = ring.base
    if not base.commutative:
        raise UnsupportedError(f"determinant over non-commutative {base!r}")
    if isinstance(base, ZMod) and ring.n > COFACTOR_LIMIT:
        return base.from_coords([det_bareiss(int_rows(f))])
    rows = entries(f)
    if ring.n <= COFACTOR_LIMIT:
        return det_cofactor(rows, operator.mul, operator.add, operator.sub, base.zero)
    poly = charpoly_berkowitz(rows, operator.mul, operator.add, operator.sub, operator.neg,
                              base.zero, base.one)
    return poly[-1] if ring.n % 2 == 0 else -poly[-1]


def adjugate_cofactor(f: RingElement) -> RingElement:
    """Transpose of the cofactor matrix, by minors."""
    ring = _require_matrix(f)
    base, n = ring.base, ring.n
    rows = entries(f)
    if n == 1:
        return ring.one
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            d = det_cofactor(minor, operator.mul, operator.add, operator.sub, base.zero)
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return ring.from_coords([c for row in out for e in row for c in e.coords])


def adjugate_cayley_hamilton(f: RingElement, counter=None) -> RingElement:
    """``adj(f) = (-1)^(n+1) (f^(n-1) + c_1 f^(n-2) + ... + c_(n-1) I)``.

    Division free, so valid over any commutative base.
    """
    ring = _require_matrix(f)
    base, n = ring.base, ring.n
    if n == 1:
        return ring.one
    calls = [0]

    def mul(a, b):
        calls[0] += 1
        return a * b

    poly = charpoly_berkowitz(entries(f), mul, operator.add, operator.sub, operator.neg,
                              base.zero, base.one)
    acc = ring.one
    for c in poly[1:n]:
        acc = acc * f + _scalar_matrix(ring, c)
    calls[0] += (n - 2) * n ** 3 + n * (n - 1)
    if counter is not None:
        counter[0] += calls[0]
    return acc if n % 2 == 1 else -acc


def _scalar_matrix(ring: MatrixRing, c: RingElement) -> RingElement:
    n, bd = ring.n, ring.base.dim
    coords = [0] * ring.dim
    for i in range(n):
        coords[(i * n + i) * bd:(i * n + i + 1) * bd] = c.coords
    return RingElement(ring, tuple(coords))


def invert_mod_prime(f: RingElement) -> RingElement:
    """Gauss-Jordan over ``Z_p``, cross-checked by the adjugate for ``n <= 3``."""
    ring = _require_matrix(f)
    p = ring.modulus
    if not isinstance(ring.base, ZMod) or not is_prime(p):
        raise ShapeError(f"{ring!r} is not a matrix ring over a prime field Z_p")
    g = from_int_rows(ring, gauss_jordan_inverse(int_rows(f), p))
    if ring.n <= 3:
        d = mat_det(f)
        alt = adjugate_cofactor(f) * pow(d.coords[0], -1, p)
        if alt != g:
            raise InternalError("Gauss-Jordan and adjugate inverses disagree")
    return g


def power_chain_for(ring: MatrixRing):
    """``{M_n(<p>), ..., M_n(<p>^k)}`` for ``M_n(Z_{p^k})``, ``s = p``."""
    pp = prime_power(ring.modulus)
    if pp is None:
        raise UnsupportedError(f"{ring!r} is not over a prime-power modulus")
    p, k = pp
    return make_power_chain(ring.scalar(p), k, p)


def invert_matrix_prime_power(f: RingElement) -> UnitCertificate:
    """Unit test via ``det(f mod p)``, inversion over ``Z_p``, then lifting.

    The certificate's ``power`` field is ``(fg)^(p^(k-1) - 1)``.
    """
    ring = _require_matrix(f)
    if not isinstance(ring.base, ZMod):
        raise ShapeError("invert_matrix_prime_power needs a Z_{p^k} base")
    pp = prime_power(ring.modulus)
    if pp is None:
        raise ShapeError(f"modulus {ring.modulus} is not a prime power")
    p, _ = pp
    fbar = reduce_to(f, ring.with_modulus(p))
    if mat_det(fbar).coords[0] == 0:
        raise NotAUnitError(f"det(f mod {p}) = 0", failing_prime=p)
    gbar = invert_mod_prime(fbar)
    g = RingElement(ring, gbar.coords)
    return lift_inverse(f, g, power_chain_for(ring))


def invert_matrix_crt(f: RingElement, basis: CrtBasis = None) -> RingElement:
    """``f^-1 = sum s_i m_i f_i^-1`` with each ``f_i`` lifted over ``Z_{p_i^{k_i}}``."""
    ring = _require_matrix(f)
    basis = basis or CrtBasis.of(ring.modulus)
    parts = []
    for comp, (p, _) in zip(crt_split(f, basis), basis.factors):
        try:
            parts.append(invert_matrix_prime_power(comp).inverse)
        except NotAUnitError:
            raise NotAUnitError(f"component modulo {p} is singular", failing_prime=p) from None
    inv = crt_combine(parts, basis, ring)
    if f * inv != ring.one or inv * f != ring.one:
        raise InternalError("CRT matrix inverse failed")
    return inv


def invert_gauss_jordan(f: RingElement, counter=None) -> RingElement:
    """Elimination directly over ``Z_{p^k}``, pivoting on entries prime to ``p``."""
    ring = _require_matrix(f)
    pp = prime_power(ring.modulus)
    if pp is None or not isinstance(ring.base, ZMod):
        raise ShapeError("Gauss-Jordan route needs M_n(Z_{p^k})")
    return from_int_rows(ring, gauss_jordan_inverse(int_rows(f), ring.modulus, pp[0], counter))


def invert_adjugate(f: RingElement, counter=None) -> RingElement:
    """``det(f)^-1 adj(f)`` with the adjugate from Cayley-Hamilton."""
    ring = _require_matrix(f)
    adj = adjugate_cayley_hamilton(f, counter)
    n = ring.n
    # det(f) I = f adj(f); read det off the (0,0) entry
    det = (f * adj).coords[:ring.base.dim]
    if counter is not None:
        counter[0] += n
    d = RingElement(ring.base, det)
    try:
        dinv = quotient_inverse(d)
    except NotAUnitError:
        raise NotAUnitError("det(f) is not a unit") from None
    return adj * dinv.coords[0] if isinstance(ring.base, ZMod) else adj * _scalar_matrix(ring, dinv)


def count_matrix_units(ring: MatrixRing, chain=None) -> int:
    """``|M_n(R)*| = |M_n(R/N_1)*| |N_1|^(n^2)``.

    ``chain`` is a CNC chain of the base ring ``R``; by default ``N_1`` is
    ``<p>`` and composite moduli are multiplied out over CRT components.
    """
    if not isinstance(ring, MatrixRing):
        raise ShapeError(f"{ring!r} is not a matrix ring")
    if chain is None:
        return count_units(ring)[0]
    if chain.ring != ring.base:
        raise ShapeError("chain must be a chain of the base ring")
    top = chain.top
    if top.is_zero():
        return count_units(ring)[0]
    quot = MatrixRing(ring.n, top.quotient_ring())
    return count_units(quot)[0] * top.cardinality() ** (ring.n ** 2)


def matrix_unit_criteria(f: RingElement) -> dict:
    """The three equivalent unit tests over ``Z_{p^k}``."""
    ring = _require_matrix(f)
    p, _ = prime_power(ring.modulus)
    fbar = reduce_to(f, ring.with_modulus(p))
    try:
        invert_gauss_jordan(f)
        invertible = True
    except NotAUnitError:
        invertible = False
    return {
        "invertible": invertible,
        "det_mod_p_nonzero": mat_det(fbar).coords[0] != 0,
        "det_is_unit": mat_det(f).coords[0] % p != 0,
    }
