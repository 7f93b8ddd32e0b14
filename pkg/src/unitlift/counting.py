"""Unit counts via ``|R*| = |(R/N_1)*| |N_1|``.

Over ``Z_{p^k}`` the top ideal is ``pR``.  The quotient's unit count comes
from a closed form when it is a field or a matrix ring over one, and from
enumeration otherwise.  Composite moduli multiply over CRT components.
"""

from .chain import enumeration_cap
from .errors import NotAUnitError, ResourceError
from .lift import quotient_inverse
from .ntheory import factorize
from .rings import MatrixRing, Ring, ZMod


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def _enumerated_units(ring: Ring) -> int:
    cap = enumeration_cap()
    if ring.order > cap:
        raise ResourceError(f"{ring!r} has {ring.order} elements, cap is {cap}")
    count = 0
    for x in ring.elements():
        try:
            quotient_inverse(x)
        except NotAUnitError:
            continue
        count += 1
    return count


def residue_units(quot: Ring) -> tuple:
    """``(|quot*|, how)`` for a ring over a prime modulus."""
    if isinstance(quot, ZMod):
        return quot.modulus - 1, "field"
    if quot.is_field():
        return quot.order - 1, "field"
    if isinstance(quot, MatrixRing) and quot.base.is_field():
        return gl_order(quot.n, quot.base.order), "GL_n(F_q)"
    return _enumerated_units(quot), "enumeration"


def count_units(ring: Ring) -> tuple:
    """``(count, breakdown)`` where ``breakdown`` is JSON-ready."""
    factors = factorize(ring.modulus)
    if len(factors) > 1:
        parts = [count_units(ring.with_modulus(p ** e)) for p, e in factors]
        total = 1
        for c, _ in parts:
            total *= c
        return total, {
            "ring": ring.to_json(),
            "formula": "product over CRT components",
            "components": [b for _, b in parts],
            "units": total,
        }
    (p, k), = factors
    quot = ring.with_modulus(p) if k > 1 else ring
    q_units, how = residue_units(quot)
    n1 = p ** ((k - 1) * ring.dim)
    total = q_units * n1
    return total, {
        "ring": ring.to_json(),
        "formula": "|(R/N_1)*| * |N_1|",
        "N_1": f"<{p}>" if k > 1 else "0",
        "quotient": quot.to_json(),
        "quotient_units": q_units,
        "quotient_method": how,
        "N_1_size": n1,
        "units": total,
    }
