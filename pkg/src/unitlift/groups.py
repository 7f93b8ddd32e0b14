"""Finite groups stored as Cayley tables.

Element 0 is always the identity.  Products follow the table:
``table[a][b]`` is the index of ``a*b``.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ValidationError

ASSOCIATIVITY_CHECK_LIMIT = 24


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    labels: tuple = field(default=(), compare=False)
    spec: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise ValidationError("a group needs at least one element")
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", rows)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        if len(self.labels) != n:
            raise ValidationError("one label per element required")
        full = set(range(n))
        for row in rows:
            if len(row) != n or set(row) != full:
                raise ValidationError("Cayley table is not a Latin square")
        for col in range(n):
            if {rows[r][col] for r in range(n)} != full:
                raise ValidationError("Cayley table is not a Latin square")
        if rows[0] != tuple(range(n)) or tuple(r[0] for r in rows) != tuple(range(n)):
            raise ValidationError("element 0 must be the identity")
        if n <= ASSOCIATIVITY_CHECK_LIMIT:
            for a, b, c in itertools.product(range(n), repeat=3):
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise ValidationError(f"table is not associative at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple:
        return tuple(row.index(0) for row in self.table)

    @cached_property
    def flat_table(self) -> tuple:
        return tuple(v for row in self.table for v in row)

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def power(self, a: int, e: int) -> int:
        r = 0
        for _ in range(e % self.element_order(a)):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != 0:
            r = self.table[r][a]
            k += 1
        return k

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ValidationError(f"no group element labelled {label!r}") from None

    def to_json(self) -> dict:
        if self.spec is not None:
            return self.spec
        return {"type": "table", "table": [list(r) for r in self.table]}

    def __repr__(self):
        if self.spec is not None:
            return f"FiniteGroup({self.spec})"
        return f"FiniteGroup(order={self.order})"


def cyclic(n: int) -> FiniteGroup:
    """``C_n`` with elements ``a^0, a^1, ..., a^(n-1)``."""
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    labels = tuple("1" if i == 0 else ("a" if i == 1 else f"a^{i}") for i in range(n))
    return FiniteGroup(table, labels, {"type": "cyclic", "n": n})


def _perm_label(p):
    return "".join(str(v + 1) for v in p)


def symmetric(n: int) -> FiniteGroup:
    """``S_n`` for ``n <= 4``, permutations in lexicographic one-line order.

    The product ``s*t`` is composition ``s(t(i))`` (apply ``t`` first).
    """
    if not 1 <= n <= 4:
        raise ValidationError("symmetric groups are supported for 1 <= n <= 4")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(pos[tuple(s[t[i]] for i in range(n))] for t in perms) for s in perms
    )
    return FiniteGroup(table, tuple(_perm_label(p) for p in perms), {"type": "symmetric", "n": n})


def permutation_index(group: FiniteGroup, cycles) -> int:
    """Index in a symmetric group of the permutation given by 1-based cycles,
    e.g. ``[(1, 2, 3)]``."""
    n = len(group.labels[0])
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return group.index(_perm_label(img))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``G x H`` with pairs ordered lexicographically by ``(g, h)``."""
    ng, nh = g.order, h.order
    table = tuple(
        tuple(g.table[a // nh][b // nh] * nh + h.table[a % nh][b % nh] for b in range(ng * nh))
        for a in range(ng * nh)
    )
    labels = tuple(f"({x},{y})" for x in g.labels for y in h.labels)
    spec = {"type": "product", "factors": [g.to_json(), h.to_json()]}
    return FiniteGroup(table, labels, spec)


def group_from_json(obj) -> FiniteGroup:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValidationError(f"bad group descriptor {obj!r}")
    kind = obj["type"]
    if kind == "cyclic":
        return cyclic(int(obj["n"]))
    if kind == "symmetric":
        return symmetric(int(obj["n"]))
    if kind == "product":
        factors = [group_from_json(f) for f in obj.get("factors", [])]
        if not factors:
            raise ValidationError("product needs at least one factor")
        out = factors[0]
        for f in factors[1:]:
            out = direct_product(out, f)
        if len(factors) == 1:
            return out
        return FiniteGroup(out.table, out.labels, {"type": "product", "factors": obj["factors"]})
    if kind == "table":
        return FiniteGroup(tuple(tuple(r) for r in obj["table"]))
    raise ValidationError(f"unknown group type {kind!r}")
