import pytest

from unitlift import GroupRing, MatrixRing, ZMod, cyclic, permutation_index, symmetric


def independent_inverse(ring, x):
    """Plain double loop over the ring; used to cross-check the numpy oracle."""
    found = [y for y in ring.elements() if x * y == ring.one and y * x == ring.one]
    assert len(found) <= 1
    return found[0] if found else None


@pytest.fixture(scope="session")
def s3():
    g = symmetric(3)
    sigma = permutation_index(g, [(1, 2, 3)])
    return g, sigma, g.power(sigma, 2)


def s3_element(n, coeffs, s3):
    """``sum c_g * I g`` in ``M_n(Z_9) S_3`` for scalar coefficients."""
    group, sigma, sigma2 = s3
    base = MatrixRing(n, ZMod(9))
    ring = GroupRing(group, base)
    out = ring.zero
    for g, c in zip((0, sigma, sigma2), coeffs):
        out = out + ring.embed(base.scalar(c), g)
    return out


def c5_ring():
    return GroupRing(cyclic(5), ZMod(25))


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, seconds, limit, detail):
    """Store one acceptance line; all lines are printed in the terminal summary."""
    within = limit is None or seconds < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"criterion {number:>2}: {status}  {seconds * 1000:9.2f} ms{budget}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok and within


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
