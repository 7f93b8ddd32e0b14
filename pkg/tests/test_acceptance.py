"""One test per acceptance criterion; each records a PASS/FAIL line with its runtime."""

import time

import pytest

from unitlift import (
    CncChain,
    CrtBasis,
    GaloisRing,
    GaussianMod,
    GroupRing,
    IdealDescriptor,
    MatrixRing,
    NotAUnitError,
    ValidationError,
    ZMod,
    binomial_inverse,
    count_group_ring_units,
    count_matrix_units,
    cyclic,
    default_chain,
    invert,
    invert_matrix_prime_power,
    invert_zmg_crt,
    invert_zmg_radical,
    lift_inverse,
    lift_inverse_commutative,
    validate_cnc,
)
from unitlift.bench import bench_inversion
from unitlift.group_ring import chain_ring_units
from unitlift.lift import quotient_lift
from unitlift.oracle import count_units, enumerate_units, gaussian_unit_count_report, verify_cardinality

from conftest import c5_ring, record_criterion, s3_element


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_criterion_01_matrix_example():
    M = MatrixRing(3, ZMod(27))
    f = M([[19, 12, 22], [6, 5, 24], [0, 16, 11]])
    with Timer() as t:
        cert = invert_matrix_prime_power(f)
    ok = (cert.inverse == M([[13, 22, 7], [15, 2, 0], [15, 2, 5]])
          and cert.power == M([[19, 21, 18], [21, 1, 0], [0, 0, 16]]))
    assert record_criterion(1, ok, t.seconds, 0.010,
                            "M_3(Z_27) inverse and (fg)^8 match exactly")


def test_criterion_02_c5_example():
    R = c5_ring()
    chain = default_chain(R)
    with Timer() as t:
        cert = lift_inverse(R([2, 24, 0, 0, 0]), R([1, 3, 4, 2, 1]), chain)
    ok = (cert.inverse == R([11, 18, 9, 17, 21]) and cert.product == R([1, 5, 5, 0, 0])
          and cert.power == R([1, 20, 20, 0, 0]))
    assert record_criterion(2, ok, t.seconds, 0.010,
                            "Z_25C_5 inverse, fg and (fg)^4 match exactly")


def test_criterion_03_f_half(s3):
    for n in (1, 2):
        assert invert(s3_element(n, [2, 8, 0], s3)).inverse == s3_element(n, [7, 8, 4], s3)


@pytest.mark.xfail(strict=True, reason=(
    "the stated inverse 4I+Iσ+4Iσ² of x = 2I+2Iσ multiplies x to 7I+Iσ+Iσ², "
    "not I; the unique inverse is 7I+2Iσ+7Iσ² (pinned in test_group_ring.py)"))
def test_criterion_03_s3_example(s3):
    results = {}
    with Timer() as t:
        for n in (1, 2):
            f_inv = invert(s3_element(n, [2, 8, 0], s3)).inverse
            x_inv = invert(s3_element(n, [2, 2, 0], s3)).inverse
            results[n] = (f_inv == s3_element(n, [7, 8, 4], s3),
                          x_inv == s3_element(n, [4, 1, 4], s3))
    f_ok = all(r[0] for r in results.values())
    x_ok = all(r[1] for r in results.values())
    detail = (f"(M_n(Z_9))S_3, n=1,2: f inverse {'matches' if f_ok else 'DIFFERS'}; "
              f"x inverse {'matches' if x_ok else 'differs from the stated 4I+Iσ+4Iσ² (true inverse 7I+2Iσ+7Iσ²)'}")
    assert record_criterion(3, f_ok and x_ok, t.seconds, 0.010, detail)


def test_criterion_04_gaussian_counts():
    listed = {(1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (2, 1), (1, 2), (2, 2)}
    with Timer() as t:
        z3i = {u.coords for u, _ in enumerate_units(GaussianMod(3, 1))}
        z9i = count_units(GaussianMod(3, 2))
        report = verify_cardinality(GaussianMod(3, 2))
    first = report["checks"][0]
    ok = z3i == listed and z9i == 72 and report["ok"] and first["rhs"] == 72 \
        and report["quotient_units"][0] == 8 and report["ideal_sizes"][0] == 9
    assert record_criterion(4, ok, t.seconds, 1.0,
                            f"|Z_3[i]*| = {len(z3i)} (listed set), |Z_9[i]*| = {z9i} = 8*9")


def test_criterion_05_z12_counterexample():
    R = ZMod(12)
    with Timer() as t:
        try:
            invert(R(3))
            rejected = False
        except NotAUnitError:
            rejected = True
        chain = CncChain((IdealDescriptor.principal(R, 2), IdealDescriptor.zero(R)), (2,), (2,))
        report = validate_cnc(chain)
    nilpotency_failed = not report.ok and not report.nilpotency
    assert record_criterion(5, rejected and nilpotency_failed, t.seconds, 0.010,
                            "3 in Z_12 is not a unit; {2Z_12, 0} fails nilpotency")


ORACLE_RINGS = [
    ZMod(8), ZMod(9), ZMod(16), ZMod(27), ZMod(25), GaussianMod(3, 2), GaloisRing(2, 2, (1, 1, 1)),
    MatrixRing(2, ZMod(4)), GroupRing(cyclic(2), ZMod(4)), GroupRing(cyclic(2), ZMod(6)),
    GroupRing(cyclic(2), ZMod(9)),
]


def _engine_matches_oracle(ring):
    want = {u.coords: i for u, i in enumerate_units(ring)}
    got = {}
    for x in ring.elements():
        try:
            got[x.coords] = invert(x).inverse
        except NotAUnitError:
            pass
    return got == want


def test_criterion_06_oracle_equivalence():
    with Timer() as t:
        results = {repr(r): _engine_matches_oracle(r) for r in ORACLE_RINGS}
        try:
            GaussianMod(2, 2)
            z4i = "accepted"
        except ValidationError:
            z4i = "rejected"
    bad = [name for name, ok in results.items() if not ok]
    ok = not bad and z4i == "rejected"
    detail = f"{len(results)} rings match elementwise; Z_4[i] {z4i} (p must be odd)"
    if bad:
        detail += f"; mismatches: {bad}"
    assert record_criterion(6, ok, t.seconds, 60.0, detail)


def test_criterion_07_cardinality_formulas():
    checks = {}
    with Timer() as t:
        for ring in (ZMod(27), GaussianMod(3, 2)):
            checks[f"card {ring!r}"] = verify_cardinality(ring)["ok"]
        checks["cardmatrix M_2(Z_4) = 96"] = \
            count_matrix_units(MatrixRing(2, ZMod(4))) == count_units(MatrixRing(2, ZMod(4))) == 96
        checks["cardmatrix M_2(Z_9) = 3888"] = \
            count_matrix_units(MatrixRing(2, ZMod(9))) == count_units(MatrixRing(2, ZMod(9))) == 3888
        for m in (8, 9):
            ring = GroupRing(cyclic(2), ZMod(m))
            checks[f"group-ring count {ring!r}"] = count_group_ring_units(ring) == count_units(ring)
        for m, want in ((4, 8), (9, None)):
            ring = GroupRing(cyclic(2), ZMod(m))
            n = chain_ring_units(ZMod(m), cyclic(2)).count()
            checks[f"fe {ring!r}"] = n == count_units(ring) and (want is None or n == want)
    bad = [k for k, v in checks.items() if not v]
    assert record_criterion(7, not bad, t.seconds, 60.0,
                            f"{len(checks)} formula instances agree with enumeration"
                            + (f"; failing: {bad}" if bad else ""))


def _c(order, m):
    return GroupRing(cyclic(order), ZMod(m))


def test_criterion_08_cross_method():
    import itertools
    import random

    with Timer() as t:
        mismatches = []
        for ring in (ZMod(9), ZMod(27), ZMod(25), GaussianMod(3, 2)):
            chain = default_chain(ring)
            for x, _ in enumerate_units(ring):
                g = quotient_lift(x, chain)
                a = lift_inverse(x, g, chain).inverse
                if not (a == lift_inverse_commutative(x, g, chain) == binomial_inverse(x, g, chain.top)):
                    mismatches.append((ring, x))
        zmg_cases = 0
        for m in (6, 12, 36):
            basis = CrtBasis.of(m)
            for order in (1, 2, 3):
                pools = [enumerate_units(_c(order, p)) for p, _ in basis.factors]
                combos = list(itertools.product(*pools))
                rng = random.Random(f"{m}:{order}")
                for combo in rng.sample(combos, min(20, len(combos))):
                    fs, gs = [u for u, _ in combo], [i for _, i in combo]
                    crt = invert_zmg_crt(fs, gs, basis)
                    rad = invert_zmg_radical(fs, gs, m, x=crt.x)
                    zmg_cases += 1
                    if rad.inverse != crt.inverse:
                        mismatches.append((m, order, fs))
    assert record_criterion(8, not mismatches, t.seconds, None,
                            f"three lift forms agree on all units of 4 rings; "
                            f"CRT = radical on {zmg_cases} Z_mG samples")


def test_criterion_09_power_reduction():
    failures = []
    with Timer() as t:
        for p in (3, 5):
            for k in (2, 3):
                R = ZMod(p ** k)
                elems = list(R.elements())
                for n in (R(p * j) for j in range(p ** (k - 1))):
                    ideal = {(R(p) * n * y).coords for y in elems}
                    if (((R.one + n) ** p) - R.one).coords not in ideal:
                        failures.append((p, k, n.payload))
    assert record_criterion(9, not failures, t.seconds, None,
                            "(1+n)^p - 1 in p<n> for every n in <p>, p in {3,5}, k in {2,3}")


def test_criterion_10_gaussian_open_question():
    with Timer() as t:
        report = gaussian_unit_count_report(3, 3)
    match = [n for n, c in report["claims"].items() if c["matches"]]
    ok = report["units"] == 648 and match == ["(p^2-1)p^(2(k-1))"]
    assert record_criterion(10, ok, t.seconds, 60.0,
                            f"|Z_27[i]*| = {report['units']} matches {match}; "
                            f"fails {report['failing']}")


def test_criterion_11_bench_sanity():
    suite = {"n": 3, "p": 3, "k": 3, "trials": 100, "seed": 1}
    with Timer() as t:
        a = bench_inversion(suite)
        b = bench_inversion(suite)
    ok = (a.agree and b.agree and a.digest == b.digest
          and a.deterministic_rows() == b.deterministic_rows() and len(a.rows) == 300)
    assert record_criterion(11, ok, t.seconds, 10.0,
                            f"3 methods agree on 100 trials; digest {a.digest[:12]} reproducible")
