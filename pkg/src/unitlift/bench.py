"""Timing and operation counts for three inversion routes over ``M_n(Z_{p^k})``.

* ``adjugate``: ``det(f)^-1 adj(f)``, adjugate from the characteristic
  polynomial (Berkowitz) and Cayley-Hamilton;
* ``gauss_jordan``: elimination over ``Z_{p^k}`` with unit pivots;
* ``lift``: invert ``f mod p``, then ``g (fg)^(p^(k-1) - 1)``.

Each trial draws its matrix from ``random.Random(f"{seed}:{trial}")``, so
trials are independent and the report is reproducible apart from the
``nanoseconds`` column.
"""

import csv
import hashlib
import io
import random
import statistics
import time
from dataclasses import dataclass, field

from . import kernels
from .errors import InternalError, NotAUnitError, ResourceError, ValidationError
from .modlinalg import charpoly_berkowitz, det_bareiss, gauss_jordan_inverse
from .ntheory import is_prime

MAX_N = 64
MAX_MODULUS = 1 << 63
METHODS = ("adjugate", "gauss_jordan", "lift")
CSV_COLUMNS = ("method", "n", "p", "k", "trial", "nanoseconds", "mulcount")


def _identity(n):
    return [1 if i == j else 0 for i in range(n) for j in range(n)]


def _rows(flat, n):
    return [flat[i * n:(i + 1) * n] for i in range(n)]


def random_invertible(n: int, p: int, k: int, rng: random.Random) -> list:
    """Row-major matrix over ``Z_{p^k}`` whose reduction mod ``p`` is invertible."""
    m = p ** k
    while True:
        flat = [rng.randrange(m) for _ in range(n * n)]
        if det_bareiss(_rows([v % p for v in flat], n)) % p:
            return flat


def invert_adjugate_flat(f: list, n: int, m: int, p: int) -> tuple:
    count = [0]

    def mul(a, b):
        count[0] += 1
        return a * b % m

    poly = charpoly_berkowitz(_rows(f, n), mul, lambda a, b: (a + b) % m,
                              lambda a, b: (a - b) % m, lambda a: -a % m, 0, 1)
    det = poly[n] if n % 2 == 0 else -poly[n] % m
    if det % p == 0:
        raise NotAUnitError("det(f) is not a unit", failing_prime=p)
    if n == 1:
        adj = [1]
    else:
        acc = _identity(n)
        for c in poly[1:n]:
            acc = kernels.matmul_mod(acc, f, n, m)
            for i in range(n):
                acc[i * n + i] = (acc[i * n + i] + c) % m
            count[0] += n ** 3
        sign = 1 if n % 2 == 1 else -1
        adj = [sign * v % m for v in acc]
    dinv = pow(det, -1, m)
    count[0] += n * n
    return [v * dinv % m for v in adj], count[0]


def invert_gauss_jordan_flat(f: list, n: int, m: int, p: int) -> tuple:
    count = [0]
    inv = gauss_jordan_inverse(_rows(f, n), m, p, count)
    return [v for row in inv for v in row], count[0]


def invert_lift_flat(f: list, n: int, m: int, p: int) -> tuple:
    count = [0]
    gbar = gauss_jordan_inverse(_rows([v % p for v in f], n), p, p, count)
    g = [v for row in gbar for v in row]
    S = m // p if m != p else 1
    xg = kernels.matmul_mod(f, g, n, m)
    pw, used = kernels.matpow_mod(xg, S - 1, n, m)
    inv = kernels.matmul_mod(g, pw, n, m)
    count[0] += (used + 2) * n ** 3
    return inv, count[0]


ROUTES = {
    "adjugate": invert_adjugate_flat,
    "gauss_jordan": invert_gauss_jordan_flat,
    "lift": invert_lift_flat,
}


@dataclass
class BenchReport:
    n: int
    p: int
    k: int
    trials: int
    seed: int
    backend: str
    rows: list = field(default_factory=list)
    agree: bool = True
    digest: str = ""

    def deterministic_rows(self):
        return [{k: v for k, v in r.items() if k != "nanoseconds"} for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()

    def summary(self) -> dict:
        out = {}
        for method in METHODS:
            ns = [r["nanoseconds"] for r in self.rows if r["method"] == method]
            mc = [r["mulcount"] for r in self.rows if r["method"] == method]
            out[method] = {
                "trials": len(ns),
                "median_ns": int(statistics.median(ns)),
                "mean_ns": int(statistics.fmean(ns)),
                "mean_mulcount": statistics.fmean(mc),
            }
        return out

    def to_markdown(self) -> str:
        lines = [
            f"### Inversion benchmark: n={self.n}, p={self.p}, k={self.k}, "
            f"trials={self.trials}, seed={self.seed}",
            "",
            f"backend: {self.backend}; all methods agree: {'yes' if self.agree else 'NO'}; "
            f"digest: `{self.digest[:16]}`",
            "",
            "| method | trials | median ns | mean ns | mean mulcount |",
            "|---|---:|---:|---:|---:|",
        ]
        for method, s in self.summary().items():
            lines.append(f"| {method} | {s['trials']} | {s['median_ns']} | {s['mean_ns']} "
                         f"| {s['mean_mulcount']:.1f} |")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n, "p": self.p, "k": self.k, "trials": self.trials, "seed": self.seed,
            "backend": self.backend, "agree": self.agree, "digest": self.digest,
            "summary": self.summary(), "rows": self.rows,
        }


def _check_suite(n, p, k, trials):
    for name, v in (("n", n), ("k", k), ("trials", trials)):
        if not isinstance(v, int) or v < 1:
            raise ValidationError(f"{name} must be a positive integer")
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    if n > MAX_N:
        raise ResourceError(f"n = {n} exceeds the cap {MAX_N}")
    if p ** k >= MAX_MODULUS:
        raise ResourceError(f"p^k = {p ** k} is not below 2^63")


def bench_inversion(suite: dict) -> BenchReport:
    """Run every route on the same seeded matrices and cross-check the inverses."""
    n, p, k = int(suite["n"]), int(suite["p"]), int(suite["k"])
    trials, seed = int(suite.get("trials", 10)), int(suite.get("seed", 0))
    _check_suite(n, p, k, trials)
    m = p ** k
    report = BenchReport(n, p, k, trials, seed, kernels.BACKEND)
    digest = hashlib.sha256(f"{n}:{p}:{k}:{trials}:{seed}".encode())
    one = _identity(n)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        f = random_invertible(n, p, k, rng)
        answers = {}
        for method in METHODS:
            t0 = time.perf_counter_ns()
            inv, muls = ROUTES[method](f, n, m, p)
            elapsed = time.perf_counter_ns() - t0
            answers[method] = inv
            report.rows.append({"method": method, "n": n, "p": p, "k": k, "trial": trial,
                                "nanoseconds": elapsed, "mulcount": muls})
            digest.update(f"{method}:{trial}:{muls}".encode())
        ref = answers["lift"]
        if list(kernels.matmul_mod(f, ref, n, m)) != one or list(kernels.matmul_mod(ref, f, n, m)) != one:
            raise InternalError(f"trial {trial}: lift route did not invert the matrix")
        bad = [mth for mth in METHODS if list(answers[mth]) != list(ref)]
        if bad:
            raise InternalError(f"trial {trial}: {', '.join(bad)} disagree with the lift route")
        digest.update(",".join(map(str, list(f) + list(ref))).encode())
    report.digest = digest.hexdigest()
    return report
