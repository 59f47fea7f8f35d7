"""Batch verification suites over the package's cross-checks.

Each suite runs a family of exact consistency checks and reports one
result per check; nothing here computes anything new, it only drives
the independent routes against each other at configurable sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangements import (decompose, decompose_iterative, fm_arrangement,
                           sample_admissible_orders, admissible_orders)
from .chern import twisted_chern_identity
from .errors import CrossCheckError
from .fm import decomposition_table, f_direct, f_recursive, functional_equation_residual, solve_N
from .forests import enumerate_weighted_forests, labelings_count
from .macdonald import BettiVector, symmetric_product_poincare
from .nests import enumerate_nests, nest_stats
from .polynomials import IntPoly
from .quotient import quotient_decomposition


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _result(suite, name, fn) -> CheckResult:
    try:
        detail = fn() or ""
        return CheckResult(suite, name, True, detail)
    except (CrossCheckError, AssertionError) as exc:
        return CheckResult(suite, name, False, str(exc))


def suite_genfun(max_n: int = 6, max_dim: int = 3) -> list[CheckResult]:
    out = []
    for d in range(1, max_dim + 1):
        def check(d=d):
            series = solve_N(d, max_n)
            for n in range(1, max_n + 1):
                rec = f_recursive(n, d)
                assert rec == f_direct(n, d), f"recursion vs enumeration at n={n}, d={d}"
                assert rec == series.coefficient(n), f"recursion vs solver at n={n}, d={d}"
            return f"n <= {max_n} agree three ways"
        out.append(_result("genfun", f"triple-agreement d={d}", check))
    for d in range(1, max_dim + 1):
        def check(d=d):
            series = solve_N(d, max_n + 2)
            assert functional_equation_residual(series, d).is_zero()
            return f"residual zero through t^{max_n + 2}"
        out.append(_result("genfun", f"functional-equation d={d}", check))
    return out


def suite_duality(max_n: int = 5, max_dim: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_dim + 1):
            def check(n=n, d=d):
                decomposition_table(n, d)   # validates duality internally
                return "table verified"
            out.append(_result("duality", f"table n={n} d={d}", check))
    return out


def suite_quotient(max_n: int = 5, max_dim: int = 3) -> list[CheckResult]:
    out = []
    for n in range(1, max_n + 1):
        for d in range(1, max_dim + 1):
            def check(n=n, d=d):
                table = quotient_decomposition(n, d, verify=True)
                labeled_total = 0
                for nest in enumerate_nests(n):
                    stats = nest_stats(nest)
                    size = 1
                    for b in stats.internal:
                        size *= max(0, d * (stats.children[b] - 1) - 1)
                    labeled_total += size
                forest_total = sum(labelings_count(f, n)
                                   for f in enumerate_weighted_forests(n, d))
                assert labeled_total == forest_total, (
                    f"mass mismatch n={n} d={d}: nests {labeled_total}, forests {forest_total}")
                return f"{sum(table.entries.values())} forests, mass {forest_total}"
            out.append(_result("quotient", f"orbit-oracle n={n} d={d}", check))
    return out


def suite_orders(max_n: int = 4, max_dim: int = 3, sample: int = 100) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_dim + 1):
            def check(n=n, d=d):
                arr = fm_arrangement(n, d)
                if n <= 3:
                    orders = list(admissible_orders(arr))
                else:
                    orders = sample_admissible_orders(arr, sample)
                reference = decompose(arr)
                for order in orders:
                    assert decompose_iterative(arr, order) == reference
                return f"{len(orders)} orders agree"
            out.append(_result("orders", f"fm n={n} d={d}", check))
    return out


def suite_macdonald(max_n: int = 8) -> list[CheckResult]:
    def check():
        line = BettiVector.projective_space(1)
        for n in range(0, max_n + 1):
            expected = IntPoly([1 if i % 2 == 0 else 0 for i in range(2 * n + 1)])
            assert symmetric_product_poincare(line, n) == expected, f"line power {n}"
        return f"powers of the line through {max_n}"
    return [_result("macdonald", "projective-line", check)]


def suite_chern(max_rank: int = 4) -> list[CheckResult]:
    out = []
    for r in range(1, max_rank + 1):
        def check(r=r):
            twisted_chern_identity(r, d=2)
            return "expanded and matched"
        out.append(_result("chern", f"rank {r}", check))
    return out


SUITES = {
    "genfun": suite_genfun,
    "duality": suite_duality,
    "quotient": suite_quotient,
    "orders": suite_orders,
    "macdonald": suite_macdonald,
    "chern": suite_chern,
}


def run_suite(name: str, max_n: int | None = None, max_dim: int | None = None) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in SUITES:
            results.extend(run_suite(key, max_n, max_dim))
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    fn = SUITES[name]
    kwargs = {}
    if max_n is not None and name in ("genfun", "duality", "quotient", "orders", "macdonald"):
        kwargs["max_n"] = max_n
    if max_dim is not None and name in ("genfun", "duality", "quotient", "orders"):
        kwargs["max_dim"] = max_dim
    if max_n is not None and name == "chern":
        kwargs["max_rank"] = min(max_n, 5)
    return fn(**kwargs)
