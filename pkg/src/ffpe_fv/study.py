"""Grid-refinement sweeps over catalog problems."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from .catalog import PolynomialDrift, get_problem
from .problem import grid_for
from .stepper import run
from .verification import ErrorSummary, convergence_rate, error_summary


@dataclass(frozen=True)
class ProblemRef:
    """Picklable handle on a catalog problem, rebuilt inside worker processes."""

    name: str
    params: Dict = field(default_factory=dict)

    def build(self):
        return get_problem(self.name, **self.params)


@dataclass(frozen=True)
class ConvergenceTable:
    axis: str
    sizes: List[int]
    max_inf: List[float]
    max_l1: List[float]
    rates: List[float]

    def to_rows(self) -> List[List[str]]:
        label = "N+1" if self.axis == "space" else "L"
        rows = [[label] + [str(s) for s in self.sizes]]
        rows.append(["max_inf"] + [f"{e:.3e}" for e in self.max_inf])
        rows.append(["max_l1"] + [f"{e:.3e}" for e in self.max_l1])
        rows.append(["rate", ""] + [f"{r:.3f}" for r in self.rates])
        return rows


def error_cell(ref: ProblemRef, N: int, L: int) -> ErrorSummary:
    problem = ref.build()
    if problem.exact is None:
        raise ValueError(f"problem {problem.name!r} has no exact solution")
    field_ = run(problem.spec, grid_for(problem.spec, N, L))
    s = error_summary(field_, problem.exact)
    return ErrorSummary(s.max_l1, s.max_inf)


def _check_sweep(sizes: Sequence[int]) -> None:
    if len(sizes) < 2:
        raise ValueError("a convergence sweep needs at least two grid sizes")
    if any(s <= 0 for s in sizes):
        raise ValueError(f"grid sizes must be positive, got {list(sizes)}")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"grid sizes must be strictly increasing, got {list(sizes)}")


def convergence_study(
    ref: ProblemRef,
    axis: str,
    sizes: Sequence[int],
    fixed: int,
    workers: int = 1,
) -> ConvergenceTable:
    """Refine space (``sizes`` are ``N+1``, ``fixed`` is ``L``) or time
    (``sizes`` are ``L``, ``fixed`` is ``N``)."""
    _check_sweep(sizes)
    if axis == "space":
        cells = [(s - 1, fixed) for s in sizes]
    elif axis == "time":
        cells = [(fixed, s) for s in sizes]
    else:
        raise ValueError(f"axis must be 'space' or 'time', got {axis!r}")
    if any(N < 1 for N, _ in cells):
        raise ValueError("space sweep sizes must be at least 2 (N + 1 >= 2)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(error_cell, ref, N, L) for N, L in cells]
            results = [f.result() for f in futures]
    else:
        results = [error_cell(ref, N, L) for N, L in cells]

    l1 = [r.max_l1 for r in results]
    rates = [
        convergence_rate(l1[i], l1[i + 1], sizes[i], sizes[i + 1])
        for i in range(len(sizes) - 1)
    ]
    return ConvergenceTable(axis, list(sizes), [r.max_inf for r in results], l1, rates)


def drift_from_coeffs(c0=None, c1=None, c2=None):
    if c0 is None and c1 is None and c2 is None:
        return None
    return PolynomialDrift(c0 or 0.0, c1 or 0.0, c2 or 0.0)
