"""0-1 ILP models: binary variables, linear rows, a maximization objective.

The model is a plain builder; solving lives in tembed.ilp.solve. Rows and
variables keep insertion order, which fixes the deterministic branching
order of the search and the layout of exported LP files.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

LE, GE, EQ = 0, 1, 2
_SENSE_TEXT = {LE: "<=", GE: ">=", EQ: "="}


class MalformedModelError(ValueError):
    pass


class SolveStatus(Enum):
    REACHED_TARGET = "ReachedTarget"
    OPTIMAL = "Optimal"
    BOUND_BELOW_TARGET = "BoundBelowTarget"
    INFEASIBLE = "Infeasible"
    TIME_LIMIT = "TimeLimit"


_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.]*$")


@dataclass
class _Row:
    coeffs: dict[int, float]
    sense: int
    rhs: float
    name: str


class IlpModel:
    """Binary maximization model.

    >>> m = IlpModel()
    >>> x, y = m.binary("x"), m.binary("y")
    >>> m.maximize({x: 1, y: 1})
    >>> m.add_le({x: 1, y: 1}, 1)
    """

    def __init__(self, name: str = "model"):
        self.name = name
        self.var_names: list[str] = []
        self._var_index: dict[str, int] = {}
        self.objective: dict[int, float] = {}
        self.rows: list[_Row] = []
        self._arrays: ModelArrays | None = None

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def binary(self, name: str) -> int:
        if not _NAME_RE.match(name):
            raise MalformedModelError(f"bad variable name {name!r}")
        if name in self._var_index:
            raise MalformedModelError(f"duplicate variable {name!r}")
        self._var_index[name] = idx = len(self.var_names)
        self.var_names.append(name)
        self._arrays = None
        return idx

    def var(self, name: str) -> int:
        return self._var_index[name]

    def maximize(self, coeffs: dict[int, float]) -> None:
        self._check_coeffs(coeffs)
        self.objective = dict(coeffs)
        self._arrays = None

    def add_le(self, coeffs: dict[int, float], rhs: float, name: str | None = None) -> None:
        self._add_row(coeffs, LE, rhs, name)

    def add_ge(self, coeffs: dict[int, float], rhs: float, name: str | None = None) -> None:
        self._add_row(coeffs, GE, rhs, name)

    def add_eq(self, coeffs: dict[int, float], rhs: float, name: str | None = None) -> None:
        self._add_row(coeffs, EQ, rhs, name)

    def _add_row(self, coeffs, sense, rhs, name) -> None:
        self._check_coeffs(coeffs)
        if not coeffs:
            raise MalformedModelError("constraint with no terms")
        if not math.isfinite(rhs):
            raise MalformedModelError(f"non-finite rhs {rhs}")
        self.rows.append(_Row(dict(coeffs), sense, float(rhs), name or f"c{len(self.rows)}"))
        self._arrays = None

    def _check_coeffs(self, coeffs: dict[int, float]) -> None:
        for j, a in coeffs.items():
            if not (0 <= j < self.num_vars):
                raise MalformedModelError(f"coefficient on unknown variable index {j}")
            if not math.isfinite(a):
                raise MalformedModelError(f"non-finite coefficient {a} on var {j}")

    def objective_value(self, x) -> float:
        return float(sum(a * x[j] for j, a in self.objective.items()))

    def row_text(self, r: _Row) -> str:
        terms = " + ".join(f"{a:g}*{self.var_names[j]}" for j, a in sorted(r.coeffs.items()))
        return f"{r.name}: {terms} {_SENSE_TEXT[r.sense]} {r.rhs:g}"

    def to_arrays(self) -> "ModelArrays":
        """Pack into flat CSR/CSC arrays for the search kernels (cached)."""
        if self._arrays is None:
            self._arrays = _pack(self)
        return self._arrays


@dataclass(frozen=True)
class ModelArrays:
    n_vars: int
    n_rows: int
    obj: np.ndarray  # float64 [n_vars]
    indptr: np.ndarray  # int32 [n_rows + 1]
    cols: np.ndarray  # int32 [nnz]
    vals: np.ndarray  # float64 [nnz]
    sense: np.ndarray  # int8 [n_rows]
    rhs: np.ndarray  # float64 [n_rows]
    cindptr: np.ndarray  # int32 [n_vars + 1]
    crows: np.ndarray  # int32 [nnz]
    cvals: np.ndarray  # float64 [nnz]
    integral_obj: bool


def _pack(model: IlpModel) -> ModelArrays:
    n, m = model.num_vars, model.num_rows
    obj = np.zeros(n)
    for j, a in model.objective.items():
        obj[j] = a
    nnz = sum(len(r.coeffs) for r in model.rows)
    indptr = np.zeros(m + 1, dtype=np.int32)
    cols = np.zeros(nnz, dtype=np.int32)
    vals = np.zeros(nnz)
    sense = np.zeros(m, dtype=np.int8)
    rhs = np.zeros(m)
    pos = 0
    for r_idx, row in enumerate(model.rows):
        for j, a in sorted(row.coeffs.items()):
            cols[pos] = j
            vals[pos] = a
            pos += 1
        indptr[r_idx + 1] = pos
        sense[r_idx] = row.sense
        rhs[r_idx] = row.rhs

    counts = np.bincount(cols, minlength=n)
    cindptr = np.zeros(n + 1, dtype=np.int32)
    np.cumsum(counts, out=cindptr[1:])
    crows = np.zeros(nnz, dtype=np.int32)
    cvals = np.zeros(nnz)
    fill = cindptr[:-1].copy()
    for r_idx in range(m):
        for p in range(indptr[r_idx], indptr[r_idx + 1]):
            j = cols[p]
            q = fill[j]
            crows[q] = r_idx
            cvals[q] = vals[p]
            fill[j] += 1

    integral = all(float(a).is_integer() for a in model.objective.values())
    return ModelArrays(
        n, m, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals, integral
    )


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    value: float | None
    assignment: tuple[int, ...] | None
    bound: float
    nodes: int
    wall_time: float
    kernel: str
    lp_calls: int = 0

    def reached(self, target: float) -> bool:
        return self.value is not None and self.value >= target - 1e-9
