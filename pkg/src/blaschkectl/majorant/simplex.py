"""Minimal-mass linear program over discretized positive boundary measures.

The primal problem is

    minimize Σ_j m_j  subject to  Σ_j P(z_i, ξ_j) m_j >= v_i,  m_j >= 0,

whose optimum is the value at 0 of the cheapest Poisson integral of point masses on the
grid that dominates the targets. It is solved through its dual

    maximize Σ_i v_i y_i  subject to  Σ_i P(z_i, ξ_j) y_i <= 1,  y_i >= 0,

whose slack basis is feasible from the start. A compact tableau with Bland's entering rule
and a Harris ratio test gives a deterministic pivot sequence; the primal masses are read
from the reduced costs of the slacks. The tableau is rebuilt from its basis at intervals to
stop rounding drift, and a block whose result fails the primal/dual check is re-solved with
scipy's HiGHS backend. Large problems are solved on a working subset of constraints and grid angles
that grows until the restricted optimum is primal and dual feasible for the full problem.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Union

import numpy as np
from scipy.optimize import linprog

from ..const import (
    DUALITY_TOLERANCE,
    HARRIS_TOLERANCE,
    MAX_PIVOTS,
    PIVOT_TOLERANCE,
    REFACTOR_INTERVAL,
    SLACK_TOLERANCE,
    WORKING_SET_BATCH,
    SolveStatus,
)
from ..errors import DomainError, ParseError, SolverError
from ..harmonic import BoundaryMeasure, poisson_kernel_many
from ..hypgeo import TWO_PI, DiskPoint, PointLike, as_complex

logger = logging.getLogger(__name__)

# Rows of the (constraints x grid) kernel evaluated at once when scanning for violations.
_SCAN_BLOCK = 4096
_MAX_ROUNDS = 10_000


# ==================== Constraint Sets ====================


@dataclass(frozen=True)
class ConstraintSet:
    """Pairs (z_i, v_i) asking a harmonic majorant to exceed v_i at z_i."""

    points: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex))
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        if pts.shape != vals.shape:
            raise DomainError("constraint points and values differ in length")
        if pts.size and (np.max(np.abs(pts)) >= 1.0 or not np.all(np.isfinite(pts))):
            raise DomainError("constraint points must lie inside the unit disc")
        if vals.size and (not np.all(np.isfinite(vals)) or np.min(vals) < 0.0):
            raise DomainError("constraint values must be finite and >= 0")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[PointLike, float]]) -> "ConstraintSet":
        pts, vals = [], []
        for point, value in pairs:
            pts.append(as_complex(point))
            vals.append(float(value))
        return cls(np.array(pts, dtype=complex), np.array(vals, dtype=float))

    def __len__(self) -> int:
        return int(self.points.size)

    def __iter__(self):
        for z, v in zip(self.points, self.values):
            yield DiskPoint.from_complex(complex(z)), float(v)

    def merge(self, other: "ConstraintSet") -> "ConstraintSet":
        return ConstraintSet(
            np.concatenate([self.points, other.points]),
            np.concatenate([self.values, other.values]),
        )

    def subset(self, mask: np.ndarray) -> "ConstraintSet":
        return ConstraintSet(self.points[mask], self.values[mask])

    def to_dict(self) -> dict[str, Any]:
        return {
            "constraints": [
                {"re": float(z.real), "im": float(z.imag), "value": float(v)}
                for z, v in zip(self.points, self.values)
            ]
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ConstraintSet":
        try:
            rows = raw["constraints"]
            return cls(
                np.array([complex(float(r["re"]), float(r["im"])) for r in rows], dtype=complex),
                np.array([float(r["value"]) for r in rows], dtype=float),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed constraint set: {exc}")


# ==================== Grids ====================


def boundary_grid(n: int, points: Optional[np.ndarray] = None) -> np.ndarray:
    """n equispaced angles plus the radial projections of ``points``, sorted and unique.

    The origin has no radial projection and contributes nothing.
    """
    if n < 1:
        raise DomainError(f"boundary grid needs n >= 1, got {n}")
    angles = [TWO_PI * np.arange(n) / n]
    if points is not None and np.size(points):
        pts = np.asarray(points, dtype=complex)
        pts = pts[pts != 0]
        angles.append(np.mod(np.angle(pts), TWO_PI))
    grid = np.unique(np.mod(np.concatenate(angles), TWO_PI))
    return grid[grid < TWO_PI]


# ==================== Reports ====================


@dataclass
class SolveReport:
    """Outcome of one minimal-mass solve."""

    optimal_mass: float
    measure: BoundaryMeasure
    status: SolveStatus
    slack: np.ndarray
    dual: np.ndarray
    grid_size: int
    pivots: int = 0
    rounds: int = 0
    duality_gap: float = 0.0

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack)) if self.slack.size else math.inf

    def require_optimal(self) -> "SolveReport":
        """Return self, raising ``SolverError`` unless the solve reached a verified optimum."""
        if not self.is_optimal:
            raise SolverError(
                f"minimal-mass solve ended with status {self.status.value} "
                f"after {self.pivots} pivots",
                status=self.status.value,
            )
        return self


# ==================== Tableau Simplex ====================


@dataclass
class _Tableau:
    """Compact tableau x_B = b - T x_N, objective z0 + c·x_N (maximization)."""

    T: np.ndarray
    b: np.ndarray
    c: np.ndarray
    basic: np.ndarray
    nonbasic: np.ndarray
    z0: float = 0.0

    def pivot(self, r: int, s: int) -> None:
        T = self.T
        piv = T[r, s]
        row = T[r, :] / piv
        row[s] = 1.0 / piv
        col = T[:, s].copy()
        T -= np.outer(col, row)
        T[:, s] = -col / piv
        T[r, :] = row

        br = self.b[r] / piv
        self.b -= col * br
        self.b[r] = br

        cs = self.c[s]
        self.c -= cs * row
        self.c[s] = -cs / piv
        self.z0 += cs * br

        self.basic[r], self.nonbasic[s] = self.nonbasic[s], self.basic[r]


def _refactor(tab: _Tableau, A: np.ndarray, cost: np.ndarray) -> bool:
    """Rebuild b, T, c and z0 from the current basis; False if the basis is singular."""
    basis = A[:, tab.basic]
    rhs = np.column_stack([np.ones(A.shape[0]), A[:, tab.nonbasic]])
    try:
        solved = np.linalg.solve(basis, rhs)
    except np.linalg.LinAlgError:
        return False
    if not np.all(np.isfinite(solved)):
        return False
    tab.b = np.maximum(solved[:, 0], 0.0)
    tab.T = np.ascontiguousarray(solved[:, 1:])
    c_basic = cost[tab.basic]
    tab.c = cost[tab.nonbasic] - c_basic @ tab.T
    tab.z0 = float(c_basic @ tab.b)
    return True


def _leaving_row(tab: _Tableau, column: np.ndarray) -> Optional[int]:
    """Harris two-pass ratio test; ties on the pivot size go to the lowest basic label."""
    rows = np.flatnonzero(column > PIVOT_TOLERANCE)
    if rows.size == 0:
        return None
    b = tab.b[rows]
    step = float(np.min((b + HARRIS_TOLERANCE) / column[rows]))
    eligible = rows[b / column[rows] <= step]
    pivots = column[eligible]
    largest = eligible[pivots >= float(np.max(pivots))]
    return int(largest[np.argmin(tab.basic[largest])])


def _certified(K: np.ndarray, v: np.ndarray, y: np.ndarray, m: np.ndarray) -> bool:
    """Primal and dual feasibility of (m, y) with a closed duality gap."""
    primal = bool(np.all(K @ m >= v - SLACK_TOLERANCE * np.maximum(1.0, v)))
    dual = bool(np.all(K.T @ y <= 1.0 + DUALITY_TOLERANCE))
    mass = float(np.sum(m))
    return primal and dual and abs(mass - float(v @ y)) <= DUALITY_TOLERANCE * max(1.0, mass)


def _solve_dual_highs(K: np.ndarray, v: np.ndarray) -> tuple[SolveStatus, np.ndarray, np.ndarray]:
    """The same dual LP through HiGHS; masses are the negated constraint marginals."""
    n_c, n_g = K.shape
    res = linprog(
        -v,
        A_ub=K.T,
        b_ub=np.ones(n_g),
        bounds=[(0.0, None)] * n_c,
        method="highs",
    )
    if res.status != 0:
        logger.debug("HiGHS ended with status %d: %s", res.status, res.message)
        return SolveStatus.INFEASIBLE_NUMERICS, np.zeros(n_c), np.zeros(n_g)
    y = np.maximum(np.asarray(res.x, dtype=float), 0.0)
    m = np.maximum(-np.asarray(res.ineqlin.marginals, dtype=float), 0.0)
    return SolveStatus.OPTIMAL, y, m


def _solve_dual(K: np.ndarray, v: np.ndarray) -> tuple[SolveStatus, np.ndarray, np.ndarray, int]:
    """Solve max v·y s.t. K^T y <= 1, y >= 0 for a (constraints x grid) kernel block.

    Bland's rule picks the entering column and a Harris ratio test the leaving row; the
    tableau is rebuilt from its basis every ``REFACTOR_INTERVAL`` pivots. A result that
    fails its primal/dual check is recomputed with HiGHS.

    Returns status, dual solution y, primal masses m and the pivot count.
    """
    n_c, n_g = K.shape
    A = np.hstack([K.T, np.eye(n_g)])
    cost = np.concatenate([v.astype(float), np.zeros(n_g)])
    tab = _Tableau(
        T=K.T.copy(),
        b=np.ones(n_g),
        c=v.astype(float).copy(),
        basic=np.arange(n_c, n_c + n_g),
        nonbasic=np.arange(n_c),
    )
    opt_tol = PIVOT_TOLERANCE * max(1.0, float(np.max(v)) if v.size else 1.0)

    pivots = 0
    status = SolveStatus.OPTIMAL
    while True:
        candidates = np.flatnonzero(tab.c > opt_tol)
        if candidates.size == 0:
            break
        if pivots >= MAX_PIVOTS:
            status = SolveStatus.INFEASIBLE_NUMERICS
            break
        s = int(candidates[np.argmin(tab.nonbasic[candidates])])
        r = _leaving_row(tab, tab.T[:, s])
        if r is None:
            status = SolveStatus.UNBOUNDED_IMPOSSIBLE
            break
        tab.pivot(r, s)
        np.maximum(tab.b, 0.0, out=tab.b)
        pivots += 1
        if pivots % REFACTOR_INTERVAL == 0 and not _refactor(tab, A, cost):
            logger.debug("basis singular at pivot %d, keeping the updated tableau", pivots)

    if status == SolveStatus.OPTIMAL and pivots >= REFACTOR_INTERVAL:
        _refactor(tab, A, cost)

    y = np.zeros(n_c)
    m = np.zeros(n_g)
    for r, label in enumerate(tab.basic):
        if label < n_c:
            y[label] = max(tab.b[r], 0.0)
    for s, label in enumerate(tab.nonbasic):
        if label >= n_c:
            m[label - n_c] = max(-tab.c[s], 0.0)
    logger.debug("simplex on %dx%d finished after %d pivots (%s)", n_c, n_g, pivots, status)

    if status != SolveStatus.OPTIMAL or not _certified(K, v, y, m):
        logger.info(
            "tableau on %dx%d not certified after %d pivots, using HiGHS", n_c, n_g, pivots
        )
        status, y, m = _solve_dual_highs(K, v)
    return status, y, m, pivots


# ==================== Working-Set Solver ====================


def _kernel_times(points: np.ndarray, angles: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """P(points, angles) @ weights, in row blocks."""
    out = np.zeros(points.size)
    if not angles.size:
        return out
    for start in range(0, points.size, _SCAN_BLOCK):
        chunk = points[start : start + _SCAN_BLOCK]
        out[start : start + _SCAN_BLOCK] = poisson_kernel_many(chunk, angles) @ weights
    return out


def _kernel_transpose_times(points: np.ndarray, angles: np.ndarray, y: np.ndarray) -> np.ndarray:
    """P(points, angles)^T @ y, in column blocks."""
    out = np.zeros(angles.size)
    if not points.size:
        return out
    for start in range(0, angles.size, _SCAN_BLOCK):
        chunk = angles[start : start + _SCAN_BLOCK]
        out[start : start + _SCAN_BLOCK] = poisson_kernel_many(points, chunk).T @ y
    return out


def _nearest_angles(points: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Index of the grid angle closest to each point's argument."""
    theta = np.mod(np.angle(points), TWO_PI)
    idx = np.searchsorted(grid, theta) % grid.size
    prev = (idx - 1) % grid.size
    d_idx = np.abs(np.angle(np.exp(1j * (grid[idx] - theta))))
    d_prev = np.abs(np.angle(np.exp(1j * (grid[prev] - theta))))
    return np.where(d_prev < d_idx, prev, idx)


def _top(scores: np.ndarray, exclude: np.ndarray, count: int) -> np.ndarray:
    """Indices of the ``count`` largest positive scores not in ``exclude``."""
    scores = scores.copy()
    scores[exclude] = -np.inf
    hits = np.flatnonzero(scores > 0.0)
    if hits.size > count:
        hits = hits[np.argsort(-scores[hits], kind="stable")[:count]]
    return np.sort(hits)


def min_mass(
    constraints: ConstraintSet,
    grid: Union[int, np.ndarray],
    batch: int = WORKING_SET_BATCH,
) -> SolveReport:
    """Exact optimum of the minimal-mass LP over a finite boundary grid.

    Args:
        constraints: Target values at disc points; zero targets are inactive.
        grid: Either n (equispaced angles plus the projections of the constraint points)
            or an explicit array of angles.
        batch: Constraints and grid angles added per working-set round.

    Returns:
        A SolveReport. Its status is ``optimal`` only when the measure satisfies every
        constraint within the slack tolerance and the dual certificate closes the gap.
    """
    angles = (
        boundary_grid(grid, constraints.points)
        if isinstance(grid, (int, np.integer))
        else np.unique(np.mod(np.asarray(grid, dtype=float), TWO_PI))
    )
    if angles.size == 0:
        raise DomainError("boundary grid is empty")

    pts, vals = constraints.points, constraints.values
    active = np.flatnonzero(vals > 0.0)
    if active.size == 0:
        return SolveReport(
            optimal_mass=0.0,
            measure=BoundaryMeasure(),
            status=SolveStatus.OPTIMAL,
            slack=_kernel_times(pts, angles, np.zeros(angles.size)) - vals,
            dual=np.zeros(len(constraints)),
            grid_size=int(angles.size),
        )

    a_pts, a_vals = pts[active], vals[active]
    seed_rows = np.sort(np.argsort(-a_vals, kind="stable")[:batch])
    rows = seed_rows
    cols = np.unique(_nearest_angles(a_pts[rows], angles))

    status = SolveStatus.OPTIMAL
    pivots = 0
    rounds = 0
    y_w = np.zeros(rows.size)
    m_w = np.zeros(cols.size)
    while rounds < _MAX_ROUNDS:
        rounds += 1
        K = poisson_kernel_many(a_pts[rows], angles[cols])
        status, y_w, m_w, count = _solve_dual(K, a_vals[rows])
        pivots += count
        if status != SolveStatus.OPTIMAL:
            break

        values = _kernel_times(a_pts, angles[cols], m_w)
        deficit = (a_vals - values) - SLACK_TOLERANCE * np.maximum(1.0, a_vals) * 0.1
        new_rows = _top(deficit, rows, batch)

        load = _kernel_transpose_times(a_pts[rows], angles, y_w)
        new_cols = _top(load - (1.0 + DUALITY_TOLERANCE * 0.1), cols, batch)

        logger.debug(
            "working set round %d: %d constraints, %d angles, +%d/+%d",
            rounds,
            rows.size,
            cols.size,
            new_rows.size,
            new_cols.size,
        )
        if new_rows.size == 0 and new_cols.size == 0:
            break
        rows = np.union1d(rows, new_rows)
        cols = np.union1d(cols, new_cols)
    else:
        status = SolveStatus.INFEASIBLE_NUMERICS

    def assemble(y_w: np.ndarray, m_w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        masses = np.zeros(angles.size)
        masses[cols] = m_w
        dual = np.zeros(len(constraints))
        dual[active[rows]] = y_w
        keep = np.flatnonzero(masses > 0.0)
        return masses, dual, _kernel_times(pts, angles[keep], masses[keep]) - vals

    def verified(masses: np.ndarray, dual: np.ndarray, slack: np.ndarray) -> bool:
        mass = float(np.sum(masses))
        feasible = bool(np.all(slack >= -SLACK_TOLERANCE * np.maximum(1.0, vals)))
        load = _kernel_transpose_times(pts[dual > 0], angles, dual[dual > 0])
        return (
            feasible
            and abs(mass - float(dual @ vals)) <= DUALITY_TOLERANCE * max(1.0, mass)
            and bool(np.all(load <= 1.0 + DUALITY_TOLERANCE))
        )

    masses, dual, slack = assemble(y_w, m_w)
    if status == SolveStatus.OPTIMAL and not verified(masses, dual, slack):
        logger.info("working-set optimum failed verification, re-solving it with HiGHS")
        K = poisson_kernel_many(a_pts[rows], angles[cols])
        status, y_w, m_w = _solve_dual_highs(K, a_vals[rows])
        masses, dual, slack = assemble(y_w, m_w)
        if status == SolveStatus.OPTIMAL and not verified(masses, dual, slack):
            logger.warning(
                "solve failed verification (min slack %.3g, duality gap %.3g)",
                float(np.min(slack)),
                abs(float(np.sum(masses)) - float(dual @ vals)),
            )
            status = SolveStatus.INFEASIBLE_NUMERICS

    keep = np.flatnonzero(masses > 0.0)
    measure = BoundaryMeasure(
        atom_thetas=tuple(float(t) for t in angles[keep]),
        atom_masses=tuple(float(m) for m in masses[keep]),
    )
    optimal_mass = float(np.sum(masses))
    gap = abs(optimal_mass - float(dual @ vals))

    logger.debug(
        "min_mass: %d constraints, %d angles, mass %.12g in %d rounds",
        len(constraints),
        angles.size,
        optimal_mass,
        rounds,
    )
    return SolveReport(
        optimal_mass=optimal_mass,
        measure=measure,
        status=status,
        slack=slack,
        dual=dual,
        grid_size=int(angles.size),
        pivots=pivots,
        rounds=rounds,
        duality_gap=gap,
    )


# ==================== Oracle ====================


def dual_vertex_optimum(constraints: ConstraintSet, grid: np.ndarray) -> float:
    """Optimum of the dual LP by enumerating every vertex of its polytope.

    Exponential in the problem size; intended for a handful of constraints and angles.
    """
    pts, vals = constraints.points, constraints.values
    n = pts.size
    if n == 0:
        return 0.0
    angles = np.asarray(grid, dtype=float)
    K = poisson_kernel_many(pts, angles)
    # every inequality as a·y <= b: rows of K^T, then -y_i <= 0
    A = np.vstack([K.T, -np.eye(n)])
    bounds = np.concatenate([np.ones(angles.size), np.zeros(n)])

    best = 0.0
    for active in itertools.combinations(range(A.shape[0]), n):
        sub = A[list(active)]
        if abs(np.linalg.det(sub)) < 1e-14:
            continue
        y = np.linalg.solve(sub, bounds[list(active)])
        if np.all(A @ y <= bounds + 1e-10):
            best = max(best, float(vals @ y))
    return best
