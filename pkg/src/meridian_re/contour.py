"""Zero set of the shape condition over the (x, a) plane.

The four isosceles lines are known in closed form; each one that ``f``
actually vanishes on is emitted analytically and divided out of the traced
function, so marching squares only sees the scalene curve. The traced function
is ``f`` times the product of the pair denominators, which is continuous across
collision and antipodal lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._roots import bisect_vectorized
from .errors import PreconditionError
from .geometry import TWO_PI
from .potential import ATTRACTIVE, PotentialModel, Variant

__all__ = [
    "BRANCH_SCALENE",
    "LINE_BRANCHES",
    "EXCLUDED_POINTS",
    "ContourGrid",
    "Polyline",
    "ContourSet",
    "scan_and_trace",
    "emit_contour",
    "shape_condition_grid",
]

BRANCH_SCALENE = "scalene-curve"
_LINE_GUARD = 1e-7
_NUDGE = 1e-5

# branch label -> (x on the line as a function of a, vanishing factor)
_LINES = {
    "line x=2a": (lambda a: 2.0 * a, lambda a, x: np.sin(0.5 * (x - 2.0 * a))),
    "line x=a/2": (lambda a: 0.5 * a, lambda a, x: np.sin(0.5 * (x - 0.5 * a))),
    "line x=a/2-pi": (lambda a: 0.5 * a - math.pi, lambda a, x: np.cos(0.5 * (x - 0.5 * a))),
    "line x=-a": (lambda a: -a, lambda a, x: np.sin(0.5 * (x + a))),
}
LINE_BRANCHES = tuple(_LINES)

# (x, a) points where the isosceles lines meet collision / antipodal lines
EXCLUDED_POINTS = (
    (-math.pi, math.pi / 2),
    (math.pi, math.pi / 2),
    (-math.pi / 2, math.pi / 2),
    (0.0, math.pi / 2),
    (math.pi / 2, math.pi / 2),
)


@dataclass(frozen=True)
class ContourGrid:
    a_range: tuple[float, float] = (0.0, math.pi)
    x_range: tuple[float, float] = (-math.pi, math.pi)
    resolution: int = 800
    exclusions: tuple[tuple[float, float], ...] = EXCLUDED_POINTS
    puncture_radius: float = 1e-3

    def __post_init__(self) -> None:
        if self.resolution < 16:
            raise PreconditionError(f"resolution must be at least 16, got {self.resolution!r}")
        for lo, hi in (self.a_range, self.x_range):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise PreconditionError(f"invalid range ({lo!r}, {hi!r})")
        if not self.puncture_radius >= 0.0:
            raise PreconditionError("puncture_radius must be nonnegative")

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell-centred sample positions ``(a, x)``; they avoid the range endpoints."""
        n = self.resolution
        k = np.arange(n) + 0.5
        a0, a1 = self.a_range
        x0, x1 = self.x_range
        return a0 + k * (a1 - a0) / n, x0 + k * (x1 - x0) / n

    @property
    def cell(self) -> tuple[float, float]:
        """Grid spacing ``(da, dx)``."""
        n = self.resolution
        return ((self.a_range[1] - self.a_range[0]) / n, (self.x_range[1] - self.x_range[0]) / n)


@dataclass
class Polyline:
    branch: str
    points: np.ndarray  # (k, 2) columns (x, a)


@dataclass
class ContourSet:
    polylines: list[Polyline]
    grid: ContourGrid
    skipped_cells: int = 0
    rejected_crossings: int = 0
    verified_lines: tuple[str, ...] = field(default=())

    def branch_points(self, branch: str) -> np.ndarray:
        pts = [p.points for p in self.polylines if p.branch == branch]
        return np.vstack(pts) if pts else np.empty((0, 2))


# ---------------------------------------------------------------------------
# vectorized shape condition
# ---------------------------------------------------------------------------


def _signed_sq(t):
    s = np.sin(t)
    return s * np.abs(s)


def _kinetics_grid(a, x, model: PotentialModel):
    """Vectorized pair terms ``(G, F, S)`` with ``S_p = sin t_p |sin t_p|`` per pair."""
    m = model.masses
    sign = -1.0 if model.variant is Variant.REPULSIVE else 1.0
    positions = (np.zeros_like(a), a, x)
    G = []
    F = []
    S = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        t = positions[j] - positions[i]
        G.append(m[i] * m[j] * np.sin(2.0 * t))
        sq = _signed_sq(t)
        S.append(sq)
        with np.errstate(divide="ignore", invalid="ignore"):
            F.append(sign * model.coupling(i, j) / sq)
    return G, F, S


def shape_condition_grid(a, x, model: PotentialModel = ATTRACTIVE):
    """``(f * D, f / force_scale)`` on arrays, with ``D`` the product of ``sin t |sin t|`` over pairs.

    ``f * D`` is assembled without dividing, so it stays finite on
    collision and antipodal lines.
    """
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    G, F, S = _kinetics_grid(a, x, model)
    sign = -1.0 if model.variant is Variant.REPULSIVE else 1.0
    k = [sign * model.coupling(i, j) for i, j in ((0, 1), (1, 2), (2, 0))]
    # F_p * D = k_p * prod_{q != p} S_q
    FD = [k[0] * S[1] * S[2], k[1] * S[0] * S[2], k[2] * S[0] * S[1]]
    fD = (G[0] - G[1]) * (FD[2] - FD[0]) - (G[2] - G[0]) * (FD[0] - FD[1])
    with np.errstate(divide="ignore", invalid="ignore"):
        f = (G[0] - G[1]) * (F[2] - F[0]) - (G[2] - G[0]) * (F[0] - F[1])
        f_norm = f / (np.abs(F[0]) + np.abs(F[1]) + np.abs(F[2]))
    return fD, f_norm


def _line_holds(branch: str, grid: ContourGrid, model: PotentialModel, tol: float) -> bool:
    """Sample ``f`` along an isosceles line and report whether it vanishes there."""
    x_of_a, _ = _LINES[branch]
    a = np.linspace(grid.a_range[0], grid.a_range[1], 67)[1:-1]
    x = np.remainder(x_of_a(a) + math.pi, TWO_PI) - math.pi
    _, f_norm = shape_condition_grid(a, x, model)
    f_norm = f_norm[np.isfinite(f_norm)]
    return f_norm.size > 0 and bool(np.all(np.abs(f_norm) < tol))


# ---------------------------------------------------------------------------
# tracing
# ---------------------------------------------------------------------------


def scan_and_trace(
    grid: ContourGrid | None = None, model: PotentialModel = ATTRACTIVE, tol: float = 1e-9
) -> ContourSet:
    """Trace the zero set of ``f`` on ``grid``.

    Sign changes on grid edges are refined by 80 bisection steps and kept
    only if ``|f|`` (normalized by the force scale) is below ``tol`` there;
    cells crossed by a collision or antipodal line are skipped.
    """
    grid = grid or ContourGrid()
    if not tol > 0.0:
        raise PreconditionError(f"tol must be positive, got {tol!r}")

    verified = tuple(b for b in LINE_BRANCHES if _line_holds(b, grid, model, tol))
    factors = [_LINES[b][1] for b in verified]

    def divided(a, x):
        fD, _ = shape_condition_grid(a, x, model)
        for factor in factors:
            fD = fD / factor(a, x)
        return fD

    def traced(a, x):
        # on a divided-out line the quotient is 0/0; it is smooth there, so
        # average two nudged samples instead
        a = np.asarray(a, dtype=float)
        x = np.asarray(x, dtype=float)
        out = divided(a, x)
        if factors:
            near = np.zeros(out.shape, dtype=bool)
            for factor in factors:
                near |= np.abs(factor(a, x)) < _LINE_GUARD
            if near.any():
                an, xn = a[near], x[near]
                out = np.array(out, dtype=float)
                out[near] = 0.5 * (divided(an, xn + _NUDGE) + divided(an, xn - _NUDGE))
        return out

    a_nodes, x_nodes = grid.nodes()
    A, X = np.meshgrid(a_nodes, x_nodes, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        T = traced(A, X)
    finite = np.isfinite(T)

    # cells straddling sin(theta_ij) = 0 (body 1 is at 0, so only x and x - a matter)
    sx = np.signbit(np.sin(X))
    sxa = np.signbit(np.sin(X - A))
    singular_node = ~finite

    def cell_reduce(mask, how):
        return how.reduce([mask[:-1, :-1], mask[1:, :-1], mask[:-1, 1:], mask[1:, 1:]])

    degenerate = (
        cell_reduce(sx, np.logical_or) != cell_reduce(sx, np.logical_and)
    ) | (cell_reduce(sxa, np.logical_or) != cell_reduce(sxa, np.logical_and)) | cell_reduce(
        singular_node, np.logical_or
    )

    neg = np.signbit(T)
    # horizontal edges: (i, j) -> (i, j+1); vertical edges: (i, j) -> (i+1, j)
    h_cross = (neg[:, :-1] != neg[:, 1:]) & finite[:, :-1] & finite[:, 1:]
    v_cross = (neg[:-1, :] != neg[1:, :]) & finite[:-1, :] & finite[1:, :]

    def refine(cross, da, dx):
        ii, jj = np.nonzero(cross)
        a0 = A[ii, jj]
        x0 = X[ii, jj]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = bisect_vectorized(lambda t: traced(a0 + t * da, x0 + t * dx), np.zeros(ii.size), np.ones(ii.size))
            pa = a0 + t * da
            px = x0 + t * dx
            _, f_norm = shape_condition_grid(pa, px, model)
        ok = np.abs(f_norm) < tol
        return ii, jj, px, pa, ok

    da, dx = grid.cell
    h = refine(h_cross, 0.0, dx)
    v = refine(v_cross, da, 0.0)
    rejected = int((~h[4]).sum() + (~v[4]).sum())

    points: dict[tuple, tuple[float, float]] = {}
    for tag, (ii, jj, px, pa, ok) in (("h", h), ("v", v)):
        for i, j, xx, aa, good in zip(ii, jj, px, pa, ok):
            if good and not _punctured(xx, aa, grid):
                points[(tag, int(i), int(j))] = (float(xx), float(aa))

    segments = []
    n = grid.resolution
    cells = set()
    for tag, i, j in points:
        if tag == "h":
            cells.update({(i, j), (i - 1, j)})
        else:
            cells.update({(i, j), (i, j - 1)})
    for i, j in sorted(cells):
        if not (0 <= i < n - 1 and 0 <= j < n - 1) or degenerate[i, j]:
            continue
        edges = [e for e in (("h", i, j), ("h", i + 1, j), ("v", i, j), ("v", i, j + 1)) if e in points]
        if len(edges) == 2:
            segments.append(tuple(edges))
        elif len(edges) == 4:
            # saddle: pair by the sign at the cell centre
            with np.errstate(divide="ignore", invalid="ignore"):
                centre = traced(np.array(A[i, j] + 0.5 * da), np.array(X[i, j] + 0.5 * dx))
            if np.signbit(centre) == neg[i, j]:
                segments += [(("h", i, j), ("v", i, j + 1)), (("h", i + 1, j), ("v", i, j))]
            else:
                segments += [(("h", i, j), ("v", i, j)), (("h", i + 1, j), ("v", i, j + 1))]

    polylines = [
        Polyline(BRANCH_SCALENE, np.array([points[e] for e in chain]))
        for chain in _link(segments)
    ]
    for branch in verified:
        polylines.extend(_analytic_line(branch, grid))
    return ContourSet(polylines, grid, int(degenerate.sum()), rejected, verified)


def _punctured(x: float, a: float, grid: ContourGrid) -> bool:
    r = grid.puncture_radius
    return any(math.hypot(x - ex, a - ea) < r for ex, ea in grid.exclusions)


def _link(segments):
    """Chain segments sharing endpoints into ordered vertex lists."""
    adjacency: dict = {}
    for k, (p, q) in enumerate(segments):
        adjacency.setdefault(p, []).append(k)
        adjacency.setdefault(q, []).append(k)
    used = [False] * len(segments)
    chains = []
    # start from chain ends first so open curves come out whole
    starts = [p for p, ks in adjacency.items() if len(ks) == 1] + list(adjacency)
    for start in starts:
        for k0 in adjacency[start]:
            if used[k0]:
                continue
            chain = [start]
            current, k = start, k0
            while k is not None:
                used[k] = True
                p, q = segments[k]
                current = q if p == current else p
                chain.append(current)
                k = next((kk for kk in adjacency[current] if not used[kk]), None)
            chains.append(chain)
    return chains


def _analytic_line(branch: str, grid: ContourGrid) -> list[Polyline]:
    x_of_a, _ = _LINES[branch]
    a_nodes, _ = grid.nodes()
    x = np.remainder(x_of_a(a_nodes) + math.pi, TWO_PI) - math.pi
    keep = (x > grid.x_range[0]) & (x < grid.x_range[1])
    keep &= np.array([not _punctured(float(xx), float(aa), grid) for xx, aa in zip(x, a_nodes)])
    # break at wraps and at removed samples
    out = []
    run: list[tuple[float, float]] = []
    prev_x = None
    for xx, aa, k in zip(x, a_nodes, keep):
        if not k or (prev_x is not None and abs(xx - prev_x) > math.pi):
            if len(run) > 1:
                out.append(Polyline(branch, np.array(run)))
            run = []
        if k:
            run.append((float(xx), float(aa)))
        prev_x = xx
    if len(run) > 1:
        out.append(Polyline(branch, np.array(run)))
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def emit_contour(contours: ContourSet, coords: str = "xa") -> list[tuple[str, float, float]]:
    """Rows ``(branch, coord1, coord2)``: ``(x, a)`` for ``"xa"``, ``(y, a)`` for ``"ya"``.

    ``y = x - a/2`` is wrapped into (-pi, pi]; ``y = -pi`` and ``y = pi``
    name the same line.
    """
    coords = coords.lower()
    if coords not in ("xa", "ya"):
        raise PreconditionError(f"coords must be 'xa' or 'ya', got {coords!r}")
    if not contours.polylines:
        raise PreconditionError("contour set is empty")
    rows = []
    for poly in contours.polylines:
        for x, a in poly.points:
            c1 = float(x)
            if coords == "ya":
                c1 = math.remainder(c1 - 0.5 * a, TWO_PI)
                if c1 <= -math.pi:
                    c1 += TWO_PI
            rows.append((poly.branch, c1, float(a)))
    return rows
