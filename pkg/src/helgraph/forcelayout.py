"""Iterative force-directed refinement with traction-gated auto-stop.

The model follows the classic degree-weighted scheme: attraction along edges
equal to the distance, repulsion ``scale * (deg+1)(deg'+1) / distance``,
constant-magnitude gravity toward the origin, and an adaptive per-node speed
damped by swinging (``|F_t - F_{t-1}|``). Auto-stop triggers when the mean
node traction (``|F_t + F_{t-1}| / 2``) drops below the configured threshold.

Repulsion is exact (vectorized pairwise) up to ``barnes_hut_cutover`` visible
nodes. Beyond that a quadtree-pyramid approximation takes over: per-level
mass/centroid grids with parent-neighbor interaction lists aggregate the far
field, and only cells within the near radius (derived from ``theta``) get
exact pairwise treatment. Everything reduces in a fixed order, so equal
inputs produce bitwise-equal outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import UnknownIdError

_JITTER_TOLERANCE = 1.0
_MAX_GLOBAL_SPEED = 10.0
_MAX_DISPLACEMENT = 50.0
_MIN_D2 = 1e-12


@dataclass(frozen=True)
class ForceConfig:
    repulsion_scale: float = 10.0
    gravity: float = 1.0
    edge_weight_influence: float = 0.0
    traction_threshold: float = 1.0
    max_iterations: int = 1000
    barnes_hut_theta: float = 1.2
    barnes_hut_cutover: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.repulsion_scale <= 0:
            raise ValueError("repulsion_scale must be positive")
        if self.gravity < 0:
            raise ValueError("gravity must be non-negative")
        if self.traction_threshold < 0:
            raise ValueError("traction_threshold must be non-negative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.barnes_hut_theta <= 0:
            raise ValueError("barnes_hut_theta must be positive")


@dataclass(frozen=True, eq=False)
class LayoutState:
    """Positions and convergence bookkeeping for one visible node set."""

    ids: tuple[str, ...]
    positions: np.ndarray  # (n, 2) float64, row i belongs to ids[i]
    prev_forces: np.ndarray  # (n, 2) float64
    pinned: frozenset[str] = frozenset()
    converged: bool = False
    iteration: int = 0

    @classmethod
    def from_positions(
        cls,
        positions: Mapping[str, tuple[float, float]],
        pinned: Iterable[str] = (),
    ) -> "LayoutState":
        ids = tuple(sorted(positions))
        coords = np.array([positions[i] for i in ids], dtype=np.float64).reshape(
            len(ids), 2
        )
        return cls(
            ids=ids,
            positions=coords,
            prev_forces=np.zeros_like(coords),
            pinned=frozenset(pinned) & set(ids),
        )

    def index_of(self, node_id: str) -> int:
        try:
            return self.ids.index(node_id)
        except ValueError:
            raise UnknownIdError(node_id) from None

    def position_of(self, node_id: str) -> tuple[float, float]:
        x, y = self.positions[self.index_of(node_id)]
        return float(x), float(y)

    def to_dict(self) -> dict[str, tuple[float, float]]:
        return {
            node_id: (float(x), float(y))
            for node_id, (x, y) in zip(self.ids, self.positions)
        }


def _edge_arrays(
    ids: Sequence[str], edges: Iterable[tuple]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Deduplicated undirected edge index arrays plus weights."""
    index = {node_id: i for i, node_id in enumerate(ids)}
    seen: dict[tuple[int, int], float] = {}
    for edge in edges:
        source, target = edge[0], edge[1]
        weight = float(edge[2]) if len(edge) > 2 else 1.0
        si = index.get(source)
        ti = index.get(target)
        if si is None or ti is None or si == ti:
            continue
        key = (si, ti) if si < ti else (ti, si)
        seen.setdefault(key, weight)
    if not seen:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty, np.zeros(0)
    pairs = sorted(seen)
    src = np.array([p[0] for p in pairs], dtype=np.intp)
    dst = np.array([p[1] for p in pairs], dtype=np.intp)
    weights = np.array([seen[p] for p in pairs], dtype=np.float64)
    return src, dst, weights


def _exact_repulsion(pos: np.ndarray, mass: np.ndarray, scale: float) -> np.ndarray:
    dx = pos[:, 0][:, None] - pos[:, 0][None, :]
    dy = pos[:, 1][:, None] - pos[:, 1][None, :]
    d2 = dx * dx + dy * dy
    np.fill_diagonal(d2, 1.0)
    d2 = np.maximum(d2, _MIN_D2)
    strength = scale * (mass[:, None] * mass[None, :]) / d2
    np.fill_diagonal(strength, 0.0)
    return np.stack(((strength * dx).sum(axis=1), (strength * dy).sum(axis=1)), axis=1)


def _near_radius(theta: float) -> int:
    return max(1, int(math.ceil(1.0 / theta - 1e-9)))


def _interaction_lists(radius: int) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Per child parity: same-level cell offsets whose parents are near but
    which are themselves outside the near zone. Partitions all far pairs."""
    lists: dict[tuple[int, int], list[tuple[int, int]]] = {}
    span = 2 * radius + 1
    for px in (0, 1):
        for py in (0, 1):
            offsets = []
            for dx in range(-span, span + 1):
                for dy in range(-span, span + 1):
                    if max(abs(dx), abs(dy)) <= radius:
                        continue
                    parent_dx = (px + dx) // 2
                    parent_dy = (py + dy) // 2
                    if max(abs(parent_dx), abs(parent_dy)) <= radius:
                        offsets.append((dx, dy))
            lists[(px, py)] = offsets
    return lists


def _pyramid_repulsion(
    pos: np.ndarray, mass: np.ndarray, scale: float, theta: float
) -> np.ndarray:
    n = len(pos)
    radius = _near_radius(theta)
    level = max(2, min(7, int(math.ceil(math.log(max(n, 4), 4)))))
    grid = 1 << level

    mins = pos.min(axis=0)
    maxs = pos.max(axis=0)
    side = float(max(maxs[0] - mins[0], maxs[1] - mins[1]))
    if side <= 0.0:
        return np.zeros_like(pos)
    side *= 1.0 + 1e-9
    cell = side / grid
    ix = np.clip(((pos[:, 0] - mins[0]) / cell).astype(np.intp), 0, grid - 1)
    iy = np.clip(((pos[:, 1] - mins[1]) / cell).astype(np.intp), 0, grid - 1)
    lin = ix * grid + iy

    # Mass and weighted-position pyramids, finest level first.
    cells = grid * grid
    mass_grids = [np.bincount(lin, weights=mass, minlength=cells).reshape(grid, grid)]
    sx_grids = [
        np.bincount(lin, weights=mass * pos[:, 0], minlength=cells).reshape(grid, grid)
    ]
    sy_grids = [
        np.bincount(lin, weights=mass * pos[:, 1], minlength=cells).reshape(grid, grid)
    ]
    for _ in range(level - 2):
        for grids in (mass_grids, sx_grids, sy_grids):
            g = grids[-1]
            half = g.shape[0] // 2
            grids.append(g.reshape(half, 2, half, 2).sum(axis=(1, 3)))
    mass_grids.reverse()  # now coarsest (4x4) first
    sx_grids.reverse()
    sy_grids.reverse()

    lists = _interaction_lists(radius)
    field_x: Optional[np.ndarray] = None
    field_y: Optional[np.ndarray] = None
    for depth, (m_grid, sx_grid, sy_grid) in enumerate(
        zip(mass_grids, sx_grids, sy_grids)
    ):
        g = m_grid.shape[0]
        safe_mass = np.maximum(m_grid, 1e-300)
        cx = sx_grid / safe_mass
        cy = sy_grid / safe_mass
        fx = np.zeros_like(m_grid)
        fy = np.zeros_like(m_grid)
        if field_x is not None:
            fx += field_x.repeat(2, axis=0).repeat(2, axis=1)
            fy += field_y.repeat(2, axis=0).repeat(2, axis=1)
        for (px, py), offsets in lists.items():
            for dx, dy in offsets:
                tx0 = max(0, -dx)
                tx0 += (px - tx0) % 2
                ty0 = max(0, -dy)
                ty0 += (py - ty0) % 2
                tx1 = g - max(0, dx)
                ty1 = g - max(0, dy)
                if tx0 >= tx1 or ty0 >= ty1:
                    continue
                t_slice = (slice(tx0, tx1, 2), slice(ty0, ty1, 2))
                s_slice = (slice(tx0 + dx, tx1 + dx, 2), slice(ty0 + dy, ty1 + dy, 2))
                ddx = cx[t_slice] - cx[s_slice]
                ddy = cy[t_slice] - cy[s_slice]
                d2 = np.maximum(ddx * ddx + ddy * ddy, _MIN_D2)
                w = m_grid[s_slice] / d2
                fx[t_slice] += w * ddx
                fy[t_slice] += w * ddy
        field_x, field_y = fx, fy

    forces = np.empty_like(pos)
    forces[:, 0] = scale * mass * field_x.reshape(-1)[lin]
    forces[:, 1] = scale * mass * field_y.reshape(-1)[lin]

    # Exact near field: pairs within the chebyshev near radius at the finest level.
    order = np.argsort(lin, kind="stable")
    counts = np.bincount(lin, minlength=cells)
    starts = np.concatenate(([0], np.cumsum(counts)))[:-1]
    all_nodes = np.arange(n, dtype=np.intp)
    for dx in range(-radius, radius + 1):
        for dy in range(-radius, radius + 1):
            tx = ix + dx
            ty = iy + dy
            valid = (tx >= 0) & (tx < grid) & (ty >= 0) & (ty < grid)
            if not valid.any():
                continue
            tlin = tx[valid] * grid + ty[valid]
            group_counts = counts[tlin]
            total = int(group_counts.sum())
            if total == 0:
                continue
            i_nodes = np.repeat(all_nodes[valid], group_counts)
            ends = np.cumsum(group_counts)
            first = np.repeat(ends - group_counts, group_counts)
            j_sorted = np.repeat(starts[tlin], group_counts) + (
                np.arange(total) - first
            )
            j_nodes = order[j_sorted]
            keep = i_nodes != j_nodes
            i_nodes = i_nodes[keep]
            j_nodes = j_nodes[keep]
            delta = pos[i_nodes] - pos[j_nodes]
            d2 = np.maximum((delta * delta).sum(axis=1), _MIN_D2)
            strength = scale * mass[i_nodes] * mass[j_nodes] / d2
            np.add.at(forces, i_nodes, strength[:, None] * delta)
    return forces


@dataclass(frozen=True, eq=False)
class _Prepared:
    """Edge/index arrays reused across the iterations of one auto-run."""

    src: np.ndarray
    dst: np.ndarray
    weights: np.ndarray
    mass: np.ndarray
    pinned_mask: Optional[np.ndarray]


def _prepare(state: LayoutState, edges: Iterable[tuple]) -> _Prepared:
    n = len(state.ids)
    src, dst, weights = _edge_arrays(state.ids, edges)
    degree = np.zeros(n, dtype=np.float64)
    if len(src):
        np.add.at(degree, src, 1.0)
        np.add.at(degree, dst, 1.0)
    pinned_mask = None
    if state.pinned:
        pinned_mask = np.fromiter(
            (node_id in state.pinned for node_id in state.ids), dtype=bool, count=n
        )
    return _Prepared(
        src=src, dst=dst, weights=weights, mass=degree + 1.0, pinned_mask=pinned_mask
    )


def _net_forces(
    pos: np.ndarray, prepared: _Prepared, config: ForceConfig
) -> np.ndarray:
    n = len(pos)
    if n <= config.barnes_hut_cutover:
        forces = _exact_repulsion(pos, prepared.mass, config.repulsion_scale)
    else:
        forces = _pyramid_repulsion(
            pos, prepared.mass, config.repulsion_scale, config.barnes_hut_theta
        )

    if len(prepared.src):
        delta = pos[prepared.dst] - pos[prepared.src]
        if config.edge_weight_influence != 0.0:
            influence = np.power(prepared.weights, config.edge_weight_influence)
            delta = delta * influence[:, None]
        np.add.at(forces, prepared.src, delta)
        np.add.at(forces, prepared.dst, -delta)

    if config.gravity > 0.0:
        dist = np.sqrt((pos * pos).sum(axis=1))
        nonzero = dist > 0.0
        pull = np.zeros_like(pos)
        pull[nonzero] = -pos[nonzero] / dist[nonzero, None]
        forces += pull * (config.gravity * prepared.mass)[:, None]
    return forces


def compute_forces(
    state: LayoutState,
    edges: Iterable[tuple],
    config: ForceConfig,
) -> np.ndarray:
    """Net force per node for the current positions (one evaluation)."""
    if len(state.ids) == 0:
        return np.zeros((0, 2))
    return _net_forces(state.positions, _prepare(state, edges), config)


def _step(state: LayoutState, prepared: _Prepared, config: ForceConfig) -> LayoutState:
    forces = _net_forces(state.positions, prepared, config)
    prev = state.prev_forces
    swing = np.sqrt(((forces - prev) ** 2).sum(axis=1))
    traction = 0.5 * np.sqrt(((forces + prev) ** 2).sum(axis=1))

    total_swing = float((prepared.mass * swing).sum())
    total_traction = float((prepared.mass * traction).sum())
    if total_swing > 0.0:
        global_speed = min(
            _JITTER_TOLERANCE * total_traction / total_swing, _MAX_GLOBAL_SPEED
        )
    else:
        global_speed = 1.0

    node_speed = global_speed / (1.0 + global_speed * np.sqrt(swing))
    displacement = forces * node_speed[:, None]
    magnitude = np.sqrt((displacement * displacement).sum(axis=1))
    over = magnitude > _MAX_DISPLACEMENT
    if over.any():
        displacement[over] *= (_MAX_DISPLACEMENT / magnitude[over])[:, None]

    if prepared.pinned_mask is not None:
        displacement[prepared.pinned_mask] = 0.0

    return LayoutState(
        ids=state.ids,
        positions=state.positions + displacement,
        prev_forces=forces,
        pinned=state.pinned,
        converged=False,
        iteration=state.iteration + 1,
    )


def force_step(
    state: LayoutState,
    edges: Iterable[tuple],
    config: ForceConfig,
) -> LayoutState:
    """One iteration: evaluate forces, adapt speeds, move unpinned nodes."""
    if len(state.ids) == 0:
        return replace(state, converged=True, iteration=state.iteration + 1)
    return _step(state, _prepare(state, edges), config)


def mean_traction(new_state: LayoutState, old_state: LayoutState) -> float:
    """Mean over nodes of |F_t + F_{t-1}| / 2 for the step old -> new."""
    if len(new_state.ids) == 0:
        return 0.0
    traction = 0.5 * np.sqrt(
        ((new_state.prev_forces + old_state.prev_forces) ** 2).sum(axis=1)
    )
    return float(traction.mean())


def run_auto_layout(
    state: LayoutState,
    edges: Iterable[tuple],
    config: ForceConfig,
    on_snapshot: Optional[Callable[[LayoutState], None]] = None,
) -> LayoutState:
    """Iterate until mean traction falls below the threshold or the cap hits."""
    if len(state.ids) == 0:
        return replace(state, converged=True, iteration=state.iteration + 1)
    prepared = _prepare(state, edges)
    current = state
    for _ in range(config.max_iterations):
        stepped = _step(current, prepared, config)
        if mean_traction(stepped, current) < config.traction_threshold:
            current = replace(stepped, converged=True)
            if on_snapshot is not None:
                on_snapshot(current)
            return current
        current = stepped
        if on_snapshot is not None:
            on_snapshot(current)
    return replace(current, converged=False)


def apply_user_move(
    state: LayoutState,
    node_id: str,
    new_position: tuple[float, float],
    pin: bool = False,
) -> LayoutState:
    """Reposition one node; with ``pin`` it stays fixed until moved unpinned."""
    index = state.index_of(node_id)
    positions = state.positions.copy()
    positions[index] = new_position
    pinned = set(state.pinned)
    if pin:
        pinned.add(node_id)
    else:
        pinned.discard(node_id)
    return LayoutState(
        ids=state.ids,
        positions=positions,
        prev_forces=state.prev_forces.copy(),
        pinned=frozenset(pinned),
        converged=False,
        iteration=state.iteration,
    )
