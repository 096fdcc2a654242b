"""Built-in point-cloud generators.

Three families: a latitude/longitude sphere sampling, a Fibonacci-spiral
sphere sampling, and the 4D manifold swept out by a natural frequency of a
3DOF mass-spring chain as temperature, thermal-expansion and damage
parameters vary over a grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ComputationError, InputError
from .geometry import PointCloud

__all__ = [
    "MsdConfig",
    "ModalResult",
    "gen_sphere_latlon",
    "gen_fibonacci_sphere",
    "stiffness_matrix",
    "natural_frequencies",
    "gen_msd_manifold",
    "read_msd_config",
    "write_msd_config",
]

GOLDEN_ANGLE = math.pi * (1.0 + math.sqrt(5.0))


def gen_sphere_latlon(
    n_u: int,
    n_v: int,
    form: str = "standard",
    include_u_endpoint: bool = False,
    dedupe: bool = True,
) -> PointCloud:
    """Sample the unit 2-sphere on a longitude/latitude grid.

    Longitudes default to u = 2*pi*a/n_u for a = 0..n_u-1 (the u = 2*pi
    column duplicates u = 0 and is omitted); ``include_u_endpoint`` keeps
    it, matching graphics-style linspace grids. Latitudes are
    v = pi*b/(n_v-1) for b = 0..n_v-1, poles included.

    ``form`` selects the y component: "standard" uses y = sin(u)sin(v)
    (points lie exactly on the sphere); "y-cos" uses y = sin(u)cos(v),
    a formula that appears in some write-ups but does not stay on the
    sphere. With ``dedupe`` coincident points (the n_u pole copies) are
    merged, keeping first occurrence order.
    """
    if n_u < 3 or n_v < 2:
        raise InputError(f"grid too small: need n_u >= 3, n_v >= 2, got ({n_u}, {n_v})")
    if form not in ("standard", "y-cos"):
        raise InputError(f"unknown sphere form {form!r}")
    if include_u_endpoint:
        us = np.linspace(0.0, 2.0 * math.pi, n_u)
    else:
        us = 2.0 * math.pi * np.arange(n_u) / n_u
    pts = []
    for b in range(n_v):
        v = math.pi * b / (n_v - 1)
        sv, cv = math.sin(v), math.cos(v)
        # exact poles so duplicate detection needs no tolerance
        if b == 0:
            sv, cv = 0.0, 1.0
        elif b == n_v - 1:
            sv, cv = 0.0, -1.0
        for u in us:
            x = math.cos(u) * sv + 0.0
            y = (math.sin(u) * sv if form == "standard" else math.sin(u) * cv) + 0.0
            z = cv
            pts.append((x, y, z))
    if dedupe:
        seen = set()
        unique = []
        for p in pts:
            if p not in seen:
                seen.add(p)
                unique.append(p)
        pts = unique
    return PointCloud(pts)


def gen_fibonacci_sphere(n_p: int) -> PointCloud:
    """Sample the unit 2-sphere along a Fibonacci spiral.

    Point j uses the golden-angle longitude theta_j = j*pi*(1+sqrt(5)) and
    a latitude chosen so cos(phi) is uniformly spaced over (-1, 1) by the
    midpoint rule, cos(phi_j) = 1 - (2j+1)/n_p.
    """
    if n_p < 1:
        raise InputError(f"need at least one point, got {n_p}")
    j = np.arange(n_p, dtype=np.float64)
    theta = j * GOLDEN_ANGLE
    cphi = 1.0 - (2.0 * j + 1.0) / n_p
    sphi = np.sqrt(np.maximum(0.0, 1.0 - cphi * cphi))
    pts = np.stack(
        [np.cos(theta) * sphi, np.sin(theta) * sphi, cphi], axis=1
    )
    return PointCloud(pts)


@dataclass(frozen=True)
class MsdConfig:
    """Parameters of the 3DOF mass-spring chain and its evaluation grid.

    The middle spring's stiffness is k2*(1 - alpha2*T)*(1 - D2): thermal
    expansion and damage both soften it. Division counts are grid sizes
    inclusive of both endpoints.
    """

    m1: float = 10.0
    m2: float = 10.0
    m3: float = 10.0
    k1: float = 10000.0
    k2: float = 10000.0
    k3: float = 10000.0
    k4: float = 10000.0
    t_min: float = 250.0
    t_max: float = 500.0
    t_divs: int = 7
    alpha_min: float = 0.0
    alpha_max: float = 0.005
    alpha_divs: int = 6
    d_min: float = 0.0
    d_max: float = 1.0
    d_divs: int = 6
    mode_index: int = 1

    def __post_init__(self):
        if min(self.m1, self.m2, self.m3) <= 0.0:
            raise InputError("masses must be positive")
        if min(self.k1, self.k2, self.k3, self.k4) < 0.0:
            raise InputError("stiffnesses must be nonnegative")
        for name, divs in (("t", self.t_divs), ("alpha", self.alpha_divs), ("d", self.d_divs)):
            if divs < 2:
                raise InputError(f"{name}_divs must be >= 2, got {divs}")
        if self.t_min > self.t_max or self.alpha_min > self.alpha_max or self.d_min > self.d_max:
            raise InputError("grid ranges must satisfy min <= max")
        if self.d_min < 0.0 or self.d_max > 1.0:
            raise InputError("damage D2 must lie in [0, 1]")
        if self.mode_index not in (1, 2, 3):
            raise InputError(f"mode_index must be 1, 2 or 3, got {self.mode_index}")
        f = self.min_stiffness_factor()
        if f < 0.0:
            # The default grid itself reaches this region (alpha2*T up to
            # 2.5), so a hard error would reject the shipped configuration;
            # the eigenvalue embedding stays well defined regardless.
            warnings.warn(
                f"grid reaches negative effective stiffness (min factor {f:.4g}); "
                "natural frequencies are imaginary there",
                stacklevel=2,
            )

    def grid_t(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.t_divs)

    def grid_alpha(self) -> np.ndarray:
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_divs)

    def grid_d(self) -> np.ndarray:
        return np.linspace(self.d_min, self.d_max, self.d_divs)

    def min_stiffness_factor(self) -> float:
        """Smallest (1 - alpha2*T)*(1 - D2) over the whole grid."""
        f = [
            (1.0 - a * t) * (1.0 - d)
            for t in (self.t_min, self.t_max)
            for a in (self.alpha_min, self.alpha_max)
            for d in (self.d_min, self.d_max)
        ]
        return min(f)

    def grid_size(self) -> int:
        return self.t_divs * self.alpha_divs * self.d_divs

    def with_mode(self, mode_index: int) -> "MsdConfig":
        return replace(self, mode_index=mode_index)


@dataclass(frozen=True)
class ModalResult:
    """Eigenvalues of M^-1 K sorted ascending, with their square roots.

    ``eigenvalues`` may contain negative entries when the caller allowed an
    unphysical (negative-stiffness) configuration; ``omegas`` is only
    defined when all eigenvalues are nonnegative.
    """

    eigenvalues: tuple[float, float, float]

    @property
    def omegas(self) -> tuple[float, float, float]:
        if self.eigenvalues[0] < 0.0:
            raise ComputationError(
                f"negative eigenvalue {self.eigenvalues[0]:.6g}: no real natural frequency"
            )
        return tuple(math.sqrt(v) for v in self.eigenvalues)


def stiffness_matrix(
    cfg: MsdConfig, t: float, alpha2: float, d2: float, allow_negative: bool = False
) -> np.ndarray:
    """Stiffness matrix of the chain with the softened middle spring.

    Raises InputError when the effective stiffness factor
    (1 - alpha2*t)*(1 - d2) is negative, unless ``allow_negative`` is set
    (needed to evaluate the full default grid, whose corner reaches
    factor -1.5).
    """
    factor = (1.0 - alpha2 * t) * (1.0 - d2)
    if factor < 0.0 and not allow_negative:
        raise InputError(
            f"negative effective stiffness: (1 - {alpha2}*{t})*(1 - {d2}) = {factor:.6g}"
        )
    e = cfg.k2 * factor
    return np.array(
        [
            [cfg.k1 + e, -e, 0.0],
            [-e, e + cfg.k3, -cfg.k3],
            [0.0, -cfg.k3, cfg.k3 + cfg.k4],
        ]
    )


def _jacobi_eigh(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 50):
    """Cyclic Jacobi diagonalization of a small symmetric matrix.

    Sweeps rotate away each off-diagonal entry in turn until the
    off-diagonal Frobenius norm drops below tol relative to the matrix
    norm. Returns (eigenvalues, eigenvectors as columns), unsorted.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    scale = max(1.0, float(np.sqrt(np.sum(a * a))))
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[p, q] ** 2 for p in range(n) for q in range(n) if p != q))
        if off <= tol * scale:
            return np.diagonal(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    raise ComputationError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps"
    )


def natural_frequencies(
    cfg: MsdConfig, t: float, alpha2: float, d2: float, allow_negative: bool = False
) -> ModalResult:
    """Eigenvalues of M^-1 K for the chain at one grid point.

    Solved on the symmetrized matrix M^-1/2 K M^-1/2 (similar to M^-1 K,
    so same spectrum) by cyclic Jacobi rotations. Each eigenpair is
    verified against the residual bound |M^-1 K x - lam x| <= 1e-9 |K|.
    """
    k = stiffness_matrix(cfg, t, alpha2, d2, allow_negative=allow_negative)
    m = np.array([cfg.m1, cfg.m2, cfg.m3])
    inv_sqrt_m = 1.0 / np.sqrt(m)
    sym = k * inv_sqrt_m[:, None] * inv_sqrt_m[None, :]
    lams, vecs = _jacobi_eigh(sym)
    order = np.argsort(lams)
    lams = lams[order]
    vecs = vecs[:, order]
    a = k / m[:, None]  # M^-1 K
    bound = 1e-9 * float(np.sqrt(np.sum(k * k)))
    for i in range(3):
        x = inv_sqrt_m * vecs[:, i]
        x = x / np.sqrt(np.sum(x * x))
        resid = float(np.sqrt(np.sum((a @ x - lams[i] * x) ** 2)))
        if resid > bound:
            raise ComputationError(
                f"eigenpair residual {resid:.3g} exceeds bound {bound:.3g}"
            )
    return ModalResult(eigenvalues=tuple(float(x) for x in lams))


def gen_msd_manifold(cfg: MsdConfig, embed: str = "eigenvalue") -> PointCloud:
    """4D cloud (T, alpha2, D2, value) over the full parameter grid.

    One point per grid node, row-major over (T, alpha2, D2). ``embed``
    selects the fourth coordinate: "eigenvalue" uses the mode's eigenvalue
    of M^-1 K directly (negative on unphysical nodes, which the default
    grid contains); "frequency" uses its square root and therefore rejects
    grids that reach negative effective stiffness.

    Every dimension is then divided by its largest value over the cloud.
    For nonnegative data this equals rescale_unit_box; an all-positive
    cloud lands inside [0, 1]^4. A negative eigenvalue range survives
    scaling (only its magnitude changes), which is what makes the
    unphysical region visible as a far-away cluster.
    """
    if embed not in ("eigenvalue", "frequency"):
        raise InputError(f"unknown embed choice {embed!r}")
    allow = embed == "eigenvalue"
    mode = cfg.mode_index - 1
    rows = []
    for t in cfg.grid_t():
        for a in cfg.grid_alpha():
            for d in cfg.grid_d():
                modal = natural_frequencies(cfg, t, a, d, allow_negative=allow)
                value = modal.eigenvalues[mode] if allow else modal.omegas[mode]
                rows.append((t, a, d, value))
    coords = np.array(rows, dtype=np.float64)
    for j in range(coords.shape[1]):
        top = coords[:, j].max()
        if top > 0.0:
            coords[:, j] = coords[:, j] / top
    return PointCloud(coords)


# --- plain-text config files (`name = value`, one per line) ---

_INT_FIELDS = {"t_divs", "alpha_divs", "d_divs", "mode_index"}
_FIELD_NAMES = [f.name for f in fields(MsdConfig)]


def read_msd_config(path) -> MsdConfig:
    """Parse a key-value config file; unknown keys are rejected."""
    values = {}
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected `name = value`")
            name, _, text = line.partition("=")
            name = name.strip()
            text = text.strip()
            if name not in _FIELD_NAMES:
                raise InputError(f"{path}:{lineno}: unknown key {name!r}")
            try:
                values[name] = int(text) if name in _INT_FIELDS else float(text)
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from exc
    return MsdConfig(**values)


def write_msd_config(cfg: MsdConfig, path) -> None:
    with open(path, "w") as fh:
        for name in _FIELD_NAMES:
            fh.write(f"{name} = {getattr(cfg, name)!r}\n")
