"""Orbit clouds and numerical density verdicts on finite-dimensional sections.

Verdicts here are always relative to a declared section (a finite list of
coordinates), a ball, and a grid; nothing claims density of the full
infinite-dimensional orbit. Grids over scalar sets and over balls are
deterministic functions of their parameters, so reports reproduce exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import jsonio
from ._kernels import nearest_distances
from .operators import (
    OperatorSpec,
    SeqVector,
    Vector,
    apply,
    operator_domain,
    vector_norm,
    vector_scale,
)
from .scalar_sets import (
    Annulus,
    Arc,
    Circle,
    CircleProduct,
    FinitePoints,
    Geometric,
    LogSpiral,
    ScalarSet,
    Scaled,
    Sector,
    Union,
)

_TWO_PI = 2.0 * math.pi
DEFAULT_RADIAL_WINDOW = (1e-6, 1e6)


class EmptyCloudError(ValueError):
    """The orbit cloud holds no samples; density queries are undefined."""


# ---------------------------------------------------------------------------
# deterministic scalar grids


def scalar_grid(
    s: ScalarSet, count: int, radial_window: Optional[tuple[float, float]] = None
) -> list[complex]:
    """count deterministic sample points of the scalar set.

    Unbounded or zero-touching radial ranges are clipped to radial_window
    (default (1e-6, 1e6)); radial sweeps are geometric, angular sweeps uniform.
    """
    if count < 1:
        raise ValueError("grid size must be positive")
    if isinstance(s, FinitePoints):
        return list(s.points[:count])
    if isinstance(s, Geometric):
        return [s.base ** j for j in range(count)]
    if isinstance(s, Circle):
        return [s.radius * _cis(_TWO_PI * k / count) for k in range(count)]
    if isinstance(s, Arc):
        return [s.radius * _cis(a) for a in _linspace(s.angle_lo, s.angle_hi, count)]
    if isinstance(s, Annulus):
        return _radial_angular(s.inner_radius, s.outer_radius, 0.0, _TWO_PI, count, full_turn=True)
    if isinstance(s, Sector):
        lo, hi = radial_window or DEFAULT_RADIAL_WINDOW
        rlo = max(s.radius_lo, lo)
        rhi = min(s.radius_hi, hi)
        if rhi < rlo:
            rhi = rlo
        full = s.angle_hi - s.angle_lo >= _TWO_PI
        return _radial_angular(rlo, rhi, s.angle_lo, s.angle_hi, count, full_turn=full)
    if isinstance(s, LogSpiral):
        if radial_window is not None:
            lb = math.log(s.base)
            t_lo = math.log(radial_window[0]) / lb
            t_hi = math.log(radial_window[1]) / lb
            if t_hi < t_lo:
                t_lo, t_hi = t_hi, t_lo
        else:
            t_lo, t_hi = -20.0, 20.0
        return [s.point_at(t) for t in _linspace(t_lo, t_hi, count)]
    if isinstance(s, Union):
        k = len(s.members)
        base, extra = divmod(count, k)
        out: list[complex] = []
        for i, m in enumerate(s.members):
            take = base + (1 if i < extra else 0)
            if take:
                out.extend(scalar_grid(m, take, radial_window))
        return out[:count]
    if isinstance(s, Scaled):
        rw = radial_window
        if rw is not None:
            f = abs(s.factor)
            rw = (rw[0] / f, rw[1] / f)
        return [s.factor * z for z in scalar_grid(s.inner, count, rw)]
    if isinstance(s, CircleProduct):
        na = min(count, 12)
        ni = -(-count // na)
        inner = scalar_grid(s.inner, ni, radial_window)
        out = []
        for p in inner:
            for k in range(na):
                out.append(p * _cis(_TWO_PI * k / na))
                if len(out) == count:
                    return out
        return out
    raise TypeError(f"unknown scalar set variant {type(s).__name__}")


def _cis(a: float) -> complex:
    return complex(math.cos(a), math.sin(a))


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    if count == 1 or hi == lo:
        return [lo] * count
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _geomspace(lo: float, hi: float, count: int) -> list[float]:
    if lo <= 0:
        raise ValueError("geometric sweep needs a positive lower bound")
    if count == 1 or hi == lo:
        return [lo] * count
    ratio = (hi / lo) ** (1.0 / (count - 1))
    return [lo * ratio ** i for i in range(count)]


def _radial_angular(rlo, rhi, alo, ahi, count, full_turn):
    if rhi == rlo:
        radii = [rlo]
    else:
        nr = max(1, math.isqrt(count))
        radii = _geomspace(rlo, rhi, nr) if rlo > 0 else _linspace(rlo, rhi, nr)
    na = -(-count // len(radii))
    if full_turn:
        angles = [alo + _TWO_PI * k / na for k in range(na)]
    else:
        angles = _linspace(alo, ahi, na)
    out = []
    for r in radii:
        for a in angles:
            out.append(r * _cis(a))
            if len(out) == count:
                return out
    return out


# ---------------------------------------------------------------------------
# orbit clouds


@dataclass(frozen=True)
class OrbitCloud:
    base_point: Vector
    operator: OperatorSpec
    samples: tuple[tuple[int, complex, Vector], ...]  # (iterate, scalar, point)
    horizon: int
    gamma_grid_size: int

    def __len__(self):
        return len(self.samples)


def generate_orbit(
    op: OperatorSpec,
    x: Vector,
    s: ScalarSet,
    horizon: int,
    gamma_grid: int,
    radial_window: Optional[tuple[float, float]] = None,
) -> OrbitCloud:
    """All samples gamma * T^n x for n <= horizon and gamma in the set's grid."""
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    dom = operator_domain(op)
    if dom == "scalar":
        if not isinstance(x, complex):
            x = complex(x)
    elif isinstance(dom, str):
        if not isinstance(x, SeqVector) or x.domain != dom:
            from .operators import DomainMismatchError

            raise DomainMismatchError(f"base point must be a {dom!r} sequence vector")
    gammas = scalar_grid(s, gamma_grid, radial_window)
    samples = []
    iterate = x
    for n in range(horizon + 1):
        for g in gammas:
            samples.append((n, g, vector_scale(g, iterate)))
        if n < horizon:
            iterate = apply(op, iterate)
    return OrbitCloud(
        base_point=x,
        operator=op,
        samples=tuple(samples),
        horizon=horizon,
        gamma_grid_size=len(gammas),
    )


def project(point: Vector, section: Sequence[int]) -> tuple[complex, ...]:
    """Coordinates of the point on the declared section."""
    if isinstance(point, SeqVector):
        d = point.as_dict()
        return tuple(d.get(i, 0j) for i in section)
    if isinstance(point, complex):
        if tuple(section) != (0,):
            raise ValueError("a scalar point only has coordinate 0")
        return (point,)
    raise TypeError("direct-sum points are not supported in density scans")


# ---------------------------------------------------------------------------
# epsilon density


COVERED = "covered_at_eps"
NOT_COVERED = "not_covered"
SOMEWHERE = "somewhere_witness"


@dataclass(frozen=True)
class DensityReport:
    section: tuple[int, ...]
    center: tuple[complex, ...]
    radius: float
    epsilon: float
    grid_step: float
    grid_count: int
    covered_count: int
    covered_fraction: float
    miss_witnesses: tuple[tuple[tuple[complex, ...], float], ...]
    verdict: str
    witness_ball: Optional[tuple[tuple[complex, ...], float]] = None
    # full scan data for the heat-map export; omitted from the JSON summary
    grid_points: tuple[tuple[complex, ...], ...] = ()
    distances: tuple[float, ...] = ()

    def heatmap_rows(self):
        """(grid point coords, nearest-sample distance) for every grid point."""
        return tuple(zip(self.grid_points, self.distances))

    def to_json(self) -> dict:
        return {
            "section": list(self.section),
            "center": [jsonio.encode_complex(c) for c in self.center],
            "radius": self.radius,
            "epsilon": self.epsilon,
            "grid_step": self.grid_step,
            "grid_count": self.grid_count,
            "covered_count": self.covered_count,
            "covered_fraction": self.covered_fraction,
            "verdict": self.verdict,
            "witness_ball": None
            if self.witness_ball is None
            else {
                "center": [jsonio.encode_complex(c) for c in self.witness_ball[0]],
                "radius": self.witness_ball[1],
            },
            "miss_witnesses": [
                {"point": [jsonio.encode_complex(c) for c in coords], "distance": d}
                for coords, d in self.miss_witnesses
            ],
        }


def _ball_grid(center: tuple[complex, ...], radius: float, step: float) -> list[tuple[float, ...]]:
    axes = []
    for c in center:
        axes.append(c.real)
        axes.append(c.imag)
    steps = int(math.floor(2.0 * radius / step + 1e-12)) + 1
    offsets = [-radius + i * step for i in range(steps)]
    rsq = radius * radius * (1.0 + 1e-12)
    points: list[tuple[float, ...]] = []

    def rec(prefix: list[float], acc: float, axis: int):
        if axis == len(axes):
            points.append(tuple(prefix))
            return
        for off in offsets:
            a = acc + off * off
            if a <= rsq:
                prefix.append(axes[axis] + off)
                rec(prefix, a, axis + 1)
                prefix.pop()

    rec([], 0.0, 0)
    return points


def epsilon_density(
    cloud: OrbitCloud,
    section: Sequence[int],
    center: Sequence[complex],
    radius: float,
    epsilon: float,
    grid_step: float,
) -> DensityReport:
    """Cover test of the ball's grid against the projected cloud.

    Every grid point's nearest-sample distance is computed (first minimal
    sample index wins ties); the verdict is covered when all distances are
    within epsilon, otherwise a fully covered sub-ball is searched for before
    declaring the region not covered.
    """
    section = tuple(int(i) for i in section)
    center = tuple(complex(c) for c in center)
    if len(center) != len(section):
        raise ValueError("center must list one coordinate per section index")
    if radius <= 0 or grid_step <= 0:
        raise ValueError("radius and grid step must be positive")
    if not epsilon > grid_step / 2.0:
        raise ValueError("epsilon must exceed half the grid step")
    if not cloud.samples:
        raise EmptyCloudError("orbit cloud has no samples")

    projected = [project(p, section) for _, _, p in cloud.samples]
    # bounding-box prefilter: anything farther than radius+epsilon from the
    # ball on some axis can never cover a grid point at epsilon
    keep: list[tuple[complex, ...]] = []
    reach = radius + epsilon
    for coords in projected:
        if all(
            abs(z.real - c.real) <= reach and abs(z.imag - c.imag) <= reach
            for z, c in zip(coords, center)
        ):
            keep.append(coords)
    if not keep:
        keep = projected

    grid = _ball_grid(center, radius, grid_step)
    dim = 2 * len(section)
    flat_grid: list[float] = [v for pt in grid for v in pt]
    flat_cloud: list[float] = []
    for coords in keep:
        for z in coords:
            flat_cloud.append(z.real)
            flat_cloud.append(z.imag)
    dists, _ = nearest_distances(flat_grid, flat_cloud, dim)

    covered_flags = [d <= epsilon for d in dists]
    covered = sum(covered_flags)
    misses = [
        (_floats_to_coords(grid[i]), dists[i])
        for i in range(len(grid))
        if not covered_flags[i]
    ]

    if covered == len(grid):
        verdict, witness = COVERED, None
    else:
        witness = _somewhere_witness(grid, covered_flags, radius, grid_step)
        verdict = SOMEWHERE if witness is not None else NOT_COVERED

    return DensityReport(
        section=section,
        center=center,
        radius=radius,
        epsilon=epsilon,
        grid_step=grid_step,
        grid_count=len(grid),
        covered_count=covered,
        covered_fraction=covered / len(grid) if grid else 0.0,
        miss_witnesses=tuple(misses[:1000]),
        verdict=verdict,
        witness_ball=witness,
        grid_points=tuple(_floats_to_coords(pt) for pt in grid),
        distances=tuple(dists),
    )


def _floats_to_coords(pt: tuple[float, ...]) -> tuple[complex, ...]:
    return tuple(complex(pt[2 * i], pt[2 * i + 1]) for i in range(len(pt) // 2))


def _somewhere_witness(grid, covered_flags, radius, grid_step):
    """First grid point whose surrounding sub-ball of grid points is fully
    covered (at least 3 of them), if any."""
    sub_r = max(2.0 * grid_step, radius / 4.0)
    sub_rsq = sub_r * sub_r * (1.0 + 1e-12)
    for i, pt in enumerate(grid):
        if not covered_flags[i]:
            continue
        count = 0
        good = True
        for j, other in enumerate(grid):
            s = sum((a - b) ** 2 for a, b in zip(pt, other))
            if s <= sub_rsq:
                count += 1
                if not covered_flags[j]:
                    good = False
                    break
        if good and count >= 3:
            return (_floats_to_coords(pt), sub_r)
    return None


# ---------------------------------------------------------------------------
# d-density


@dataclass(frozen=True)
class DDenseResult:
    ok: bool
    witnesses: tuple[tuple[tuple[complex, ...], float], ...]  # (center, nearest distance)


def d_dense_check(
    cloud: OrbitCloud,
    section: Sequence[int],
    d: float,
    centers: Sequence[Sequence[complex]],
) -> DDenseResult:
    """True iff every open ball of radius d around the centers holds a sample."""
    if d <= 0:
        raise ValueError("ball radius must be positive")
    if not cloud.samples:
        raise EmptyCloudError("orbit cloud has no samples")
    section = tuple(int(i) for i in section)
    flat_centers: list[float] = []
    centers = [tuple(complex(c) for c in ctr) for ctr in centers]
    for ctr in centers:
        for z in ctr:
            flat_centers.append(z.real)
            flat_centers.append(z.imag)
    flat_cloud: list[float] = []
    for _, _, p in cloud.samples:
        for z in project(p, section):
            flat_cloud.append(z.real)
            flat_cloud.append(z.imag)
    dists, _ = nearest_distances(flat_centers, flat_cloud, 2 * len(section))
    witnesses = tuple(
        (centers[i], dists[i]) for i in range(len(centers)) if not dists[i] < d
    )
    return DDenseResult(ok=not witnesses, witnesses=witnesses)


# ---------------------------------------------------------------------------
# boundedness certificates


def boundedness_certificates(op: OperatorSpec, x: Vector, horizon: int) -> tuple[float, float]:
    """Exact (max, min) of ||T^n x|| over 0 <= n <= horizon."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    sup = inf = vector_norm(x)
    cur = x
    for _ in range(horizon):
        cur = apply(op, cur)
        nrm = vector_norm(cur)
        sup = max(sup, nrm)
        inf = min(inf, nrm)
    return sup, inf


# ---------------------------------------------------------------------------
# positive-multiplier estimation


@dataclass(frozen=True)
class LambdaEstimate:
    iterate: int
    epsilon: float
    phase_grid: int
    detected: tuple[tuple[float, float], ...]  # (multiplier, slack)

    def multipliers(self) -> tuple[float, ...]:
        return tuple(lam for lam, _ in self.detected)

    def to_json(self) -> dict:
        return {
            "iterate": self.iterate,
            "epsilon": self.epsilon,
            "phase_grid": self.phase_grid,
            "detected": [[lam, slack] for lam, slack in self.detected],
        }


def scalar_lambda_oracle(c: complex, n: int, horizon: int) -> tuple[float, ...]:
    """Closed-form multiplier set for the scalar operator c*Id with base 1:
    {|c|^(n-m) : n <= m <= horizon}, sorted ascending."""
    mags = sorted({abs(c) ** (n - m) for m in range(n, horizon + 1)})
    return tuple(mags)


def lambda_set_estimate(
    op: OperatorSpec,
    x: Vector,
    n: int,
    cloud: OrbitCloud,
    epsilon: float,
    phase_grid: int = 360,
) -> LambdaEstimate:
    """Positive multipliers lambda with some m >= n and phase theta on the
    grid making lambda*e^(i theta)*T^m x land within epsilon of T^n x.

    The cloud must be generated with the one-point scalar set {1}; candidate
    multipliers are the norm ratios ||T^n x|| / ||T^m x||. The angular
    discretization error (pi/N times the scaled sample norm) is added to the
    acceptance threshold so a true match never fails by grid phase alone.
    """
    if not cloud.samples:
        raise EmptyCloudError("orbit cloud has no samples")
    if any(g != 1 for _, g, _ in cloud.samples):
        raise ValueError("multiplier estimation needs a cloud with scalar grid {1}")
    if cloud.operator != op or cloud.base_point != x:
        raise ValueError("cloud was not generated from this operator and base point")
    if n > cloud.horizon:
        raise ValueError("iterate index beyond the cloud horizon")

    points: dict[int, Vector] = {}
    for m, _, p in cloud.samples:
        points.setdefault(m, p)
    target = points[n]
    norm_t = vector_norm(target)
    if norm_t == 0:
        return LambdaEstimate(iterate=n, epsilon=epsilon, phase_grid=phase_grid, detected=())

    ms = [m for m in range(n, cloud.horizon + 1) if m in points]
    norms = {m: vector_norm(points[m]) for m in ms}
    candidates: list[float] = []
    for m in ms:
        if norms[m] > 0:
            lam = norm_t / norms[m]
            if lam not in candidates:
                candidates.append(lam)

    sector = 2.0 * math.pi / phase_grid
    detected = []
    for lam in candidates:
        best = math.inf
        hit = False
        for m in ms:
            u = points[m]
            nu = norms[m]
            if nu == 0:
                continue
            a = lam * lam * nu * nu + norm_t * norm_t
            p = _inner(u, target)
            mag = abs(p)
            if mag == 0:
                d2 = a
            else:
                k = round((-math.atan2(p.imag, p.real)) / sector)
                theta = k * sector
                re = (p * complex(math.cos(theta), math.sin(theta))).real
                d2 = a - 2.0 * lam * re
            dist = math.sqrt(d2) if d2 > 0 else 0.0
            best = min(best, dist)
            if dist <= epsilon + (math.pi / phase_grid) * lam * nu:
                hit = True
        if hit:
            detected.append((lam, best))
    detected.sort()
    return LambdaEstimate(
        iterate=n, epsilon=epsilon, phase_grid=phase_grid, detected=tuple(detected)
    )


def _inner(u: Vector, v: Vector) -> complex:
    if isinstance(u, SeqVector) and isinstance(v, SeqVector):
        return u.inner(v)
    if isinstance(u, complex) and isinstance(v, complex):
        return u * v.conjugate()
    raise TypeError("inner product needs two sequence vectors or two scalars")


def multiplicative_closure_report(est: LambdaEstimate, tol: float = 1e-9) -> dict:
    """For exact detections (slack 0), report whether pairwise products are
    themselves detected within tol; informational, not asserted."""
    exact = [lam for lam, slack in est.detected if slack == 0.0]
    all_vals = est.multipliers()
    products = []
    for a in exact:
        for b in exact:
            prod = a * b
            inside = any(abs(prod - v) <= tol * max(1.0, abs(prod)) for v in all_vals)
            products.append({"factors": [a, b], "product": prod, "detected": inside})
    return {"exact_members": exact, "products": products}
