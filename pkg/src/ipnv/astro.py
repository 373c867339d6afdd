"""Double-precision two-body propagation, planet spin, lander kinematics,
and linear ephemeris interpolation.

All positions are kilometers, times are float64 seconds since J2000
(2000-01-01 11:58:55.816 UTC), angles are radians internally and degrees
in sampled rotation triples. Everything here is a pure function; the
sample tables are immutable once built.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import cached_property

TWO_PI = 2.0 * math.pi

# Seconds-since-J2000 epoch values; plain float64 everywhere.
Epoch = float

# Cartesian kilometers.
Vec3 = tuple[float, float, float]

# Tolerance on consecutive sample spacing when validating a table grid.
STEP_TOLERANCE_S = 1e-6

# Kepler solver: Newton residual target and iteration cap before the
# bisection fallback takes over.
_KEPLER_TOLERANCE = 1e-13
_KEPLER_MAX_NEWTON = 50


def wrap_radians(angle: float) -> float:
    """Normalize an angle to [0, 2*pi)."""
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return 0.0 if a >= TWO_PI else a


def wrap_degrees(angle: float) -> float:
    """Normalize an angle to [0, 360)."""
    a = math.fmod(angle, 360.0)
    if a < 0.0:
        a += 360.0
    return 0.0 if a >= 360.0 else a


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class KeplerianElements:
    """Classical elliptical elements about a central body.

    Angles are radians and are normalized to [0, 2*pi) on construction;
    ``mu`` is the gravitational parameter of the central body in km^3/s^2.
    """

    semi_major_axis: float
    eccentricity: float
    inclination: float
    raan: float
    arg_periapsis: float
    mean_anomaly_at_epoch: float
    epoch: Epoch
    mu: float

    def __post_init__(self) -> None:
        if not (_require_finite("semi_major_axis", self.semi_major_axis) > 0.0):
            raise ValueError(f"semi_major_axis must be positive, got {self.semi_major_axis}")
        e = _require_finite("eccentricity", self.eccentricity)
        if not 0.0 <= e < 1.0:
            raise ValueError(f"eccentricity must be in [0, 1) (elliptical only), got {e}")
        if not (_require_finite("mu", self.mu) > 0.0):
            raise ValueError(f"mu must be positive, got {self.mu}")
        _require_finite("epoch", self.epoch)
        for field in ("inclination", "raan", "arg_periapsis", "mean_anomaly_at_epoch"):
            object.__setattr__(self, field, wrap_radians(_require_finite(field, getattr(self, field))))

    @property
    def period(self) -> float:
        """Orbital period 2*pi*sqrt(a^3/mu) in seconds."""
        return TWO_PI * math.sqrt(self.semi_major_axis**3 / self.mu)


@dataclass(frozen=True)
class RotationModel:
    """Uniform spin about a fixed tilted axis.

    ``period`` is the sidereal rotation period in seconds (negative for
    retrograde spin), ``obliquity`` tilts the spin axis away from the
    scene +Z toward the meridian at ``node_longitude``.
    """

    period: float
    obliquity: float
    node_longitude: float
    rotation_at_epoch: float
    epoch: Epoch

    def __post_init__(self) -> None:
        if _require_finite("period", self.period) == 0.0:
            raise ValueError("rotation period must be nonzero")
        for field in ("obliquity", "node_longitude", "rotation_at_epoch", "epoch"):
            _require_finite(field, getattr(self, field))


@dataclass(frozen=True)
class GeodeticSite:
    """Surface site: latitude/longitude in radians, altitude in km above
    the host planet radius."""

    latitude: float
    longitude: float
    altitude: float = 0.0

    def __post_init__(self) -> None:
        lat = _require_finite("latitude", self.latitude)
        if abs(lat) > math.pi / 2.0:
            raise ValueError(f"latitude must lie in [-pi/2, pi/2], got {lat}")
        lon = wrap_radians(_require_finite("longitude", self.longitude))
        if lon > math.pi:
            lon -= TWO_PI
        object.__setattr__(self, "longitude", lon)
        _require_finite("altitude", self.altitude)


@dataclass(frozen=True)
class StateSample:
    """One sampled instant: position, plus an Euler X-Y-Z rotation triple
    in degrees for planets (nodes carry no rotation)."""

    time: Epoch
    position: Vec3
    rotation: tuple[float, float, float] | None = None

    def __post_init__(self) -> None:
        _require_finite("time", self.time)
        if len(self.position) != 3:
            raise ValueError("position must have exactly three components")
        for c in self.position:
            _require_finite("position component", c)
        if self.rotation is not None:
            if len(self.rotation) != 3:
                raise ValueError("rotation must have exactly three components")
            for c in self.rotation:
                _require_finite("rotation component", c)


@dataclass(frozen=True)
class EphemerisTable:
    """Ordered samples on a fixed grid; the last interval may be shorter
    when the range does not divide evenly."""

    samples: tuple[StateSample, ...]
    # Grid spacing is derivable metadata (position files never carry it),
    # so it stays out of equality comparisons.
    step: float = field(compare=False)

    def __post_init__(self) -> None:
        if not self.samples:
            raise ValueError("ephemeris table must contain at least one sample")
        object.__setattr__(self, "samples", tuple(self.samples))
        has_rotation = self.samples[0].rotation is not None
        for s in self.samples:
            if (s.rotation is not None) != has_rotation:
                raise ValueError("rotation must be present on all samples or on none")
        if len(self.samples) >= 2:
            if not self.step > 0.0:
                raise ValueError(f"step must be positive, got {self.step}")
            for i in range(1, len(self.samples)):
                delta = self.samples[i].time - self.samples[i - 1].time
                if delta <= 0.0:
                    raise ValueError(
                        f"sample times must be strictly increasing "
                        f"({self.samples[i - 1].time} then {self.samples[i].time})"
                    )
                last = i == len(self.samples) - 1
                if last:
                    if delta > self.step + STEP_TOLERANCE_S:
                        raise ValueError(
                            f"final interval {delta} s exceeds declared step {self.step} s"
                        )
                elif abs(delta - self.step) > STEP_TOLERANCE_S:
                    raise ValueError(
                        f"interval {delta} s at sample {i} does not match declared step {self.step} s"
                    )

    @cached_property
    def times(self) -> tuple[float, ...]:
        return tuple(s.time for s in self.samples)

    @property
    def start(self) -> Epoch:
        return self.samples[0].time

    @property
    def end(self) -> Epoch:
        return self.samples[-1].time

    @property
    def has_rotation(self) -> bool:
        return self.samples[0].rotation is not None


def solve_kepler(mean_anomaly: float, eccentricity: float) -> float:
    """Solve E - e*sin(E) = M for the eccentric anomaly E in [0, 2*pi).

    Newton iteration seeded with M (pi for e > 0.8), falling back to
    bisection when Newton fails to converge. The residual of the result
    is below 1e-12 for all elliptical eccentricities.
    """
    e = float(eccentricity)
    if not (math.isfinite(e) and 0.0 <= e < 1.0):
        raise ValueError(f"eccentricity must be in [0, 1), got {eccentricity!r}")
    if not math.isfinite(mean_anomaly):
        raise ValueError(f"mean anomaly must be finite, got {mean_anomaly!r}")
    m = wrap_radians(float(mean_anomaly))
    if e == 0.0:
        return m

    ecc_anom = m if e <= 0.8 else math.pi
    for _ in range(_KEPLER_MAX_NEWTON):
        residual = ecc_anom - e * math.sin(ecc_anom) - m
        if abs(residual) < _KEPLER_TOLERANCE:
            return _clamp_anomaly(ecc_anom)
        ecc_anom -= residual / (1.0 - e * math.cos(ecc_anom))

    # E - e*sin(E) - M is strictly increasing, negative at 0, positive at
    # 2*pi, so bisection always lands.
    lo, hi = 0.0, TWO_PI
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        residual = mid - e * math.sin(mid) - m
        if abs(residual) < _KEPLER_TOLERANCE:
            return _clamp_anomaly(mid)
        if residual < 0.0:
            lo = mid
        else:
            hi = mid
    return _clamp_anomaly(0.5 * (lo + hi))


def _clamp_anomaly(ecc_anom: float) -> float:
    # Pin float drift just outside [0, 2*pi) back onto the interval
    # without disturbing the residual the way wrapping by 2*pi would.
    if ecc_anom < 0.0:
        return 0.0
    if ecc_anom >= TWO_PI:
        return math.nextafter(TWO_PI, 0.0)
    return ecc_anom


def elements_to_position(elements: KeplerianElements, t: Epoch) -> Vec3:
    """Central-body-centered position at time ``t``.

    Mean motion advances the mean anomaly from the element epoch, the
    eccentric anomaly comes from :func:`solve_kepler`, and the perifocal
    coordinates are rotated through argument of periapsis, inclination,
    and RAAN into the central body frame.
    """
    a = elements.semi_major_axis
    e = elements.eccentricity
    mean_motion = math.sqrt(elements.mu / (a * a * a))
    m = elements.mean_anomaly_at_epoch + mean_motion * (t - elements.epoch)
    ecc_anom = solve_kepler(m, e)

    x_pf = a * (math.cos(ecc_anom) - e)
    y_pf = a * math.sqrt(1.0 - e * e) * math.sin(ecc_anom)

    cos_raan = math.cos(elements.raan)
    sin_raan = math.sin(elements.raan)
    cos_argp = math.cos(elements.arg_periapsis)
    sin_argp = math.sin(elements.arg_periapsis)
    cos_inc = math.cos(elements.inclination)
    sin_inc = math.sin(elements.inclination)

    return (
        (cos_raan * cos_argp - sin_raan * sin_argp * cos_inc) * x_pf
        + (-cos_raan * sin_argp - sin_raan * cos_argp * cos_inc) * y_pf,
        (sin_raan * cos_argp + cos_raan * sin_argp * cos_inc) * x_pf
        + (-sin_raan * sin_argp + cos_raan * cos_argp * cos_inc) * y_pf,
        (sin_argp * sin_inc) * x_pf + (cos_argp * sin_inc) * y_pf,
    )


Matrix3 = tuple[Vec3, Vec3, Vec3]

_IDENTITY: Matrix3 = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def _rot_x(angle: float) -> Matrix3:
    c, s = math.cos(angle), math.sin(angle)
    return ((1.0, 0.0, 0.0), (0.0, c, -s), (0.0, s, c))


def _rot_y(angle: float) -> Matrix3:
    c, s = math.cos(angle), math.sin(angle)
    return ((c, 0.0, s), (0.0, 1.0, 0.0), (-s, 0.0, c))


def _rot_z(angle: float) -> Matrix3:
    c, s = math.cos(angle), math.sin(angle)
    return ((c, -s, 0.0), (s, c, 0.0), (0.0, 0.0, 1.0))


def _mat_mul(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]


def _mat_vec(m: Matrix3, v: Vec3) -> Vec3:
    return (
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    )


def euler_xyz_matrix(rotation_deg: tuple[float, float, float]) -> Matrix3:
    """Matrix for an X-Y-Z Euler triple in degrees: Rx(a) @ Ry(b) @ Rz(c)."""
    rx, ry, rz = (math.radians(c) for c in rotation_deg)
    return _mat_mul(_rot_x(rx), _mat_mul(_rot_y(ry), _rot_z(rz)))


def _matrix_to_euler_xyz(m: Matrix3) -> tuple[float, float, float]:
    """Decompose a rotation matrix as Rx(a) @ Ry(b) @ Rz(c), degrees in [0, 360)."""
    sin_b = min(1.0, max(-1.0, m[0][2]))
    b = math.asin(sin_b)
    if abs(sin_b) < 1.0 - 1e-12:
        a = math.atan2(-m[1][2], m[2][2])
        c = math.atan2(-m[0][1], m[0][0])
    else:
        # Gimbal lock: fold the indeterminate rotation into the X angle.
        a = math.atan2(m[2][1], m[1][1])
        c = 0.0
    return (
        wrap_degrees(math.degrees(a)),
        wrap_degrees(math.degrees(b)),
        wrap_degrees(math.degrees(c)),
    )


def planet_rotation(model: RotationModel, t: Epoch) -> tuple[float, float, float]:
    """Euler X-Y-Z rotation triple of a planet at ``t``, in degrees.

    The spin angle grows linearly at 2*pi/period; the tilted-axis
    orientation is folded in and the combined rotation reported as an
    X-Y-Z Euler decomposition with every component in [0, 360).
    """
    spin = wrap_radians(model.rotation_at_epoch + TWO_PI * (t - model.epoch) / model.period)
    if model.obliquity == 0.0:
        return (0.0, 0.0, wrap_degrees(math.degrees(spin)))
    tilt = _mat_mul(
        _rot_z(model.node_longitude),
        _mat_mul(_rot_y(model.obliquity), _rot_z(-model.node_longitude)),
    )
    return _matrix_to_euler_xyz(_mat_mul(tilt, _rot_z(spin)))


def lander_position(
    site: GeodeticSite,
    planet_radius: float,
    rotation_deg: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> Vec3:
    """Planet-centered position of a surface site under the planet's
    current rotation; |result| is planet_radius + altitude to roundoff."""
    if not planet_radius > 0.0:
        raise ValueError(f"planet radius must be positive, got {planet_radius}")
    r = planet_radius + site.altitude
    cos_lat = math.cos(site.latitude)
    body_fixed = (
        r * cos_lat * math.cos(site.longitude),
        r * cos_lat * math.sin(site.longitude),
        r * math.sin(site.latitude),
    )
    if rotation_deg == (0.0, 0.0, 0.0):
        return body_fixed
    return _mat_vec(euler_xyz_matrix(rotation_deg), body_fixed)


def _lerp_angle_deg(a: float, b: float, fraction: float) -> float:
    # Shortest angular arc; ties at 180 degrees resolve toward -180.
    delta = (b - a + 180.0) % 360.0 - 180.0
    return wrap_degrees(a + fraction * delta)


def interpolate(table: EphemerisTable, t: Epoch) -> StateSample:
    """Sample the table at ``t``: exact at knots, linear in position and
    shortest-arc in rotation angles between them."""
    times = table.times
    if t < times[0] or t > times[-1]:
        raise ValueError(
            f"time {t} outside table span [{times[0]}, {times[-1]}]"
        )
    i = bisect_left(times, t)
    if i < len(times) and times[i] == t:
        return table.samples[i]
    lo = table.samples[i - 1]
    hi = table.samples[i]
    f = (t - lo.time) / (hi.time - lo.time)
    g = 1.0 - f
    position = (
        g * lo.position[0] + f * hi.position[0],
        g * lo.position[1] + f * hi.position[1],
        g * lo.position[2] + f * hi.position[2],
    )
    rotation = None
    if lo.rotation is not None and hi.rotation is not None:
        rotation = (
            _lerp_angle_deg(lo.rotation[0], hi.rotation[0], f),
            _lerp_angle_deg(lo.rotation[1], hi.rotation[1], f),
            _lerp_angle_deg(lo.rotation[2], hi.rotation[2], f),
        )
    return StateSample(time=t, position=position, rotation=rotation)


def sample_times(start: Epoch, end: Epoch, step: float) -> list[float]:
    """Grid times start, start+step, ..., always closing with the exact
    end time even when it falls off the grid."""
    if not start < end:
        raise ValueError(f"invalid time range: start {start} must precede end {end}")
    if not step > 0.0:
        raise ValueError(f"step must be positive, got {step}")
    count = int(math.floor((end - start) / step + 1e-9))
    while count > 0 and start + count * step > end:
        count -= 1
    times = [start + k * step for k in range(count + 1)]
    if times[-1] < end:
        times.append(end)
    return times


def sample_trajectory(
    body: KeplerianElements | GeodeticSite,
    start: Epoch,
    end: Epoch,
    step: float,
    *,
    rotation: RotationModel | None = None,
    host_radius: float | None = None,
    host_rotation: RotationModel | None = None,
) -> EphemerisTable:
    """Sample a body over [start, end] on the fixed grid.

    Three body kinds are supported:

    * ``KeplerianElements`` alone: an orbiter node (no rotation triples).
    * ``KeplerianElements`` with ``rotation``: a planet, whose samples
      carry Euler rotation triples from the model.
    * ``GeodeticSite`` with ``host_radius`` and ``host_rotation``: a
      lander riding the host planet's surface (no rotation triples).
    """
    times = sample_times(start, end, step)
    samples: list[StateSample]
    if isinstance(body, KeplerianElements):
        if rotation is not None:
            samples = [
                StateSample(
                    time=t,
                    position=elements_to_position(body, t),
                    rotation=planet_rotation(rotation, t),
                )
                for t in times
            ]
        else:
            samples = [
                StateSample(time=t, position=elements_to_position(body, t)) for t in times
            ]
    elif isinstance(body, GeodeticSite):
        if host_radius is None or host_rotation is None:
            raise ValueError("lander sampling requires host_radius and host_rotation")
        samples = [
            StateSample(
                time=t,
                position=lander_position(body, host_radius, planet_rotation(host_rotation, t)),
            )
            for t in times
        ]
    else:
        raise TypeError(f"unsupported body definition: {type(body).__name__}")
    return EphemerisTable(samples=tuple(samples), step=step)
