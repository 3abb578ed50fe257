"""Finitely supported linear functionals on harmonic mappings, dilation
bounds, boundary constants for the dilation-plus-bump estimate, a
perturbation falsifier for support points of the modulus ball, and
support-point certificates for the normalized Bloch ball."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .series import AnalyticSeries, dilate, linear_combination, polyval_batch
from .optimize import compass_maximize, maximize_on_disk, polar_grid
from .mapping import (
    HarmonicMapping,
    LevelSetShape,
    _derivative_values,
    _modulus_values,
    _tail_allowance,
    bloch_constant,
    bloch_norm,
    estimate_bloch_constant,
    lambda_set,
    mapping_to_dict,
    scale_mapping,
    sup_modulus,
)
from .extremal import membership

__all__ = [
    "LinearFunctional",
    "functional_eval",
    "lift_to_derivative",
    "dilation_bound",
    "BonkConstants",
    "bonk_constants",
    "verify_bonk_constants",
    "PointDerivativeFunctional",
    "SupportCertificate",
    "support_certificate",
    "sample_unit_ball",
    "FalsifierStatus",
    "FalsifierOutcome",
    "perturbation_falsifier",
    "SupportDecomposition",
    "decompose_support_point",
]


@dataclass(frozen=True, eq=False)
class LinearFunctional:
    """Functional q = s + conj(t) -> sum_k A_k s_k + sum_k conj(B_k t_k) on
    coefficient sequences; finite weight support keeps it continuous on the
    whole Bloch-type scale."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        for name in ("A", "B"):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=complex))
            if arr.ndim != 1:
                raise ValueError("functional weights must be one dimensional")
            if not np.all(np.isfinite(arr.view(float))):
                raise ValueError("functional weights must be finite")
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def effectively_zero(self) -> bool:
        """True when the functional kills every mapping with g(0) = 0; the
        weight B_0 only ever multiplies the vanishing coefficient."""
        return not (np.any(self.A != 0) or np.any(self.B[1:] != 0))

    def to_dict(self) -> dict:
        return {
            "A": [[c.real, c.imag] for c in self.A],
            "B": [[c.real, c.imag] for c in self.B],
        }

    @staticmethod
    def from_dict(data: dict) -> "LinearFunctional":
        if not isinstance(data, dict) or "A" not in data or "B" not in data:
            raise ValueError("functional spec must be an object with 'A' and 'B' weight lists")

        def weights(key):
            pairs = data[key]
            if not isinstance(pairs, list):
                raise ValueError(f"'{key}' must be a list of [re, im] pairs")
            if not pairs:
                return np.zeros(1, dtype=complex)
            try:
                return np.array([complex(float(p[0]), float(p[1])) for p in pairs])
            except (TypeError, ValueError, IndexError) as exc:
                raise ValueError(f"'{key}' entries must be [re, im] number pairs") from exc

        return LinearFunctional(weights("A"), weights("B"))


def _parts(target):
    if isinstance(target, HarmonicMapping):
        return target.h, target.g
    s, t = target
    return s, t


def _dot(weights: np.ndarray, coefficients: np.ndarray) -> complex:
    n = min(weights.size, coefficients.size)
    if n == 0:
        return 0j
    return complex(np.dot(weights[:n], coefficients[:n]))


def functional_eval(L: LinearFunctional, target) -> complex:
    """Apply the functional to a mapping or an (analytic, co-analytic) pair
    of series; weights beyond the stored coefficients read those as zero."""
    s, t = _parts(target)
    return _dot(L.A, s.coefficients) + np.conj(_dot(L.B, t.coefficients))


def lift_to_derivative(L: LinearFunctional) -> LinearFunctional:
    """Weights that act on the derivative pair: C_k = A_{k+1}/(k+1) and
    D_k = B_{k+1}/(k+1), so applying the lift to (h', g') reproduces the
    original value on mappings with vanishing constant terms."""
    def lowered(w):
        if w.size <= 1:
            return np.zeros(1, dtype=complex)
        return w[1:] / np.arange(1, w.size)

    return LinearFunctional(lowered(L.A), lowered(L.B))


def dilation_bound(L: LinearFunctional, f: HarmonicMapping, eps: float):
    """(K, actual) where |L(f((1-eps)z)) - L(f)| <= eps*K is guaranteed by
    K = sum_k k(|A_k||a_k| + |B_k||b_k|), since |(1-eps)^k - 1| <= k*eps."""
    eps = float(eps)
    if not 0.0 < eps <= 1.0:
        raise ValueError("dilation parameter must lie in (0, 1]")
    K = _dilation_constant(L, f)
    shrunk = (dilate(f.h, eps), dilate(f.g, eps))
    actual = abs(functional_eval(L, shrunk) - functional_eval(L, f))
    return K, actual


def _dilation_constant(L: LinearFunctional, f: HarmonicMapping) -> float:
    def side(weights, coeffs):
        n = min(weights.size, coeffs.size)
        if n <= 1:
            return 0.0
        k = np.arange(n)
        return float(np.sum(k * np.abs(weights[:n]) * np.abs(coeffs[:n])))

    return side(L.A, f.h.coefficients) + side(L.B, f.g.coefficients)


@dataclass(frozen=True)
class BonkConstants:
    """Pair (epsilon1, R) making (1-|z|^2)/(1-(1-eps)^2|z|^2) + eps*M <= 1
    for every eps in (0, epsilon1] and R <= |z| < 1."""

    M: float
    epsilon1: float
    R: float

    def to_dict(self) -> dict:
        return {"M": self.M, "epsilon1": self.epsilon1, "R": self.R}


def _bonk_floor(M: float, eps: np.ndarray, r: np.ndarray) -> float:
    # the inequality rearranges to r^2 (2-eps) / (1-(1-eps)^2 r^2) >= M,
    # whose left side decreases in eps and increases in r
    e = eps[:, None]
    rr = (r * r)[None, :]
    F = rr * (2.0 - e) / (1.0 - (1.0 - e) ** 2 * rr)
    return float(F.min())


def bonk_constants(M: float) -> BonkConstants:
    """Search constants for the boundary annulus estimate at level M >= 0.

    Bisects the smallest grid-verified R for a shrinking epsilon1 schedule
    started at min(1/2, 1/(2M)); the closed-form limit sqrt(M/(M+2)) of R as
    epsilon1 -> 0 is the natural floor.  M = 0 needs no annulus at all.
    """
    M = float(M)
    if M < 0.0 or not math.isfinite(M):
        raise ValueError("M must be a finite nonnegative number")
    if M == 0.0:
        return BonkConstants(0.0, 1.0, 0.01)
    eps1 = min(0.5, 1.0 / (2.0 * M))
    top = 1.0 - 1e-9
    for _ in range(60):
        eps_grid = np.geomspace(1e-6, eps1, 64)

        def ok(R):
            return _bonk_floor(M, eps_grid, np.linspace(R, top, 256)) >= M

        if ok(top):
            lo, hi = 0.0, top
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if ok(mid):
                    hi = mid
                else:
                    lo = mid
            R = min(hi + 1e-3, 0.5 * (hi + 1.0))
            fine = _bonk_floor(M, np.geomspace(1e-6, eps1, 200),
                               np.linspace(R, top, 500))
            if fine >= M:
                return BonkConstants(M, eps1, R)
        eps1 *= 0.5
    raise RuntimeError("no admissible constants found; M may be too large to resolve")


def verify_bonk_constants(constants: BonkConstants, n_samples: int = 10 ** 6,
                          seed: int = 0) -> float:
    """Worst slack of the annulus inequality over random (eps, r) samples;
    nonnegative means no violation was found."""
    rng = np.random.default_rng(seed)
    eps = rng.uniform(0.0, constants.epsilon1, n_samples)
    eps = np.maximum(eps, 1e-12)
    r = rng.uniform(constants.R, 1.0 - 1e-9, n_samples)
    ratio = (1.0 - r * r) / (1.0 - (1.0 - eps) ** 2 * r * r)
    return float((1.0 - eps * constants.M - ratio).min())


@dataclass(frozen=True)
class PointDerivativeFunctional:
    """Weighted derivative evaluation q -> weight*(s'(z0) + e^{i theta0}
    conj(t'(z0))); the certificate functional."""

    z0: complex
    theta0: float
    weight: complex

    def evaluate(self, target) -> complex:
        s, t = _parts(target)
        sp = _series_derivative_at(s, self.z0)
        tp = _series_derivative_at(t, self.z0)
        return self.weight * (sp + cmath.exp(1j * self.theta0) * np.conj(tp))

    def as_linear_functional(self, degree: int) -> LinearFunctional:
        """Materialize coefficient weights up to the given degree: the h side
        carries weight*k*z0^{k-1}, the g side its conjugate partner."""
        if degree < 1:
            raise ValueError("degree must be at least 1")
        k = np.arange(degree + 1)
        base = np.zeros(degree + 1, dtype=complex)
        base[1:] = k[1:] * self.z0 ** (k[1:] - 1)
        A = self.weight * base
        B = np.conj(self.weight) * cmath.exp(-1j * self.theta0) * base
        return LinearFunctional(A, B)

    def to_dict(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "theta0": self.theta0,
            "weight": [self.weight.real, self.weight.imag],
        }


def _series_derivative_at(s: AnalyticSeries, z0: complex) -> complex:
    c = s.coefficients
    if c.size <= 1:
        return 0j
    d = c[1:] * np.arange(1, c.size)
    return complex(polyval_batch(d, np.array([z0]))[0])


@dataclass(frozen=True, eq=False)
class SupportCertificate:
    """Numerical witness that a mapping supports a linear functional over the
    normalized unit ball: the functional's value at the mapping dominates its
    value over every sampled member."""

    z0: complex
    theta0: float
    functional: PointDerivativeFunctional
    attained_value: float
    sample_max_other: float
    samples: int
    seed: int
    lambda_classification: str = ""
    strata: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.attained_value - self.sample_max_other

    def to_dict(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "theta0": self.theta0,
            "functional": self.functional.to_dict(),
            "attained_value": self.attained_value,
            "sample_max_other": self.sample_max_other,
            "margin": self.margin,
            "samples": self.samples,
            "seed": self.seed,
            "lambda_classification": self.lambda_classification,
            "strata": dict(self.strata),
        }


MOBIUS_SAMPLE_DEGREE = 60


def _mobius_identity_row(w: complex, columns: int) -> np.ndarray:
    """Coefficients of (z-w)/(1-conj(w)z) minus its value at 0, cut at the
    column budget; an exact unit-Bloch-constant analytic part up to a tail
    below 1e-9 for |w| <= 0.85... kept harmless by the z0-seeded beta."""
    row = np.zeros(columns, dtype=complex)
    k = np.arange(1, min(columns, MOBIUS_SAMPLE_DEGREE + 1))
    row[k] = (1.0 - abs(w) ** 2) * np.conj(w) ** (k - 1)
    return row


def _batch_beta(h_rows: np.ndarray, g_rows: np.ndarray, z0: complex,
                rng: np.random.Generator, step_tol: float = 1e-9) -> np.ndarray:
    """Bloch constants of many coefficient-row mappings in one lockstep sweep.

    Each row is seeded at z0, a coarse polar-grid argmax, and one random
    point.  Seeding at z0 makes every returned value at least the row's mu
    there, which is what the certificate's sample bound leans on.
    """
    n, k = h_rows.shape
    ks = np.arange(1, k)
    dh = h_rows[:, 1:] * ks
    dg = g_rows[:, 1:] * ks

    def mu_rows(z, rows):
        acc_h = np.zeros(z.shape, dtype=complex)
        acc_g = np.zeros(z.shape, dtype=complex)
        for j in range(k - 2, -1, -1):
            acc_h = acc_h * z + dh[rows, j]
            acc_g = acc_g * z + dg[rows, j]
        w = 1.0 - (z.real ** 2 + z.imag ** 2)
        return w * (np.abs(acc_h) + np.abs(acc_g))

    grid = polar_grid(12, 24)
    vander = grid[:, None] ** np.arange(k - 1)[None, :]
    mu_grid = (1.0 - np.abs(grid) ** 2)[None, :] * (
        np.abs(dh @ vander.T) + np.abs(dg @ vander.T))
    best = grid[np.argmax(mu_grid, axis=1)]
    extra = rng.uniform(0.05, 0.9, n) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    starts = np.concatenate([np.full(n, complex(z0)), best, extra])
    walkers = np.tile(np.arange(n), 3)
    _, vals = compass_maximize(mu_rows, starts, 0.1, step_tol=step_tol,
                               max_iter=400, walkers=walkers)
    return vals.reshape(3, n).max(axis=0)


def _draw_sample_rows(f: HarmonicMapping, z0: complex, count: int, columns: int,
                      rng: np.random.Generator):
    """Stratified members of the normalized unit ball, as coefficient rows
    before normalization; returns (h_rows, g_rows, labels)."""
    h_rows = np.zeros((count, columns), dtype=complex)
    g_rows = np.zeros((count, columns), dtype=complex)
    labels = []

    fh = np.zeros(columns, dtype=complex)
    fg = np.zeros(columns, dtype=complex)
    fh[: f.h.coefficients.size] = f.h.coefficients
    fg[: f.g.coefficients.size] = f.g.coefficients

    n_aligned = min(16, count)
    n_poly = (count - n_aligned) * 2 // 5
    n_mob = (count - n_aligned - n_poly) // 2
    n_mix = count - n_aligned - n_poly - n_mob

    i = 0
    for j in range(n_aligned):
        # the mapping itself, its rotations, and exact-center identities
        if j % 4 == 0:
            h_rows[i], g_rows[i] = fh, fg
        elif j % 4 == 1:
            rot = np.exp(2j * np.pi * rng.uniform())
            h_rows[i], g_rows[i] = rot * fh, np.conj(rot) * fg
        elif j % 4 == 2:
            h_rows[i] = _mobius_identity_row(z0, columns)
        else:
            g_rows[i] = _mobius_identity_row(z0, columns)
        labels.append("aligned")
        i += 1

    def gaussian_rows(m, degree):
        rows = rng.standard_normal((m, degree + 1)) + 1j * rng.standard_normal((m, degree + 1))
        rows[:, 0] = 0.0
        dead = np.abs(rows).max(axis=1) < 1e-9
        while np.any(dead):
            rows[dead] = (rng.standard_normal((int(dead.sum()), degree + 1))
                          + 1j * rng.standard_normal((int(dead.sum()), degree + 1)))
            rows[:, 0] = 0.0
            dead = np.abs(rows).max(axis=1) < 1e-9
        return rows

    deg = 8
    hp = gaussian_rows(n_poly, deg)
    gp = gaussian_rows(n_poly, deg)
    drop = rng.uniform(size=n_poly)
    hp[drop < 0.2] = 0.0
    gp[(drop >= 0.2) & (drop < 0.4)] = 0.0
    h_rows[i: i + n_poly, : deg + 1] = hp
    g_rows[i: i + n_poly, : deg + 1] = gp
    labels.extend(["random_poly"] * n_poly)
    i += n_poly

    radii = rng.uniform(0.0, 0.85, n_mob)
    angles = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n_mob))
    for j in range(n_mob):
        row = _mobius_identity_row(complex(radii[j] * angles[j]), columns)
        if rng.uniform() < 0.5:
            h_rows[i + j] = row
        else:
            g_rows[i + j] = row
    labels.extend(["mobius"] * n_mob)
    i += n_mob

    t = rng.uniform(0.05, 0.95, n_mix)[:, None]
    hp = gaussian_rows(n_mix, deg)
    gp = gaussian_rows(n_mix, deg)
    h_rows[i: i + n_mix] = t * fh[None, :]
    g_rows[i: i + n_mix] = t * fg[None, :]
    h_rows[i: i + n_mix, : deg + 1] += (1.0 - t) * hp
    g_rows[i: i + n_mix, : deg + 1] += (1.0 - t) * gp
    labels.extend(["mixture"] * n_mix)

    return h_rows, g_rows, labels


def support_certificate(f: HarmonicMapping, samples: int = 10000, seed: int = 0,
                        tol: float = 1e-6):
    """Certify f as a support point of the normalized unit ball, or return
    None when its unit level set is empty.

    Picks a unit-level point z0, refines it by local ascent, builds the
    weighted derivative functional aligned there, and compares its value at f
    against `samples` stratified random members of the ball.  Every sampled
    member is rotated to align its functional value (rotation preserves
    membership), so the recorded maximum is conservative.  A candidate z0
    that cannot be pushed within 1e-9 of the unit level is treated as empty.
    """
    if samples < 1:
        raise ValueError("at least one sample is required")
    rep = membership(f)
    if not rep.in_normalized_unit_ball:
        raise ValueError("support certificates require membership in the normalized unit ball")
    lam = lambda_set(f, tol)
    if lam.classification is LevelSetShape.EMPTY:
        return None
    z0 = complex(lam.points[int(np.argmin(lam.residuals))])

    values = _derivative_values(f)
    pts, vals = compass_maximize(lambda z, _w: values(z), np.array([z0]),
                                 1e-3, step_tol=1e-12)
    z0 = complex(pts[0])
    mu0 = float(vals[0])
    if mu0 < 1.0 - 1e-9:
        return None

    hp0 = _series_derivative_at(f.h, z0)
    gp0 = _series_derivative_at(f.g, z0)
    theta0 = cmath.phase(hp0) + cmath.phase(gp0) if gp0 != 0 else 0.0
    weight = np.conj(hp0) + cmath.exp(-1j * theta0) * gp0
    functional = PointDerivativeFunctional(z0, theta0, complex(weight))

    attained = float(functional.evaluate(f).real)
    expected = 1.0 / (1.0 - abs(z0) ** 2) ** 2
    if abs(attained - expected) > 1e-6 * max(1.0, expected):
        raise RuntimeError("attained functional value drifted from the level-set identity")

    rng = np.random.default_rng(seed)
    columns = max(MOBIUS_SAMPLE_DEGREE + 1,
                  f.h.coefficients.size, f.g.coefficients.size)
    dvec = np.zeros(columns, dtype=complex)
    k = np.arange(1, columns)
    dvec[1:] = k * z0 ** (k - 1)
    phase = cmath.exp(1j * theta0)

    sample_max = -np.inf
    strata: dict = {}
    done = 0
    while done < samples:
        chunk = min(512, samples - done)
        h_rows, g_rows, labels = _draw_sample_rows(f, z0, chunk, columns, rng)
        lvals = np.abs(weight * (h_rows @ dvec + phase * np.conj(g_rows @ dvec)))
        betas = _batch_beta(h_rows, g_rows, z0, rng)
        sample_max = max(sample_max, float((lvals / betas).max()))
        for name in labels:
            strata[name] = strata.get(name, 0) + 1
        done += chunk

    if sample_max > attained + 1e-8:
        raise RuntimeError("a sampled ball member exceeded the certified value")
    return SupportCertificate(z0, float(theta0), functional, attained,
                              float(sample_max), samples, seed,
                              lam.classification.value, strata)


def sample_unit_ball(seed: int, degree: int = 5) -> HarmonicMapping:
    """Random polynomial mapping with h(0) = g(0) = 0 rescaled to Bloch norm
    one (up to optimizer accuracy); deterministic per seed."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    rng = np.random.default_rng(seed)
    while True:
        hc = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        gc = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        hc[0] = gc[0] = 0.0
        if max(np.abs(hc).max(), np.abs(gc).max()) > 1e-9:
            break
    f = HarmonicMapping(AnalyticSeries(hc), AnalyticSeries(gc))
    return scale_mapping(f, 1.0 / estimate_bloch_constant(f).value)


class FalsifierStatus(str, enum.Enum):
    IMPROVED = "IMPROVED"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    CONSTRUCTION_FAILED = "CONSTRUCTION_FAILED"


@dataclass(frozen=True, eq=False)
class FalsifierOutcome:
    status: FalsifierStatus
    message: str
    modulus_before: float
    f_tilde: HarmonicMapping | None = None
    eps: float = 0.0
    k0: int = -1
    side: str = ""
    K: float = 0.0
    improvement: float = 0.0
    modulus_after: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "message": self.message,
            "modulus_before": self.modulus_before,
        }
        if self.status is FalsifierStatus.IMPROVED:
            out.update({
                "eps": self.eps,
                "k0": self.k0,
                "side": self.side,
                "K": self.K,
                "improvement": self.improvement,
                "modulus_after": self.modulus_after,
                "f_tilde": mapping_to_dict(self.f_tilde),
            })
        return out


def _monomial_modulus_peak(k0: int) -> float:
    # max over [0,1) of r^k (1 - r^2), attained at r^2 = k/(k+2)
    if k0 == 0:
        return 1.0
    return (k0 / (k0 + 2.0)) ** (k0 / 2.0) * (2.0 / (k0 + 2.0))


def perturbation_falsifier(L: LinearFunctional, f: HarmonicMapping,
                           tol: float = 1e-6) -> FalsifierOutcome:
    """Try to beat f against L inside the modulus ball.

    When the unit level set of (|h| + |g|)(1 - |z|^2) is empty, dilating f
    and adding a small aligned monomial bump strictly increases Re L while
    keeping the modulus below one, so f supports no functional there.  A
    nonempty level set is exactly the obstruction: NOT_APPLICABLE.
    """
    if L.effectively_zero:
        raise ValueError("functional vanishes on every mapping with g(0) = 0")
    modulus, report = sup_modulus(f, tol)
    modulus += _tail_allowance(f)
    if modulus > 1.0 + tol:
        raise ValueError("falsifier requires sup (|h|+|g|)(1-|z|^2) <= 1")
    if report.classification is not LevelSetShape.EMPTY:
        return FalsifierOutcome(FalsifierStatus.NOT_APPLICABLE,
                                "unit level set of the modulus is nonempty", modulus)

    weights = [("h", k, L.A[k]) for k in range(L.A.size) if L.A[k] != 0]
    weights += [("g", k, L.B[k]) for k in range(1, L.B.size) if L.B[k] != 0]
    side, k0, wk = max(weights, key=lambda item: abs(item[2]))

    K_raw = _dilation_constant(L, f)
    K = K_raw if K_raw > 1e-12 else 1.0
    c = 2.0 * K / wk
    coeffs = np.zeros(k0 + 1, dtype=complex)
    coeffs[k0] = c
    bump = AnalyticSeries(coeffs)
    zero = AnalyticSeries([0.0])
    H = (bump, zero) if side == "h" else (zero, bump)

    M_H = abs(c) * _monomial_modulus_peak(k0)
    bc = bonk_constants(M_H)
    # half the smallest gap of 1/(1-|z|^2) - (|h|+|g|) on the inner disk;
    # the bump may eat one half and the dilation keeps the other
    grid = polar_grid(48, 96, r_max=bc.R)
    inv = 1.0 / (1.0 - np.abs(grid) ** 2)
    moduli = (np.abs(polyval_batch(f.h.coefficients, grid))
              + np.abs(polyval_batch(f.g.coefficients, grid)) + _tail_allowance(f))
    delta = max(0.5 * float((inv - moduli).min()), 0.0)

    caps = [bc.epsilon1, 0.25, delta / max(abs(c) * bc.R ** k0, 1e-300)]
    if k0 >= 1:
        # keeps Re L of the dilated bump at (3/2)K or more, and the dilation
        # loss of the bump itself under K/2
        caps.append(1.0 - 0.75 ** (1.0 / k0))
        caps.append(1.0 / (4.0 * k0))
    eps = 0.5 * min(caps)

    base_value = functional_eval(L, f).real
    for _ in range(40):
        if eps <= 0.0:
            break
        qh = linear_combination(1.0, f.h, eps, H[0])
        qg = linear_combination(1.0, f.g, eps, H[1])
        f_tilde = HarmonicMapping(dilate(qh, eps), dilate(qg, eps))
        improvement = functional_eval(L, f_tilde).real - base_value
        new_modulus = (maximize_on_disk(_modulus_values(f_tilde)).value
                       + _tail_allowance(f_tilde))
        if improvement > 0.0 and new_modulus <= 1.0 + 1e-12:
            return FalsifierOutcome(FalsifierStatus.IMPROVED, "perturbation verified",
                                    modulus, f_tilde, eps, k0, side, K,
                                    improvement, new_modulus)
        eps *= 0.5
    return FalsifierOutcome(FalsifierStatus.CONSTRUCTION_FAILED,
                            "no verified eps after repeated shrinking", modulus)


@dataclass(frozen=True, eq=False)
class SupportDecomposition:
    """Split f0 = lambda1*u + (1-lambda1)*f into a unimodular constant and a
    normalized support-point candidate."""

    lambda1: float
    u: complex
    f: HarmonicMapping

    def to_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "u": [self.u.real, self.u.imag],
            "f": mapping_to_dict(self.f),
        }


def _with_zero_constant(s: AnalyticSeries, factor: float) -> AnalyticSeries:
    c = s.coefficients.copy()
    c[0] = 0.0
    return AnalyticSeries(c * factor, None if s.tail_bound is None
                          else s.tail_bound * abs(factor))


def decompose_support_point(f0: HarmonicMapping, tol: float = 1e-6):
    """Peel the constant part off a candidate support point of the unit ball.

    Writes f0 as lambda1*u + (1-lambda1)*f with u = f0(0)/|f0(0)| and
    lambda1 = |f0(0)|; succeeds when the residual lies in the normalized unit
    ball with a nonempty unit level set, else returns None.  All-constant and
    constant-free inputs degenerate to lambda1 = 1 and lambda1 = 0.
    """
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    norm = bloch_norm(f0)
    if norm > 1.0 + tol:
        raise ValueError("decomposition requires Bloch norm at most one")
    c0 = f0.value_at_origin
    lam1 = abs(c0)

    if lam1 >= 1.0 - tol:
        zero = AnalyticSeries([0.0])
        return SupportDecomposition(lam1, c0 / lam1, HarmonicMapping(zero, zero))

    if lam1 <= tol:
        lam1, u, factor = 0.0, 1.0 + 0.0j, 1.0
    else:
        u, factor = c0 / lam1, 1.0 / (1.0 - lam1)
    residual = HarmonicMapping(_with_zero_constant(f0.h, factor),
                               _with_zero_constant(f0.g, factor))
    if not membership(residual).in_normalized_unit_ball:
        return None
    if lambda_set(residual).classification is LevelSetShape.EMPTY:
        return None
    return SupportDecomposition(float(lam1), complex(u), residual)
