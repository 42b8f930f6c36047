"""Acceptance checks, one function per criterion.

Each check returns a :class:`Criterion` with a pass flag and a one-line
detail string; ``run_all`` drives them for the ``verify`` subcommand and the
test-suite.
"""

from __future__ import annotations

import contextlib
import io
import math
from dataclasses import dataclass

import numpy as np

from . import asymptotics as asy
from .energy import (AtomicMeasure, StepMeasure, J_functional, field_energy,
                     measure_log_energy, mixture, pairwise_log_energy,
                     smooth_configuration, symmetrize_sqrt, ullman_grid)
from .fekete import delta_sequence, maximize, objective
from .matnum import norm_from_singular_values, schatten_norm, singular_values
from .mcvol import singular_value_quadrature, volume_ratio_mc
from .rng import stream
from .ullman import Ullman, ks_distance

P_SET = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def closed_form_anchors() -> Criterion:
    e1 = abs(asy.delta(1.0) - math.exp(-0.5))
    einf = abs(asy.delta(math.inf) - 0.25)
    grid = np.geomspace(0.1, 100.0, 50)
    resid = max(abs(math.log(asy.delta(p)) - asy.sup_J(p)) for p in grid)
    ok = e1 <= 1e-12 and einf <= 1e-12 and resid <= 1e-12
    return Criterion(1, "closed-form anchors", ok,
                     f"|D(1)-e^-1/2|={e1:.1e} |D(inf)-1/4|={einf:.1e} max|log D - supJ|={resid:.1e}")


def _grid_oracle_n2(p: float, size: int = 601) -> float:
    """Brute-force maximum of the n=2 objective over a grid of ordered pairs."""
    ts = np.linspace(0.0, 3.0, size)
    a, b = np.meshgrid(ts, ts, indexing="ij")
    ok = b > a
    a, b = a[ok], b[ok]
    vals = np.log(b - a) - np.log(0.5 * (a**p + b**p)) / p
    return float(np.max(vals))


def fekete_two_points() -> Criterion:
    worst = 0.0
    for p in P_SET:
        val = maximize(2, p).log_delta_n
        oracle = _grid_oracle_n2(p)
        worst = max(worst, abs(val - math.log(2.0) / p), abs(val - oracle))
    return Criterion(2, "Fekete exactness at n=2", worst <= 1e-8,
                     f"max deviation from (log 2)/p and grid oracle {worst:.1e}")


def monotone_convergence(n_max: int = 64, ps=(1.0, 2.0)) -> Criterion:
    parts = []
    ok = True
    for p in ps:
        seq = delta_sequence(p, n_max)
        target = asy.delta(p)
        mono = seq.is_monotone(1e-7)
        above = bool(np.all(seq.deltas >= target - 1e-7))
        last = seq.deltas[-1] / target - 1.0
        ext = seq.limit / target - 1.0
        good = mono and above and abs(last) <= 0.05 and abs(ext) <= 0.01
        ok &= good
        parts.append(f"p={p:g}: monotone={mono} above={above} "
                     f"D_{n_max}/D-1={last:+.4f}(<=0.05) extrap/D-1={ext:+.5f}(<=0.01)")
    return Criterion(3, "monotone convergence of Delta_n", bool(ok), "; ".join(parts))


def ullman_identities(draws: int = 1_000_000, seed: int = 0) -> Criterion:
    moment_err = 0.0
    worst_z = 0.0
    worst_ks = 0.0
    for k, p in enumerate(P_SET):
        dist = Ullman(p)
        moment_err = max(moment_err, abs(dist.abs_moment_quadrature() - dist.abs_moment()))
        mean, se = dist.log_distance_mc(stream(seed, 1, k), draws)
        worst_z = max(worst_z, abs(mean - dist.log_distance_expectation()) / se)
        worst_ks = max(worst_ks, ks_distance(dist, dist.sample(stream(seed, 2, k), draws)))
    x = np.round(np.arange(-1000, 1001) * 1e-3, 12)
    semi = np.max(np.abs(Ullman(2).density(x) - (2 / math.pi) * np.sqrt(np.clip(1 - x * x, 0, None))))
    ok = moment_err <= 1e-8 and worst_z <= 3.0 and semi <= 1e-10 and worst_ks < 0.002
    return Criterion(4, "Ullman identities", ok,
                     f"moment err {moment_err:.1e}; E log|U-V| max |z|={worst_z:.2f}; "
                     f"semicircle err {semi:.1e}; KS max {worst_ks:.5f}")


def random_atomic(rng: np.random.Generator) -> AtomicMeasure:
    k = int(rng.integers(5, 21))
    loc = np.sort(rng.uniform(0.0, 3.0, k))
    w = rng.uniform(0.1, 1.0, k)
    return AtomicMeasure(loc, w / w.sum())


def symmetrization_identity(trials: int = 100, seed: int = 0) -> Criterion:
    worst = 0.0
    rng = stream(seed, 5)
    for _ in range(trials):
        mu = random_atomic(rng)
        sym = symmetrize_sqrt(mu)
        for p in P_SET:
            worst = max(worst, abs(J_functional(mu, p) - 2.0 * J_functional(sym, 2.0 * p)))
    return Criterion(5, "symmetrization identity", worst <= 1e-10,
                     f"max |J_p(mu) - 2 J_2p(sym mu)| = {worst:.1e} over {trials} measures")


def perturbations(base: StepMeasure) -> list[tuple[str, StepMeasure]]:
    """The fixed family of twenty competitors used in the minimality check."""
    x = 0.5 * (base.left + base.right)
    grid = (base.left[0], base.right[-1], base.density.size)

    def shape(f):
        rho = f(x)
        return StepMeasure.grid(grid[0], grid[1], rho / np.sum(rho * base.widths))

    flat = shape(lambda x: np.ones_like(x))
    tent = shape(lambda x: 1.0 - np.abs(x))
    vee = shape(lambda x: np.abs(x))
    centre = shape(lambda x: (np.abs(x) < 0.5).astype(float))
    right = shape(lambda x: (x > 0).astype(float))
    out = []
    for lam in (0.02, 0.05, 0.1, 0.2, 0.5):
        out.append((f"uniform mix {lam}", mixture([base, flat], [1 - lam, lam])))
    for name, other in (("tent", tent), ("vee", vee), ("centre", centre)):
        for lam in (0.05, 0.1, 0.2):
            out.append((f"{name} mix {lam}", mixture([base, other], [1 - lam, lam])))
    out.append(("one-sided mix 0.1", mixture([base, right], [0.9, 0.1])))
    for b in (0.8, 1.25, 0.95, 1.05):
        out.append((f"rescale {b}", base.scaled(b)))
    out.append(("shift 0.05", base.shifted(0.05)))
    return out


def equilibrium_minimality(cells: int = 2000) -> Criterion:
    worst = math.inf
    worst_name = ""
    for p in (1.0, 2.0, 4.0):
        base = ullman_grid(p, cells)
        e0 = field_energy(base, p)
        for name, mu in perturbations(base):
            margin = field_energy(mu, p) - e0
            if margin < worst:
                worst, worst_name = margin, f"p={p:g} {name}"
    return Criterion(6, "equilibrium minimality", worst >= -1e-5,
                     f"smallest margin {worst:.2e} ({worst_name}), allowed >= -1e-5")


def smoothing_construction() -> Criterion:
    ok = True
    parts = []
    for n in (5, 20):
        t = maximize(n, 1.0).points
        i, j = np.triu_indices(n, 1)
        mean_field = 2.0 / n**2 * math.fsum(np.log(t[j] - t[i]))
        for eps in (1e-3, 1e-5):
            dev = measure_log_energy(smooth_configuration(t, eps)) - mean_field
            env = 5.0 * (math.log(1.0 / eps) / n**2 + eps)
            self_term = (math.log(eps) - 1.5) / n
            ok &= abs(dev) <= env
            parts.append(f"n={n} eps={eps:g}: dev={dev:+.4f} env={env:.4f} "
                         f"(dev minus self-interaction {dev - self_term:+.1e})")
    return Criterion(7, "smoothing construction", ok, "; ".join(parts))


def operator_norm_and_vr(trials: int = 10_000, seed: int = 0) -> Criterion:
    exceed = 0.0
    witness_gap = 0.0
    for n in range(2, 9):
        for field in ("real", "complex"):
            rng = stream(seed, 8, n, field == "complex")
            A = rng.standard_normal((trials, n, n))
            if field == "complex":
                A = A + 1j * rng.standard_normal((trials, n, n))
            # half the trials get a dominant rank-one part to probe the p >= 2 witness
            spike = rng.standard_normal((trials // 2, n, 1)) @ rng.standard_normal((trials // 2, 1, n))
            A[: trials // 2] = A[: trials // 2] * 0.05 + spike
            s = singular_values(A)
            s = s / norm_from_singular_values(s, 2.0)[:, None]
            for p in (1.0, 1.5, 2.0, 3.0, math.inf):
                bound = asy.op_norm_2_to_p(n, p)
                exceed = max(exceed, float(np.max(norm_from_singular_values(s, p))) / bound - 1.0)
                w1 = np.eye(n) / math.sqrt(n)
                w2 = np.zeros((n, n))
                w2[0, 0] = 1.0
                best = max(schatten_norm(w1, p), schatten_norm(w2, p))
                witness_gap = max(witness_gap, abs(best - bound))
    vr2 = max(abs(asy.volume_ratio_asymptote(n, 2) - 1.0) for n in range(1, 50))
    vr1 = asy.volume_ratio_asymptote(10, 1)
    vr1_err = abs(vr1 - math.pi / (2 * math.exp(0.25)))
    bound_ok = vr1 <= 2 / math.exp(0.25)
    h = 1e-9
    cont = max(abs(asy.volume_ratio_asymptote(n, 2 + h) - asy.volume_ratio_asymptote(n, 2 - h))
               for n in range(1, 50))
    ok = (exceed <= 1e-12 and witness_gap <= 1e-9 and vr2 <= 1e-12 and vr1_err <= 1e-12
          and bound_ok and cont <= 1e-7)
    return Criterion(8, "operator norm and volume ratio", ok,
                     f"max excess {exceed:.1e}; witness gap {witness_gap:.1e}; |vr(2)-1|={vr2:.1e}; "
                     f"|vr(1)-pi/(2e^1/4)|={vr1_err:.1e}; vr(1)<=2/e^1/4: {bound_ok}; p=2 continuity {cont:.1e}")


def mc_versus_quadrature(samples: int = 10_000_000, seed: int = 0, threads: int = 1) -> Criterion:
    worst = 0.0
    parts = []
    for field in ("real", "complex"):
        for p in (1.0, 1.5, 3.0, math.inf):
            est = volume_ratio_mc(2, p, field, samples, seed, threads)
            quad = singular_value_quadrature(2, p, field)
            z = abs(est.value - quad) / est.stderr
            worst = max(worst, z)
            parts.append(f"{field[0]}{p:g}:z={z:.2f}")
    ones = all(volume_ratio_mc(1, p, f, 10_000, seed).value == 1.0
               for p in (0.5, 1.0, 3.0, math.inf) for f in ("real", "complex"))
    return Criterion(9, "Monte-Carlo vs quadrature", worst <= 3.0 and ones,
                     f"max |z|={worst:.2f} ({' '.join(parts)}); n=1 ratios exactly 1: {ones}")


def euclidean_cross_check(n: int = 50) -> Criterion:
    pred = asy.volume_radius_asymptote(n, 2, "real").radius
    exact = asy.euclidean_ball_radius(n * n)
    ratio = pred / exact
    return Criterion(10, "Euclidean cross-check", abs(ratio - 1) <= 0.02,
                     f"asymptote/exact radius at n={n}: {ratio:.6f}")


def reproducibility() -> Criterion:
    from .cli import main

    commands = [
        ["ullman", "sample", "--p", "2", "--count", "10", "--seed", "7"],
        ["ullman", "moments", "--p", "1", "--pairs", "20000", "--seed", "3", "--format", "csv"],
        ["mc-volume", "--n", "2", "--p", "1", "--samples", "20000", "--seed", "1", "--threads", "2"],
        ["fekete", "--n", "6", "--p", "1", "--seed", "5", "--format", "json"],
        ["delta-seq", "--p", "2", "--n-max", "6", "--seed", "5", "--format", "csv"],
    ]
    same = True
    for argv in commands:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                main(argv)
            outs.append(buf.getvalue().encode())
        same &= outs[0] == outs[1] and len(outs[0]) > 0
    return Criterion(11, "reproducibility", same, f"{len(commands)} seeded commands byte-identical: {same}")


CRITERIA = (closed_form_anchors, fekete_two_points, monotone_convergence, ullman_identities,
            symmetrization_identity, equilibrium_minimality, smoothing_construction,
            operator_norm_and_vr, mc_versus_quadrature, euclidean_cross_check, reproducibility)


def run_all(report=print) -> list[Criterion]:
    results = []
    for check in CRITERIA:
        res = check()
        report(res.line())
        results.append(res)
    return results
