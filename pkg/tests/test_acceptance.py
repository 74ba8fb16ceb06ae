"""Acceptance gate: one test per shipped guarantee, with runtime budgets.

Run with `pytest tests/test_acceptance.py -v -s` to see one summary line
per criterion. Each test prints its line before asserting, so a failure
still reports what was measured.
"""

import time

import numpy as np

import reference
from lieform.advection import AdvectionConfig, advect, lie_increment, step
from lieform.contraction import contract
from lieform.derivative import exterior_derivative
from lieform.forms import AnalyticForm, Cochain, RectangleForm, discretize
from lieform.grid import boundary_chain, build_complex
from lieform.reconstruct import SchemeKind, Stencil1D, extrusion_integral
from lieform.scenarios import builtin_scenario, fit_convergence_slope, run_scenario
from lieform.velocity import (ConstantVelocity, StaggeredVelocity,
                              discretize_velocity, rudman_vortex)


def _finish(num, budget, t0, ok, detail):
    elapsed = time.perf_counter() - t0
    status = "PASS" if (ok and elapsed < budget) else "FAIL"
    print(f"[{status}] criterion-{num}: {detail} "
          f"({elapsed:.2f}s, budget {budget:.0f}s)")
    assert ok, f"criterion-{num}: {detail}"
    assert elapsed < budget, f"criterion-{num} over budget: {elapsed:.2f}s"


def _ulp_ok(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    diff = np.abs(a - b)
    tol = np.spacing(np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all((diff == 0.0) | (diff <= tol)))


def test_criterion_1_structural_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    ok = True
    worst_dd = 0.0
    for n in (8, 16, 32, 64, 128):
        g = build_complex(n, n, 1.0 / n)
        f = Cochain(g, 0, rng.standard_normal(g.cell_count(0)))
        dd = exterior_derivative(exterior_derivative(f))
        bound = 1e-13 * np.max(np.abs(f.values))
        worst_dd = max(worst_dd, float(np.max(np.abs(dd.values))))
        ok = ok and np.max(np.abs(dd.values)) <= bound
        for k in (0, 1):
            w = Cochain(g, k, rng.standard_normal(g.cell_count(k)))
            dw = exterior_derivative(w).values
            vals = w.values
            for idx in range(g.cell_count(k + 1)):
                acc = 0.0
                for col, sign in boundary_chain(g, g.unflatten(k + 1, idx)):
                    acc = acc + sign * vals[col]
                want = dw[idx]
                if acc != want and abs(acc - want) > np.spacing(
                        max(abs(acc), abs(want))):
                    ok = False
    _finish(1, 1.0, t0, ok,
            f"dd bound and every-cell pairing on 8..128 (max |ddf| {worst_dd:.2e})")


def test_criterion_2_update_formula_oracle():
    t0 = time.perf_counter()
    ok = True
    rng = np.random.default_rng(2)
    h = 0.25
    dt = 0.3 * h
    for n in (4, 8):
        g = build_complex(n, n, h)
        for _ in range(10):
            fx = rng.uniform(0.1, 1.0, g.shape) * h
            fy = rng.uniform(0.1, 1.0, g.shape) * h
            vel = StaggeredVelocity(g, fx, fy)
            wx = rng.standard_normal(g.shape)
            wy = rng.standard_normal(g.shape)
            ref = reference.update_1form_positive_loop(
                wx.tolist(), wy.tolist(), fx.tolist(), fy.tolist(), dt, h)
            w1 = Cochain.from_components(g, wx, wy)
            dw = exterior_derivative(w1)
            ok = ok and _ulp_ok(dw.plane(), ref["curl"])
            edge = contract(dw, vel, dt).cochain
            ok = ok and _ulp_ok(edge.component("x"), ref["edge"][0])
            ok = ok and _ulp_ok(edge.component("y"), ref["edge"][1])
            node = contract(w1, vel, dt).cochain
            ok = ok and _ulp_ok(node.plane(), ref["node"])
            new = step(w1, vel, AdvectionConfig(dt, 1))
            ok = ok and _ulp_ok(new.component("x"), ref["new"][0])
            ok = ok and _ulp_ok(new.component("y"), ref["new"][1])
    _finish(2, 1.0, t0, ok,
            "positive-flux transcription matched stagewise on 4x4 and 8x8")


def test_criterion_3_commutation_and_closedness():
    t0 = time.perf_counter()
    g = build_complex(48, 48, 1.0 / 48)
    vel = discretize_velocity(ConstantVelocity(1.0, 1.0), g)
    w0 = discretize(RectangleForm(1, 0.3, 0.7, 0.3, 0.7,
                                  dx_coeff=0.0, dy_coeff=1.0), g)
    smooth = AnalyticForm(0, (lambda x, y: np.sin(2.0 * np.pi * x)
                              * np.sin(2.0 * np.pi * y),))
    ok = True
    worst = 0.0
    closed_gap = 0.0
    for scheme in (SchemeKind.UPWIND, SchemeKind.WENO7):
        cfg = AdvectionConfig(1e-3, 1000, scheme)
        w = w0
        for _ in range(cfg.steps):
            dL = exterior_derivative(lie_increment(w, vel, cfg))
            Ld = lie_increment(exterior_derivative(w), vel, cfg)
            scale = max(1.0, float(np.max(np.abs(dL.values))),
                        float(np.max(np.abs(Ld.values))))
            gap = float(np.max(np.abs(dL.values - Ld.values))) / scale
            worst = max(worst, gap)
            w = step(w, vel, cfg)
        ok = ok and worst <= 1e-12
        wc = exterior_derivative(discretize(smooth, g))
        bound = 1e-10 * float(np.max(np.abs(wc.values)))
        wN = advect(wc, vel, cfg)
        end = float(np.max(np.abs(exterior_derivative(wN).values)))
        closed_gap = max(closed_gap, end)
        ok = ok and end <= bound
    _finish(3, 30.0, t0, ok,
            f"1000-step commutation gap {worst:.2e}, final |d omega| {closed_gap:.2e}")


def test_criterion_4_smooth_convergence(tmp_path):
    t0 = time.perf_counter()
    records = run_scenario(builtin_scenario("convergence-smooth-constant"),
                           tmp_path)
    ok = True
    shown = []
    for scheme in (SchemeKind.UPWIND, SchemeKind.WENO7):
        fit = fit_convergence_slope([r for r in records if r.scheme is scheme])
        shown.append(f"{scheme.value} {fit['l1']:.3f}/{fit['l2']:.3f}")
        ok = ok and 0.8 <= fit["l1"] <= 1.3 and 0.8 <= fit["l2"] <= 1.3
    _finish(4, 300.0, t0, ok, "slopes " + ", ".join(shown))


def test_criterion_5_vortex_forward_backward(tmp_path):
    t0 = time.perf_counter()
    records = run_scenario(builtin_scenario("convergence-smooth-vortex"),
                           tmp_path)
    ok = True
    shown = []
    for scheme in (SchemeKind.UPWIND, SchemeKind.WENO7):
        group = sorted((r for r in records if r.scheme is scheme),
                       key=lambda r: r.resolution)
        for a, b in zip(group, group[1:]):
            ok = ok and b.l1 < a.l1 and b.l2 < a.l2
        fit = fit_convergence_slope(group)
        shown.append(f"{scheme.value} {fit['l1']:.3f}/{fit['l2']:.3f}")
        ok = ok and fit["l1"] >= 0.8 and fit["l2"] >= 0.8
    _finish(5, 300.0, t0, ok, "monotone, slopes " + ", ".join(shown))


def test_criterion_6_scheme_ordering(tmp_path):
    t0 = time.perf_counter()
    records = run_scenario(builtin_scenario("square-translate"), tmp_path)
    by_scheme = {r.scheme: r for r in records}
    up = by_scheme[SchemeKind.UPWIND].l1
    weno = by_scheme[SchemeKind.WENO7].l1
    ok = weno < 0.7 * up
    _finish(6, 60.0, t0, ok,
            f"weno7 l1 {weno:.4f} < 0.7 * upwind l1 {up:.4f}")


def test_criterion_7_degenerate_degrees():
    t0 = time.perf_counter()
    ok = True
    rng = np.random.default_rng(7)

    g_rand = build_complex(9, 8, 0.25)
    rand_vel = StaggeredVelocity(
        g_rand, rng.uniform(-1.0, 1.0, g_rand.shape) * (0.25 * 0.5),
        rng.uniform(-1.0, 1.0, g_rand.shape) * (0.25 * 0.5))
    g_vort = build_complex(16, 16, 1.0 / 16)
    vort_vel = discretize_velocity(rudman_vortex(), g_vort)

    for g, vel, dt in ((g_rand, rand_vel, 0.05), (g_vort, vort_vel, 0.0125)):
        w_init = rng.standard_normal(g.shape)
        for scheme in (SchemeKind.UPWIND, SchemeKind.WENO5, SchemeKind.WENO7):
            h = g.h
            if scheme is SchemeKind.UPWIND:
                def transport(vals, flux, _h=h, _dt=dt):
                    return _dt / _h ** 2 * flux * vals[0]
            else:
                def transport(vals, flux, _h=h, _dt=dt, _s=scheme):
                    window = Stencil1D(tuple(float(v) / _h for v in vals),
                                       1 if flux >= 0.0 else -1)
                    return extrusion_integral(window, _s, float(flux), _dt, _h)
            cfg = AdvectionConfig(dt, 1, scheme)
            geo = Cochain.from_plane(g, 2, w_init)
            fv = w_init.tolist()
            for _ in range(5):
                geo = step(geo, vel, cfg)
                fv = reference.fv_step_2form_loop(
                    fv, vel.flux_x.tolist(), vel.flux_y.tolist(), dt, h,
                    scheme.stencil_width, transport)
                ok = ok and _ulp_ok(geo.plane(), np.array(fv))

        lowered = contract(Cochain.from_plane(g, 0, w_init), vel, dt).cochain
        ok = ok and lowered.is_empty and lowered.values.size == 0
        raised = exterior_derivative(lowered)
        ok = ok and raised.degree == 0 and bool(np.all(raised.values == 0.0))
    _finish(7, 1.0, t0, ok,
            "degree-2 step == split FV per entry; 0-form contraction empty")


def test_criterion_8_discontinuous_convergence(tmp_path):
    t0 = time.perf_counter()
    records = run_scenario(builtin_scenario("convergence-discontinuous"),
                           tmp_path)
    ok = True
    shown = []
    for scheme in (SchemeKind.UPWIND, SchemeKind.WENO7):
        group = sorted((r for r in records if r.scheme is scheme),
                       key=lambda r: r.resolution)
        for a, b in zip(group, group[1:]):
            ok = ok and b.l1 < a.l1 and b.l2 < a.l2
        fit = fit_convergence_slope(group)
        shown.append(f"{scheme.value} {fit['l1']:.3f}/{fit['l2']:.3f}")
        ok = ok and fit["l1"] > 0.0 and fit["l2"] > 0.0
    _finish(8, 300.0, t0, ok, "reduced-rate slopes " + ", ".join(shown))
