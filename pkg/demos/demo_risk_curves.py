"""Walk through the exact risk machinery on a single ill-conditioned design.

Builds the nu = 2 power-law design (eigenvalues 1/i^2, p = 100), computes
bias/variance/risk along the whole path for all four estimator families,
prints what each family does at a few representative times, and reports the
oscillation structure of the accelerated and heavy-ball curves.

Run:  python demos/demo_risk_curves.py
"""

import numpy as np

from flowrisk import (
    DesignSpec,
    FlowKind,
    SignalModel,
    bayes_risk,
    gen_power_law_design,
    optimal_ridge_bayes_risk,
    oscillation_report,
    risk_curve,
)

design = gen_power_law_design(
    DesignSpec(family="PowerLaw", n=500, p=100, seed=104, c=1.0, nu=2.0))
spectrum = design.spectrum
print(f"power-law design: p={spectrum.p}, mu={spectrum.mu:.2e}, "
      f"L={spectrum.big_l:g}, kappa={spectrum.kappa:.0f}")

prior = SignalModel.prior(r_sq=1.0, sigma_sq=1.0, n=500)
t_grid = np.logspace(-2, 3, 400)
ridge_grid = np.logspace(-6, 3, 400)

print("\nBayes risk along the path (prior signal energy r^2 = 1):")
print(f"{'':>10} {'gf':>10} {'nest':>10} {'hb':>10} {'ridge':>10}")
for t in (0.1, 1.0, 10.0, 100.0, 1000.0):
    row = []
    for kind in (FlowKind.GRADIENT_FLOW, FlowKind.ACCELERATED_FLOW,
                 FlowKind.HEAVY_BALL_FLOW):
        row.append(bayes_risk(spectrum, prior, kind, t).risk)
    row.append(bayes_risk(spectrum, prior, FlowKind.RIDGE, 1.0 / t ** 2).risk)
    print(f"t={t:>8g} " + " ".join(f"{r:10.4f}" for r in row))

floor, lam_star = optimal_ridge_bayes_risk(spectrum, prior)
print(f"\noptimally tuned ridge risk: {floor:.6f} at lambda* = {lam_star:g}")

for kind, token in ((FlowKind.GRADIENT_FLOW, "gf"),
                    (FlowKind.ACCELERATED_FLOW, "nest"),
                    (FlowKind.HEAVY_BALL_FLOW, "hb")):
    curve = risk_curve(spectrum, prior, kind, t_grid)
    best_t, best = min(((t, dec.risk) for t, dec in curve),
                       key=lambda pair: pair[1])
    report = oscillation_report(curve)
    print(f"{token:>5}: min risk {best:.6f} at t = {best_t:.3g} "
          f"(inflation {best / floor:.4f}), "
          f"{report.num_local_maxima} local maxima, "
          f"max rebound {report.max_rebound:.3g}")

ridge_curve = risk_curve(spectrum, prior, FlowKind.RIDGE, ridge_grid)
best_lam, best = min(((lam, dec.risk) for lam, dec in ridge_curve),
                     key=lambda pair: pair[1])
print(f"ridge: min risk {best:.6f} at lambda = {best_lam:.3g} on the grid")
print("\nevery tuned flow sits above the ridge optimum, and the accelerated "
      "curve oscillates; the gradient-flow curve is the only smooth one")
