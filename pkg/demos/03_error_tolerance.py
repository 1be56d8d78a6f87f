"""How much excitation error can each compact setup absorb?

Each array element's complex weight is distorted by (1 + ε), with
ε = N(0, s) + jN(0, s) and s = 10^(σ_dB/20) − 1. The search raises σ_dB
in 0.01 dB steps and runs a batch of Monte-Carlo realizations per level
until the tier-1 figures of merit break; the last passing level is the
tolerated deviation.

Two level-fail rules are available: "any" (one bad realization kills the
level — a conservative lower bound that tightens as n_mc grows) and
"majority" (at least half must fail — an estimate of the median
threshold, insensitive to n_mc). The demo runs both on two geometries
with a small n_mc so it finishes quickly; expect the "any" numbers to
drop if you raise n_mc.

Run:  python3 demos/03_error_tolerance.py
"""

import time

from otazone import ToleranceSearchConfig, WaveSpec, tolerance_search

wave = WaveSpec()
lam = wave.wavelength

geometries = [(1.35, 286), (0.7, 591)]  # (IES/λ, D/λ): tightest and roomiest picks

print("  IES      D     rule      n_mc  tolerated σ (dB)  first failing FoM")
for ies_l, d_l in geometries:
    for rule, n_mc in (("any", 10), ("majority", 10)):
        cfg = ToleranceSearchConfig(n_mc=n_mc, rng_seed=0, fail_rule=rule)
        t0 = time.perf_counter()
        res = tolerance_search(ies_l * lam, d_l * lam, wave, cfg)
        dt = time.perf_counter() - t0
        print(f"  {ies_l:4.2f}λ  {d_l:4d}λ  {rule:>8s}  {n_mc:4d}"
              f"  {res.tolerated_sigma_db:9.2f}        {res.first_failing_fom}"
              f"   ({dt:.0f}s)")

print("\nNote: σ is a *deviation* of the per-element weights, so even a few")
print("hundredths of a dB matter — the tightest geometry sits right at its")
print("tier-1 limits and breaks almost immediately, while the 591λ setup")
print("has headroom on every figure of merit.")
