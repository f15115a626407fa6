"""Trading genus for a double point.

A degree-21 curve of genus 1 with one cusp of type <8,55> exists.  Asking for
genus 0 plus one extra double point is obstructed when the node is negative,
but not when it is positive.  The table shows where the negative case breaks.
"""

from floercurves import CurveConfig, check, torus_knot_semigroup

S = torus_knot_semigroup(8, 55)
configs = {
    "genus 1, no node": CurveConfig(21, 1, (S,)),
    "genus 0, positive node": CurveConfig(21, 0, (S,), {1: 1}),
    "genus 0, negative node": CurveConfig(21, 0, (S,), {}, {1: 1}),
}
for label, cfg in configs.items():
    rep = check(cfg)
    print(f"{label:<24} {rep.verdict:<11} witnesses: {[k for k, _ in rep.witnesses][:4]}")

R = configs["genus 1, no node"].counting_function()
print("\n  k  R(kd-1)  R(kd)  R(kd+1)  K")
for k in range(1, 7):
    K = (k + 1) * (k + 2) // 2
    print(f"{k:>3} {R(21 * k - 1):>8} {R(21 * k):>6} {R(21 * k + 1):>8} {K:>3}")
