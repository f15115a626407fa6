"""Where the min-max formula stops being exact.

For one positive staircase tensored with negative ones, V_s is a min-max over
grading pairs.  With two positive factors the same expression is only a lower
bound; the chain-level oracle shows the gap on (dual trefoil) ⊗ T(6,7) ⊗ T(4,5).
"""

from floercurves import (
    basic_staircase,
    dualize_complex,
    staircase_complex,
    staircase_from_semigroup,
    tensor_all,
    torus_knot_semigroup,
    v_s_oracle,
)
from floercurves.staircases import v_s_mixed_bound


def stair(p, q):
    return staircase_from_semigroup(torus_knot_semigroup(p, q))


N0 = basic_staircase(-1).zero_level()
P0 = stair(6, 7).zero_level() * stair(4, 5).zero_level()
X = tensor_all([dualize_complex(staircase_complex(stair(2, 3))),
                staircase_complex(stair(6, 7)),
                staircase_complex(stair(4, 5))])

print(f"product complex: {len(X)} generators")
print(f"{'s':>3} {'min-max':>8} {'oracle':>7}")
for s in range(-3, 4):
    print(f"{s:>3} {v_s_mixed_bound(N0, P0, s):>8} {str(v_s_oracle(X, s)):>7}")
