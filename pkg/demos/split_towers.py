"""Top and bottom towers of knotified T(2,2n) links, recomputed from chains.

The oracle reduces each Alexander-level subcomplex, induces the homology
action on the free part and reads V^top from the cokernel and V^bot from the
kernel.  The closed values come from shifted basic staircases.
"""

from fractions import Fraction

from floercurves.homology import v_top_bot_oracle
from floercurves.knotified import knotified_mirror_t2_2n, knotified_t2_2n

for build in (knotified_t2_2n, knotified_mirror_t2_2n):
    for n in (1, 2, 3):
        m = build(n)
        print(f"{m.name}: {len(m.complex)} generators")
        for s in range(-n - 1, n + 2):
            top, bot = v_top_bot_oracle(m.complex, m.actions, s)
            flag = "" if (top, bot) == (m.v_top(s), m.v_bot(s)) else "  <-- mismatch"
            print(f"  s={s:>2}  V_top={str(Fraction(top)):>5}  V_bot={str(Fraction(bot)):>5}{flag}")
