#!/usr/bin/env python3
"""Re-measure every recorded regression baseline and print the values.

Run after an intentional change to the measured families, then paste the
numbers into src/burgess/baselines.py.  The tests compare re-measurements
against the frozen module values, so a drift here should be deliberate.
"""

import math

from burgess import acceptance, baselines
from burgess.bounds import nonresidue_max_gap, pv_ratio_scan
from burgess.congruence import congruence_count


def main() -> None:
    worst, worst_q, _ = pv_ratio_scan(10 ** 4)
    print(f"PV_WORST_RATIO = {worst!r}")
    print(f"PV_WORST_PRIME = {worst_q}")

    inst, params = acceptance.collision_ratio_instance()
    rep = congruence_count(inst)
    print(f"COLLISION_I_VALUE = {rep.I_value}")
    print(f"COLLISION_RATIO = {rep.ratio!r}")

    worst9 = -math.inf
    from burgess.bounds import extremal_scan
    for q, r, n, m_values in acceptance.holder_cells():
        res = extremal_scan(q, (q - 1) // 2, n, m_values, r=r)
        worst9 = max(worst9, res.worst_ratio["refined_14r"])
    print(f"REFINED_WORST_RATIO = {worst9!r}")

    print(f"HOLDER_C0_STANDIN = {baselines.measure_holder_c0_standin()!r}")
    print("DIVISIBLE_COUNT_CONSTANT = "
          f"{baselines.measure_divisible_count_constant()!r}")
    print("PAIR_COLLISION_CONSTANT = "
          f"{baselines.measure_pair_collision_constant()!r}")

    gap, _ = nonresidue_max_gap(10007)
    cap = math.ceil(10007 ** 0.25 * math.log(10007))
    print(f"NONRESIDUE_GAP_Q10007 = {gap}")
    print(f"NONRESIDUE_GAP_CONSTANT = {gap / cap!r}")


if __name__ == "__main__":
    main()
