"""Cyclizers across the catalog: the closed form, the oracle, and quotients.

For nilpotent groups the cyclizer comes from a closed form driven by the
Sylow decomposition, and an exhaustive pairwise check validates it. The
second half of the tour repeatedly divides by the cyclizer and watches the
chain collapse to a group whose cyclizer is trivial.
"""

from __future__ import annotations

import argparse

from noncyclic import (
    build,
    classify_nilpotent,
    cyclizer,
    cyclizer_brute,
    cyclizer_closed_form,
    iter_catalog_groups,
    parse_spec,
)


def survey(max_order: int) -> None:
    print(f"closed form vs brute force up to order {max_order}")
    widest = 0
    rows = []
    for spec, group in iter_catalog_groups(max_order):
        cls = classify_nilpotent(group)
        if not cls.is_nilpotent or group.is_cyclic():
            continue
        closed = cyclizer_closed_form(group, cls)
        brute = cyclizer_brute(group)
        agree = set(closed.cyc_set) == set(brute.cyc_set)
        ratio = len(closed.cyc_set) // max(cls.n, 1)
        rows.append((group.name, group.order, len(closed.cyc_set), ratio, agree))
        widest = max(widest, len(group.name))
    for name, order, size, ratio, agree in rows:
        mark = "ok" if agree else "MISMATCH"
        print(f"  {name:<{widest}}  order {order:>3}  |Cyc| = {size:>2}"
              f"  ({ratio}x cyclic part)  {mark}")
    print(f"{len(rows)} groups checked, "
          f"{sum(1 for r in rows if r[4])} agreements")


def quotient_chain(text: str) -> None:
    print(f"\ncyclizer chain for {text}")
    group = build(parse_spec(text))
    step = 0
    while True:
        cyc = cyclizer(group)
        members = [group.labels[x] for x in cyc.cyc_set]
        print(f"  step {step}: order {group.order}, "
              f"|Cyc| = {len(cyc.cyc_set)} {members if len(members) <= 8 else ''}")
        if len(cyc.cyc_set) == 1:
            break
        group, _, _ = group.quotient_by(cyc.cyc_set)
        step += 1
    print(f"  trivial cyclizer reached after {step} quotient(s)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=48)
    parser.add_argument("--chain", default="Z3 x Q8",
                        help="group whose quotient chain to walk")
    args = parser.parse_args()
    survey(args.max_order)
    quotient_chain(args.chain)


if __name__ == "__main__":
    main()
