"""Smoke tests for the python bindings."""

import sys

import altbc


def check(cond, what):
    if not cond:
        print(f"[FAIL] {what}")
        sys.exit(1)
    print(f"[ok] {what}")


def main():
    check(altbc.sum_dof("PD=1/2") == "5/3", "sum_dof PD/DP alternation")
    check(altbc.sum_dof("DD=1/5,PN=2/5") == "8/5", "sum_dof DD+PN/NP alternation")
    check(altbc.marginals("DD=1/5,PN=2/5") == ("2/5", "1/5", "2/5"), "marginals")

    for dof, expect in [("4/3", ("0", "1/3")), ("3/2", ("1/4", "1/4")),
                        ("8/5", ("2/5", "1/5")), ("5/3", ("1/2", "1/6")), ("2", ("1", "0"))]:
        check(altbc.min_csit(dof) == expect, f"min_csit {dof}")

    cat = altbc.catalog()
    check(len(cat) == 17, "catalog has 17 schemes")
    check(altbc.swap_roles("S5/3-3") == "S5/3-4", "swap_roles")

    corners = altbc.corner_points("DD=1/5,PN=2/5")
    check(("4/5", "4/5") in corners, "8/5 corner present")
    check(altbc.region_case("DD=1/5,PN=2/5") == "A2", "sub-case label")

    doc = altbc.compose_corner("PN=1/2", "P1")
    check("row S3/2-3 normal 1" in doc, "P1 schedule row")
    check(altbc.validate_schedule(doc), "schedule document validates")

    mix = altbc.compose_point("PN=1/2", "3/4", "3/4")
    check(altbc.validate_schedule(mix), "interior point schedule validates")

    try:
        altbc.compose_point("NN=1", "1", "1")
        check(False, "OutsideRegion raised")
    except altbc.OutsideRegion:
        check(True, "OutsideRegion raised")

    check(altbc.verify_scheme("S8/5", trials=50, seed=9) == 50, "S8/5 decodes on 50 draws")

    samples = altbc.rate_sweep("S2", snr_from=20, snr_to=50, snr_step=10, trials=50, seed=3)
    d1, d2 = altbc.dof_slope(samples)
    check(abs(d1 - 1.0) < 0.1 and abs(d2 - 1.0) < 0.1, "S2 slopes near (1, 1)")

    surface = altbc.surface_csv("1/3")
    check("0,1,2" in surface, "surface full-CSIT row")
    tradeoff = altbc.tradeoff_csv("1/60")
    check("8/5,2/5,1/5" in tradeoff, "tradeoff 8/5 row")

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
