"""Smoke test for the picomm_py extension module.

Build and place the module next to this script first:

    cargo build -p picomm-py --release --features extension-module
    cp target/release/libpicomm_py.so python/picomm_py.so
    python3 python/smoke_test.py
"""

from fractions import Fraction

import picomm_py as pc


def main() -> None:
    for p, expected in [(5, Fraction(29, 125)), (7, Fraction(55, 343))]:
        g = pc.PermGroup.from_selector(f"psl2:{p}")
        value = pc.pr_pi(g, [p])
        assert value == expected == pc.threshold(p), (p, value)
        assert pc.pr_pi_naive(g, [p]) == value

    s3 = pc.PermGroup.from_selector("sym:3")
    assert s3.order() == 6 and len(s3) == 6
    assert pc.commuting_probability(s3) == Fraction(1, 2)
    assert pc.pr_pi(s3, [2]) == Fraction(5, 8)
    assert pc.pi_element_count(s3, [2]) == 4
    assert not pc.normal_hall(s3, [2])
    assert pc.normal_hall(s3, [3])
    assert sorted(s3.class_sizes()) == [1, 2, 3]

    t = pc.Permutation.parse("(1,2)", 3)
    c = pc.Permutation.parse("(1,2,3)", 3)
    assert str(t * c) == "(1,3)"
    assert (c * c * c).images() == [0, 1, 2]
    assert pc.centralizer_pi_fraction(s3, t, [2]) == Fraction(1, 2)

    own = pc.PermGroup([t, c], id="my-s3")
    reports = pc.verify(own, "A,C", [2])
    assert {r["theorem"] for r in reports} == {"A", "C-forward", "C-converse"}
    assert all(r["verdict"] != "fail" for r in reports)

    swept = pc.sweep("A,L5.2", max_order=60)
    assert swept and all(r["verdict"] != "fail" for r in swept)
    assert "psl2:5" in pc.catalog_ids()

    try:
        pc.pr_pi(s3, [4])
    except ValueError as e:
        assert "not prime" in str(e)
    else:
        raise AssertionError("non-prime accepted")

    print(f"smoke test ok: {len(swept)} sweep reports")


if __name__ == "__main__":
    main()
