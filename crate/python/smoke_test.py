"""Smoke test for the compiled `betalattice` extension module.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml`, then run
`python python/smoke_test.py`.
"""

from fractions import Fraction

import betalattice as bl


def main():
    d = bl.Partition([1, 3])
    assert d.parts == [3, 1] and d.weight == 4
    assert d.conjugate() == bl.Partition([2, 1, 1])
    assert bl.conjugate([3, 1]) == [2, 1, 1]
    assert [p.parts for p in bl.partitions_of(3)] == [[3], [2, 1], [1, 1, 1]]

    assert bl.gauss_binomial(4, 2) == [1, 1, 2, 1, 1]
    assert bl.count_subgroups_of_type([1, 1], [1]) == [1, 1]

    assert bl.lattice_size("2:[1,3]") == 11
    assert bl.lattice_size("2:[4,4,1]") == 322
    assert [bl.s_k("2:[3,1]", k) for k in range(5)] == [1, 3, 3, 3, 1]
    assert bl.count_report("3:[1,1,1]")["s"] == [1, 13, 13, 1]

    assert bl.beta("2:[1,3]") == Fraction(11, 16)
    assert bl.beta("2:[1];3:[1]") == Fraction(2, 3)
    assert bl.beta() == 1
    assert bl.alpha("5:[3]") == Fraction(4, 125)

    r = bl.approximate(0, "1/100")
    assert r["group"] == "211:[1]" and r["achieved"] == Fraction(2, 211)
    r = bl.approximate(Fraction(15, 4), "0.001")
    assert abs(r["achieved"] - Fraction(15, 4)) <= Fraction(1, 1000)
    assert r["error"] == abs(r["achieved"] - Fraction(15, 4))

    assert dict(bl.counts_by_order([2, 4])) == {1: 1, 2: 3, 4: 3, 8: 1}
    assert all(c["status"] != "fail" for c in bl.verify_theorems("5:[2,1,1]"))
    assert all(c["status"] == "pass" for c in bl.oracle_check("2:[2,2,1]"))

    for bad in (lambda: bl.beta("4:[1]"), lambda: bl.approximate(-1, 1)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        bl.counts_by_order([2] * 10)
    except RuntimeError:
        pass
    else:
        raise AssertionError("expected RuntimeError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
