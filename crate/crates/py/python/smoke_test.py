"""Smoke test for the dngon extension module. Run after `maturin develop` or
installing the built wheel."""

import json
from fractions import Fraction

import dngon


def main():
    assert dngon.is_perfect_square(10**40) == 10**20
    assert dngon.is_perfect_square(2) is None
    assert dngon.squarefree_decompose(72) == (2, 6)
    assert dngon.rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)

    assert dngon.cos_angle(3, 4, 5) == 0
    assert dngon.lemma1_check(2, 5, 4, 1)
    assert dngon.task1_check(4, 5, 3)
    assert dngon.crossing_inequality((0, 0), (4, 0), (0, 3), (4, 3))
    try:
        dngon.lemma1_check(5, 2, 4, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid instance accepted")

    assert dngon.pythagorean_angles(2) == [(3, 4, 5), (5, 12, 13)]
    s = dngon.construct_diophantine(6)
    assert len(s) == 6 and s.scale is not None
    s.verify()
    r2 = s.scale ** 2
    for x, y in s.points_f64():
        assert abs(x * x + y * y - r2) < 1e-6 * r2

    rect = dngon.DiophantineSet.certify([(0, 0), (3, 0), (3, 4), (0, 4)])
    assert rect.distances()[0] == [0, 3, 5, 4]
    assert dngon.DiophantineSet.from_json(rect.to_json()).distances() == rect.distances()

    report = dngon.search(3, 20, mode="convex")
    assert report.summary_line() == "k=3 M=20 max_n=6 bound=12 consistent=true"
    w = report.witnesses[0]
    assert w.shape == "convex" and len(w) == 6
    assert w.apexes[0] == (5, 7, "+")
    assert json.loads(report.to_json())["max_n_found"] == 6

    small = dngon.search(2, 9, mode="sets")
    assert small == dngon.brute_force_oracle(2, 9, mode="sets")

    assert [dngon.n0_bound(k) for k in (1, 2, 3)] == [4, 8, 12]
    assert dngon.convex_halfplane_bound(3) == 5
    assert dngon.claimed_n_range(2)["unconfirmed"] == [5, 6]
    assert dngon.claimed_n_range(4) is None
    prof = dngon.halfplane_difference_profile(rect, 0, 1, 3)
    assert prof["upper"]["deltas"] == [-1, 1] and prof["within_range"]
    b = dngon.check_bounds(report=report)
    assert b.consistent and b.within_claim
    assert dngon.check_bounds(k=5).n0 == 20

    print("smoke test ok:", report.summary_line())


if __name__ == "__main__":
    main()
