"""Smoke test for the `graded` extension module.

Build and install first, e.g. `pip install ./crates/py --no-build-isolation`
(needs maturin), then run `python3 python/smoke_test.py`.
"""

import graded


def main() -> None:
    z4 = graded.Groupoid.fixture("z4")
    r = graded.Grading(z4)
    assert list(r.component_dims().values()) == [7, 6, 6, 6], r.component_dims()
    assert r.satisfies_filter_law() and r.is_strong() and r.is_unital()

    lhs, rhs, equal = r.commutant(["2"])
    assert equal and lhs == rhs == ["e11+e33", "e22+e44+e55"], (lhs, rhs)

    table = dict(r.sigma("1"))
    assert table == {"e11": "e44+e55", "e22": "e11", "e33": "e22", "e44+e55": "e33"}, table

    two = graded.Grading(graded.Groupoid.fixture("two-object"))
    assert two.local_units() == {"e": "e55+e66+e77+e88+e99", "f": "e11+e22+e33+e44"}
    g = graded.Groupoid.fixture("two-object")
    assert len(g.subgroupoids()) == 11
    assert g.compose("t0", "u0") == "f" and g.inverse("t0") == "u0"

    monoid = graded.Grading.monoid_counterexample()
    assert monoid.is_unital() and not monoid.is_locally_unital() and not monoid.is_strong()

    selection, m, dim_unit, dim_t = graded.nonfree(g, "t0")
    assert 0 < dim_t < dim_unit == m + 3, (selection, m, dim_unit, dim_t)

    try:
        graded.nonfree(g, "e")
    except ValueError as e:
        assert "identity" in str(e)
    else:
        raise AssertionError("identity morphism accepted")

    again = graded.Groupoid.from_json(z4.to_json())
    assert again.morphisms() == z4.morphisms()
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
