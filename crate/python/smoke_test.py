"""Smoke test for the pyhyperlab extension module.

Build and install first:

    pip install maturin
    maturin develop --release -m crates/python/Cargo.toml
"""

from fractions import Fraction

import pyhyperlab as hl


def main() -> None:
    h = hl.Hypergraph.sample(20, 3, 0.3, 42)
    assert h.n == 20 and h.k == 3
    assert hl.Hypergraph.parse(h.to_text()).edges() == h.edges()
    assert hl.Hypergraph.sample(20, 3, 0.3, 42).to_text() == h.to_text()

    k6 = hl.Hypergraph.complete(6, 3)
    assert len(k6) == 20 and [0, 1, 2] in k6
    status, groups = hl.find_offset_cycle(k6, 1)
    assert status == "found"
    assert hl.verify_offset_cycle(k6, groups, 1) is None
    assert hl.verify_offset_cycle(hl.Hypergraph(6, 3, [[0, 1, 2]]), groups, 1) is not None
    assert hl.find_offset_cycle(hl.Hypergraph(6, 3, []), 1) == ("none", None)

    assert hl.gamma_count(6, 3, 1) == Fraction(30)
    assert hl.brute_force_cycle_count(6, 3, 1) == 45
    value, validity = hl.offset_threshold(24, 6, 3)
    assert abs(value - 8.718e-3) < 1e-6 and validity == "sharp"
    assert abs(hl.t_threshold(100, 3) - 3.035e-3) < 1e-6
    assert abs(hl.length2_absence_prob(20, 3, 0.05) - 0.6818) < 1e-4

    two_dominoes = hl.Hypergraph(7, 4, [[0, 1, 2, 3], [1, 2, 3, 4], [0, 1, 4, 5], [0, 1, 5, 6]])
    status, trail = hl.find_trail(two_dominoes, 0, 6)
    assert status == "found"
    assert trail == [(0, [1, 2, 3], 4), (4, [0, 1, 5], 6)]
    assert hl.verify_trail(two_dominoes, trail, 0, 6) is None
    assert hl.verify_trail(two_dominoes, trail, 0, 6, strict=True) is not None
    assert hl.find_trail(two_dominoes, 0, 6, max_dominoes=1) == ("bound", None)
    assert hl.is_t_connected(k6) == ("connected", None)
    assert hl.is_t_connected(two_dominoes)[0] == "not-connected"

    z5 = hl.AbelianGroup([5])
    assert z5.solve_scaled(3, [1]) == [2]
    target = [[0], [0], [1], [1], [2], [2]]
    weights, rounds = hl.realize_weighting(k6, z5, target)
    induced = [0] * 6
    for edge, (w,) in weights:
        for v in edge:
            induced[v] = (induced[v] + w) % 5
    assert induced == [0, 0, 1, 1, 2, 2] and rounds <= 6

    csv = hl.run_sweep("tconnect", 3, [10, 12], [0.5, 2.0], 5, 7, threads=2)
    assert csv == hl.run_sweep("tconnect", 3, [10, 12], [0.5, 2.0], 5, 7, threads=1)
    assert len(csv.splitlines()) == 5

    print("pyhyperlab smoke test passed")


if __name__ == "__main__":
    main()
