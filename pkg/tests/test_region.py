from fractions import Fraction as F

import pytest

from dofbc.config import SystemConfig, normalize_config
from dofbc.errors import EmptyRegionError, RegimeError
from dofbc.region import (
    DofPoint,
    DofRegion,
    LinearConstraint,
    achievable_region,
    analogy_gap,
    max_sum_over,
    pd_sum_dof,
    region_constraints,
    region_vertices,
    sum_dof_lower,
    sum_dof_upper,
)

from .oracles import lp_max_sum_oracle, outer_bound_halfplanes, vertex_oracle


def cons_tuples(cfg):
    return [(c.a1, c.a2, c.b) for c in region_constraints(cfg).constraints]


def test_constraints_mid_regime_include_weighted_bound():
    cfg = SystemConfig(4, 1, 3, 2)
    assert cons_tuples(cfg) == [(1, 0, 1), (0, 1, 3), (1, 1, 4), (1, 2, 6)]


def test_constraints_collapse_when_k_reaches_n2():
    cfg = SystemConfig(4, 1, 3, 3)
    assert cons_tuples(cfg) == [(1, 0, 1), (0, 1, 3), (1, 1, 4)]


def test_constraints_collapse_when_m_small():
    cfg = SystemConfig(2, 1, 3, 0)
    assert cons_tuples(cfg) == [(1, 0, 1), (0, 1, 2), (1, 1, 2)]


# Frozen from the pairwise-intersection oracle over the stated constraints.
FIG3_VERTICES = {
    0: [(0, 0), (1, 0), (1, F(9, 4)), (0, 3)],
    1: [(0, 0), (1, 0), (1, F(7, 3)), (0, 3)],
    2: [(0, 0), (1, 0), (1, F(5, 2)), (0, 3)],
    3: [(0, 0), (1, 0), (1, 3), (0, 3)],
}


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_vertices_4_1_3_family(k):
    cfg = SystemConfig(4, 1, 3, k)
    vertices = region_constraints(cfg).vertices
    assert [(v.d1, v.d2) for v in vertices] == FIG3_VERTICES[k]
    assert vertices == tuple(
        DofPoint(F(x), F(y)) for x, y in vertex_oracle(outer_bound_halfplanes(4, 1, 3, k))
    )


def test_vertices_match_oracle_on_grid():
    for M in range(1, 8):
        for N1 in range(1, 5):
            for N2 in range(N1, 7):
                for k in range(0, M + 1):
                    cfg = SystemConfig(M, N1, N2, k)
                    got = [(v.d1, v.d2) for v in region_constraints(cfg).vertices]
                    want = vertex_oracle(outer_bound_halfplanes(M, N1, N2, k))
                    assert got == want, cfg.shape


def test_vertex_certificate_and_lp_max():
    for shape in [(4, 1, 3, 0), (4, 1, 3, 2), (9, 3, 6, 4), (5, 2, 4, 2), (7, 2, 3, 1)]:
        cfg = SystemConfig(*shape)
        region = region_constraints(cfg)
        axes = (LinearConstraint(F(-1), F(0), F(0)), LinearConstraint(F(0), F(-1), F(0)))
        for v in region.vertices:
            assert region.contains(v)
            active = sum(1 for c in region.constraints + axes if c.active_at(v))
            assert active >= 2
        assert max_sum_over(region.vertices) == lp_max_sum_oracle(
            outer_bound_halfplanes(*shape)
        )


def test_empty_region_raises():
    region = DofRegion((LinearConstraint(F(1), F(0), F(-1)),))
    with pytest.raises(EmptyRegionError):
        region_vertices(region)


def test_sum_dof_upper_examples():
    assert sum_dof_upper(SystemConfig(6, 3, 3, 1)) == F(24, 5)
    assert sum_dof_upper(SystemConfig(4, 1, 3, 3)) == 4
    assert sum_dof_upper(SystemConfig(9, 3, 6, 4)) == F(39, 5)


def test_sum_dof_lower_examples():
    assert sum_dof_lower(SystemConfig(4, 1, 3, 2)) == F(7, 2)
    assert sum_dof_lower(SystemConfig(6, 3, 3, 1)) == F(10, 3)
    assert sum_dof_lower(SystemConfig(6, 3, 3, 1), allow_special_cases=True) == 4
    assert sum_dof_lower(SystemConfig(5, 2, 3, 0)) == 3


BOUND_TABLE_UPPER = [F(7), F(57, 8), F(51, 7), F(15, 2), F(39, 5), F(33, 4), 9, 9, 9, 9]
BOUND_TABLE_LOWER = [F(6), F(37, 6), F(20, 3), F(15, 2), F(39, 5), F(33, 4), 9, 9, 9, 9]


def test_bound_table_9_3_6():
    uppers = [sum_dof_upper(SystemConfig(9, 3, 6, k)) for k in range(10)]
    lowers = [sum_dof_lower(SystemConfig(9, 3, 6, k)) for k in range(10)]
    assert uppers == BOUND_TABLE_UPPER
    assert lowers == BOUND_TABLE_LOWER


def test_regime_consistency_three_constraints():
    for shape in [(4, 1, 3, 3), (2, 1, 3, 0), (6, 3, 3, 5), (3, 2, 4, 1)]:
        cfg = SystemConfig(*shape)
        M, N1, N2, k = cfg.shape
        if k >= N2 or M <= N2:
            assert len(region_constraints(cfg).constraints) == 3
            assert sum_dof_upper(cfg) == min(M, N1 + N2)


def test_tightness_mid_regime_grid():
    for N1 in range(1, 10):
        for N2 in range(N1 + 1, 11):
            for M in range(N2 + 1, min(10, N1 + N2) + 1):
                for k in range(N1, N2):
                    cfg = SystemConfig(M, N1, N2, k)
                    assert sum_dof_lower(cfg) == sum_dof_upper(cfg), cfg.shape


def test_upper_bound_monotone_in_k():
    for M, N1, N2 in [(9, 3, 6), (4, 1, 3), (6, 3, 3), (8, 2, 5), (12, 3, 6)]:
        uppers = [sum_dof_upper(SystemConfig(M, N1, N2, k)) for k in range(M + 1)]
        assert all(a <= b for a, b in zip(uppers, uppers[1:]))


def test_lower_bound_monotone_from_n1_up():
    # The retransmission lower bound for k < N1 is not monotone in general
    # (using fewer informed antennas can be better); from k = N1 on it is.
    for M, N1, N2 in [(9, 3, 6), (4, 1, 3), (8, 2, 5), (12, 3, 6)]:
        lowers = [sum_dof_lower(SystemConfig(M, N1, N2, k)) for k in range(N1, M + 1)]
        assert all(a <= b for a, b in zip(lowers, lowers[1:]))


def test_extreme_k_values():
    for M, N1, N2 in [(4, 1, 3), (9, 3, 6), (2, 1, 3)]:
        full = SystemConfig(M, N1, N2, M)
        assert sum_dof_upper(full) == sum_dof_lower(full) == min(M, N1 + N2)
        none = SystemConfig(M, N1, N2, 0)
        assert sum_dof_lower(none) == min(N2, M)
        if M > N2:
            third = N2 + F(N1 * min(N1, M - N2), min(N1 + N2, M))
            assert sum_dof_upper(none) == min(F(N1 + N2), F(M), third)
    # the k=0 gap of the reference sweep: upper N2+1 versus lower N2
    assert sum_dof_upper(SystemConfig(9, 3, 6, 0)) == 7
    assert sum_dof_lower(SystemConfig(9, 3, 6, 0)) == 6


def test_lower_never_exceeds_upper():
    for M in range(1, 11):
        for N1 in range(1, 6):
            for N2 in range(N1, 8):
                for k in range(M + 1):
                    cfg = SystemConfig(M, N1, N2, k)
                    assert sum_dof_lower(cfg) <= sum_dof_upper(cfg), cfg.shape
                    assert sum_dof_lower(cfg, True) <= sum_dof_upper(cfg), cfg.shape


def test_swap_covariance():
    plain = region_constraints(normalize_config(9, 3, 6, 4))
    swapped = region_constraints(normalize_config(9, 6, 3, 4))
    assert swapped.constraints == plain.constraints  # normalization maps to same system
    mirrored = swapped.swapped_axes()
    assert {(c.a1, c.a2, c.b) for c in mirrored.constraints} == {
        (c.a2, c.a1, c.b) for c in plain.constraints
    }
    assert sorted((v.d2, v.d1) for v in plain.vertices) == sorted(mirrored.vertices)


def test_achievable_region_examples():
    full = achievable_region(SystemConfig(4, 1, 3, 3))
    assert set(full) == {(0, 0), (1, 0), (0, 3), (1, 3)}
    mid = achievable_region(SystemConfig(4, 1, 3, 2))
    assert DofPoint(F(1), F(5, 2)) in mid
    none = achievable_region(SystemConfig(4, 1, 3, 0))
    assert set(none) == {(0, 0), (1, 0), (0, 3)}


def test_achievable_max_sum_matches_lower_bound():
    for shape in [(4, 1, 3, 1), (4, 1, 3, 2), (4, 1, 3, 3), (9, 3, 6, 4), (5, 2, 4, 2)]:
        cfg = SystemConfig(*shape)
        if cfg.k >= cfg.N1:
            assert max_sum_over(achievable_region(cfg)) == sum_dof_lower(cfg)


def test_pd_sum_dof():
    assert pd_sum_dof(1, 3) == F(13, 4)
    assert pd_sum_dof(3, 3) == F(9, 2)
    with pytest.raises(Exception):
        pd_sum_dof(0, 3)


def test_analogy_gap():
    assert analogy_gap(SystemConfig(4, 1, 3, 1)) == (F(3, 4), F(2, 3))
    assert analogy_gap(SystemConfig(4, 1, 3, 2)) == (F(3, 4), F(1, 2))
    cfg = SystemConfig(4, 1, 3, 2)
    assert (cfg.N1 + cfg.N2) - sum_dof_lower(cfg) == analogy_gap(cfg)[1]
    with pytest.raises(RegimeError):
        analogy_gap(SystemConfig(4, 1, 3, 3))  # k = N2 excluded
    with pytest.raises(RegimeError):
        analogy_gap(SystemConfig(5, 1, 3, 2))  # M != N1 + N2
