import itertools
import random
from fractions import Fraction

import pytest

from realtrop import (
    RT,
    RT_ZERO,
    LinearEmbedding,
    ProjPoint,
    bergman_fan,
    bergman_member,
    cocircuits_from_gp,
    covector_closure,
    gp_from_matrix,
    ground_from_matrix,
    hyper_mul,
    hyperplane_member,
    linear_space_member,
    rt,
    trop_r_point,
    unsigned_hyperplane_member,
)
from realtrop.matroids import CovectorPoset, circuits_from_matrix

from helpers import normalized_grid, random_embedding, random_full_rank_ground

LINE = LinearEmbedding.from_matrix([[1, 0, 1], [0, 1, 1]])
LINE_CIRCUIT = circuits_from_matrix(LINE.ground())[0]

IN_PATTERNS = [
    (1, 1, 1), (-1, -1, -1), (1, -1, -1), (-1, 1, 1), (1, -1, 1), (-1, 1, -1),
]
OUT_PATTERNS = [(1, 1, -1), (-1, -1, 1)]


# -- tropicalization of points -------------------------------------------------


def test_trop_point_constants():
    assert trop_r_point(("1", "1", "1")).coords == (rt(1, 0),) * 3


def test_trop_point_leading_terms():
    pt = trop_r_point(("1", "-1+t", "t"))
    assert pt.coords == (rt(1, 0), rt(-1, 0), rt(1, 1))


def test_trop_point_normalization():
    pt = trop_r_point(("-2*t^(1/2)", "t^(1/2)"))
    assert pt.coords == (rt(1, 0), rt(-1, 0))


def test_trop_point_rejects_zero():
    with pytest.raises(ValueError):
        trop_r_point(("0", "0"))


# -- hyperplane membership ------------------------------------------------------


def test_all_plus_point_is_on_the_line():
    y = ProjPoint((rt(1, 0), rt(1, 0), rt(1, 0)))
    assert hyperplane_member(y, LINE_CIRCUIT)


def test_sign_break_point_is_off_the_line():
    y = ProjPoint((rt(1, 0), rt(1, 0), rt(-1, 0)))
    assert not hyperplane_member(y, LINE_CIRCUIT)


def test_point_vanishing_on_support_is_member():
    ground = ground_from_matrix([[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
    (circuit,) = circuits_from_matrix(ground)
    assert circuit.support == (0, 1, 2)
    y = ProjPoint((RT_ZERO, RT_ZERO, RT_ZERO, rt(1, 0)))
    assert hyperplane_member(y, circuit)


def _pair_form_member(y, circuit):
    # the two-index formulation: the top magnitude occurs at i != j with
    # values of opposite sign
    prods = [hyper_mul(a, b) for a, b in zip(y.coords, circuit.entries)]
    nonzero = [p for p in prods if p.sign != 0]
    if not nonzero:
        return True
    vstar = min(p.val for p in nonzero)
    at_top = [p for p in nonzero if p.val == vstar]
    return any(
        p.sign == -q.sign for p, q in itertools.combinations(at_top, 2)
    )


def test_admits_zero_form_equals_pair_form():
    for y in normalized_grid(3, vals=(0, 1)):
        assert hyperplane_member(y, LINE_CIRCUIT) == _pair_form_member(y, LINE_CIRCUIT)


def test_membership_invariant_under_scaling():
    scalars = [rt(1, 0), rt(-1, 0), rt(1, 2), rt(-1, Fraction(1, 2))]
    for y in list(normalized_grid(3, vals=(0, 1)))[::7]:
        base = hyperplane_member(y, LINE_CIRCUIT)
        for a in scalars:
            scaled = ProjPoint(tuple(hyper_mul(a, x) for x in y.coords))
            assert hyperplane_member(scaled, LINE_CIRCUIT) == base
            scaled_c = LINE_CIRCUIT.__class__(tuple(hyper_mul(a, x) for x in LINE_CIRCUIT.entries))
            assert hyperplane_member(y, scaled_c) == base


# -- linear space membership -------------------------------------------------------

CANCELLATION_COORDS = ["1", "-1", "1+t", "1-t", "-1+t", "-1-t", "t", "2", "-1/2"]


def sample_points(rng, dim, count):
    out = []
    while len(out) < count:
        if rng.random() < 0.5:
            coords = tuple(rng.choice(CANCELLATION_COORDS) for _ in range(dim))
        else:
            coords = tuple(str(rng.randint(-9, 9)) for _ in range(dim))
        from realtrop import as_series

        series = [as_series(c) for c in coords]
        if any(not s.is_zero for s in series):
            out.append(series)
    return out


def test_image_points_always_members():
    rng = random.Random(53)
    for _ in range(4):
        emb = random_embedding(rng, rng.randint(2, 3), rng.randint(3, 6))
        for x in sample_points(rng, emb.height, 60):
            y = trop_r_point(emb.apply(x))
            assert linear_space_member(y, emb)


def test_identity_embedding_accepts_everything():
    emb = LinearEmbedding.from_matrix([[1, 0], [0, 1]])
    assert emb.circuits == ()
    for y in normalized_grid(2, vals=(0, 1)):
        assert linear_space_member(y, emb)


def test_sign_break_fails_linear_space():
    y = ProjPoint((rt(1, 0), rt(1, 0), rt(-1, 0)))
    assert not linear_space_member(y, LINE)


def test_unsigned_compatibility():
    # forgetting signs lands in the ordinary tropical linear space: the
    # least product valuation repeats
    rng = random.Random(59)
    emb = random_embedding(rng, 2, 5)
    for x in sample_points(rng, 2, 40):
        y = trop_r_point(emb.apply(x))
        for c in emb.circuits:
            assert unsigned_hyperplane_member(y, c)


# -- Bergman fans ---------------------------------------------------------------------


def line_fan():
    gp = gp_from_matrix(LINE.ground(), target="S")
    return bergman_fan(covector_closure(cocircuits_from_gp(gp)))


def test_line_fan_chain_counts():
    fan = line_fan()
    assert len(fan.cones) == 24
    maximal = fan.maximal_cones()
    assert len(maximal) == 12
    assert all(len(c) == 2 for c in maximal)
    assert fan.rank == 2


def test_empty_poset_fan():
    fan = bergman_fan(CovectorPoset(((0, 0, 0),), ()))
    assert fan.cones == ()


def test_chain_count_symmetric_under_negation():
    fan = line_fan()
    vecs = fan.poset.vectors
    index = {v: i for i, v in enumerate(vecs)}
    negated = {tuple(sorted(index[tuple(-x for x in vecs[i])] for i in chain)) for chain in fan.cones}
    plain = {tuple(sorted(chain)) for chain in fan.cones}
    assert negated == plain


def test_fan_purity_for_random_matroids():
    rng = random.Random(61)
    for _ in range(4):
        h = rng.randint(2, 3)
        g = random_full_rank_ground(rng, h, rng.randint(h, 5), constant=True)
        gp = gp_from_matrix(g, target="S")
        fan = bergman_fan(covector_closure(cocircuits_from_gp(gp)))
        assert all(len(c) == h for c in fan.maximal_cones())


# -- membership via the fan --------------------------------------------------------------


def test_cocircuits_are_in_the_fan():
    fan = line_fan()
    gp = gp_from_matrix(LINE.ground(), target="S")
    for v in cocircuits_from_gp(gp):
        y = ProjPoint(tuple(RT(s, 0) if s else RT_ZERO for s in v))
        assert bergman_member(y, fan)


def test_fan_agrees_with_circuit_membership_exhaustively():
    rng = random.Random(67)
    for _ in range(3):
        h = rng.randint(2, 3)
        g = random_full_rank_ground(rng, h, rng.randint(h, 5), constant=True)
        emb = LinearEmbedding(g.columns)
        gp = gp_from_matrix(g, target="S")
        fan = bergman_fan(covector_closure(cocircuits_from_gp(gp)))
        for y in normalized_grid(len(g), vals=(0, 1)):
            assert bergman_member(y, fan) == linear_space_member(y, emb)


def test_sign_pattern_outside_covectors_rejected():
    g = ground_from_matrix([[1, 0, -1], [0, 1, -1]])
    gp = gp_from_matrix(g, target="S")
    fan = bergman_fan(covector_closure(cocircuits_from_gp(gp)))
    y = ProjPoint((rt(1, 0), rt(1, 0), rt(1, 0)))
    assert not bergman_member(y, fan)
    assert not linear_space_member(y, LinearEmbedding(g.columns))
