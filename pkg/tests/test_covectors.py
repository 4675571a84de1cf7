import random

import pytest

from realtrop import (
    check_covector_axioms,
    cocircuits_from_gp,
    covector_closure,
    covector_zero_flat,
    gp_from_matrix,
    ground_from_matrix,
    pushforward_gp,
)
from realtrop.matroids import compose_sv, leq_sv, sign_vector_str

from helpers import random_full_rank_ground

U23 = ground_from_matrix([[1, 0, 1], [0, 1, 1]])


def u23_poset():
    gp = gp_from_matrix(U23, target="S")
    return covector_closure(cocircuits_from_gp(gp))


def test_u23_closure_has_thirteen_covectors():
    poset = u23_poset()
    assert len(poset) == 13
    rays = [v for v in poset.vectors if sum(1 for x in v if x) == 2]
    sectors = [v for v in poset.vectors if all(v)]
    assert len(rays) == 6 and len(sectors) == 6


def test_closure_of_nothing_is_zero():
    poset = covector_closure([])
    assert poset.vectors == ((),) or poset.vectors == ()


def test_closure_is_idempotent():
    poset = u23_poset()
    again = covector_closure(poset.vectors)
    assert again.vectors == poset.vectors


def test_parity_under_negation():
    poset = u23_poset()
    have = set(poset.vectors)
    assert all(tuple(-x for x in v) in have for v in have)


def test_covector_axioms_for_realizable():
    assert check_covector_axioms(u23_poset()).ok


def test_zero_alone_passes():
    assert check_covector_axioms([(0, 0, 0)]).ok


def test_removing_a_cocircuit_pair_breaks_elimination():
    gp = gp_from_matrix(U23, target="S")
    cocs = [v for v in cocircuits_from_gp(gp) if v[2] != 0 or v == (1, -1, 0) or v == (-1, 1, 0)]
    kept = [v for v in cocircuits_from_gp(gp) if v not in ((1, -1, 0), (-1, 1, 0))]
    poset = covector_closure(kept)
    report = check_covector_axioms(poset)
    assert not report.ok
    assert any(v["axiom"] == "Cov4" for v in report.violations)


def test_cover_relations_are_tight():
    poset = u23_poset()
    vecs = poset.vectors
    for i, j in poset.covers:
        assert leq_sv(vecs[i], vecs[j]) and vecs[i] != vecs[j]
        assert not any(
            leq_sv(vecs[i], vecs[k]) and leq_sv(vecs[k], vecs[j])
            and vecs[k] not in (vecs[i], vecs[j])
            for k in range(len(vecs))
        )


def test_chain_lengths_bounded_by_rank():
    rng = random.Random(47)
    for _ in range(4):
        h = rng.randint(2, 3)
        g = random_full_rank_ground(rng, h, rng.randint(h, 5), constant=True)
        gp = gp_from_matrix(g, target="S")
        poset = covector_closure(cocircuits_from_gp(gp))
        assert poset.max_chain_length() == h
        assert check_covector_axioms(poset).ok


def test_zero_flats():
    gp_s = gp_from_matrix(U23, target="S")
    und = pushforward_gp(gp_from_matrix(U23), "to-krasner")
    poset = covector_closure(cocircuits_from_gp(gp_s))
    zero = (0, 0, 0)
    assert covector_zero_flat(zero, und) == (0, 1, 2)
    assert covector_zero_flat((0, 1, 1), und) == (0,)
    full = next(v for v in poset.vectors if all(v))
    assert covector_zero_flat(full, und) == ()


def test_zero_flat_rejects_non_flats():
    und = pushforward_gp(gp_from_matrix(U23), "to-krasner")
    # zero set {0, 1} spans everything in U(2,3), so it is not closed
    with pytest.raises(ValueError):
        covector_zero_flat((0, 0, 1), und)


def test_flat_map_is_strictly_monotone_on_poset():
    gp_s = gp_from_matrix(U23, target="S")
    und = pushforward_gp(gp_from_matrix(U23), "to-krasner")
    poset = covector_closure(cocircuits_from_gp(gp_s))
    for X in poset.vectors:
        fx = set(covector_zero_flat(X, und))
        for Y in poset.vectors:
            if X != Y and leq_sv(X, Y):
                fy = set(covector_zero_flat(Y, und))
                assert fy < fx


def test_composition_operator():
    assert compose_sv((1, 0, -1), (0, 1, 1)) == (1, 1, -1)
    assert compose_sv((0, 0, 0), (1, -1, 0)) == (1, -1, 0)
    assert sign_vector_str((1, 0, -1)) == "+0-"
