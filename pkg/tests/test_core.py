from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from vcx.bits import colex_k_subsets, elements_of, k_subsets, local_pattern, mask_of, proper_submasks
from vcx.constructions import F6_13, paper_family, star_family
from vcx.core import (
    DomainError,
    Family,
    GroundSet,
    IncrementalChecker,
    KSet,
    ShatterWitnessTable,
    find_shattered_set,
    incremental_vc_check,
    shattered_member,
    shatters,
    uniform_vc_at_most,
    vc_dimension,
)


def all_triples(n):
    return Family.from_sets(n, combinations(range(1, n + 1), 3), 3)


# bits ----------------------------------------------------------------------


def test_mask_roundtrip():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == (1, 3)


def test_colex_order_is_ascending_masks():
    sets = colex_k_subsets(5, 3)
    assert sets == sorted(sets)
    assert [elements_of(m) for m in sets[:4]] == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_k_subsets_count():
    assert len(list(k_subsets(0b111111, 3))) == 20


def test_proper_submasks():
    subs = sorted(proper_submasks(0b111))
    assert subs == [0, 1, 2, 3, 4, 5, 6]


def test_local_pattern_compresses():
    # mask {2,4,5}; sub {2,5} -> local bits 0 and 2
    assert local_pattern(mask_of([2, 5]), mask_of([2, 4, 5])) == 0b101


# types ---------------------------------------------------------------------


def test_ground_set_bounds():
    GroundSet(64)
    with pytest.raises(DomainError):
        GroundSet(0)
    with pytest.raises(DomainError):
        GroundSet(65)


def test_kset_repr_and_elements():
    s = KSet.of([3, 1, 2])
    assert s.elements == (1, 2, 3)
    assert repr(s) == "{1,2,3}"


def test_family_sorted_and_validated():
    f = Family.from_sets(6, F6_13, 3)
    assert list(f.masks) == sorted(f.masks)
    with pytest.raises(DomainError):
        Family.from_sets(6, [(1, 2, 3), (1, 2, 3)])
    with pytest.raises(DomainError):
        Family.from_sets(4, [(1, 2, 5)])
    with pytest.raises(DomainError):
        Family.from_sets(5, [(1, 2, 3), (1, 2)], 3)


def test_family_uniform_k_inferred():
    assert Family.from_sets(5, [(1, 2, 3), (2, 3, 4)]).uniform_k == 3
    assert Family.from_sets(5, [(1, 2, 3), (2, 3)]).uniform_k is None


def test_with_and_without_member():
    f = Family.from_sets(5, [(1, 2, 3)], 3)
    g = f.with_member((2, 3, 4))
    assert len(g) == 2 and (2, 3, 4) in g
    assert g.without_member((1, 2, 3)).sets() == [(2, 3, 4)]


# shattering ----------------------------------------------------------------


def test_single_member_does_not_shatter_singleton():
    assert not shatters(Family.from_sets(3, [(1, 2, 3)]), [1])


def test_all_triples_of_5_shatter_pair():
    assert shatters(all_triples(5), [1, 2])


def test_f6_13_does_not_shatter_145():
    assert not shatters(paper_family("f6_13"), [1, 4, 5])


def test_empty_family_shatters_nothing():
    empty = Family(GroundSet(4), (), 3)
    assert not shatters(empty, [])
    assert not shatters(empty, [1])


def test_shatters_outside_ground():
    with pytest.raises(DomainError):
        shatters(all_triples(4), [5])


def test_vc_dimension_examples():
    assert vc_dimension(all_triples(5)) == 2
    assert vc_dimension(Family.from_sets(3, [(1, 2, 3)])) == 0
    assert vc_dimension(paper_family("f8_45")) == 3
    with pytest.raises(DomainError, match="undefined for empty family"):
        vc_dimension(Family(GroundSet(3), (), 3))


def test_uniform_vc_at_most_examples():
    assert uniform_vc_at_most(paper_family("f6_13"), 2)
    assert not uniform_vc_at_most(all_triples(6), 2)
    assert uniform_vc_at_most(star_family(6, 3, 1), 2)
    with pytest.raises(DomainError):
        uniform_vc_at_most(all_triples(6), 3)
    with pytest.raises(DomainError):
        uniform_vc_at_most(Family.from_sets(5, [(1, 2, 3), (1, 2)]), 2)


def test_shattered_member_is_really_shattered():
    fam = all_triples(6)
    s = shattered_member(fam)
    assert s is not None and s in fam.masks
    assert oracles.shatters(fam.sets(), elements_of(s))


def test_find_shattered_set():
    assert find_shattered_set(paper_family("f6_13"), 3) is None
    s = find_shattered_set(all_triples(6), 3)
    assert s is not None and shatters(all_triples(6), s)


# incremental check -------------------------------------------------------------


def test_incremental_examples():
    first12 = Family.from_sets(6, F6_13[:12], 3)
    assert incremental_vc_check(first12, F6_13[12], 2)
    assert not incremental_vc_check(star_family(6, 3, 1), (2, 3, 4), 2)
    assert incremental_vc_check(Family(GroundSet(6), (), 3), (1, 2, 3), 2)


def test_incremental_rejects_duplicates_and_bad_size():
    f = Family.from_sets(6, [(1, 2, 3)], 3)
    with pytest.raises(DomainError):
        incremental_vc_check(f, (1, 2, 3), 2)
    with pytest.raises(DomainError):
        incremental_vc_check(f, (1, 2), 2)


def test_witness_table():
    t = ShatterWitnessTable.build([mask_of([1, 2, 3])], mask_of([1, 2]))
    assert t.missing == 3 and not t.shattered
    for m in ([1, 4], [2, 4], [4, 5]):
        t.add(mask_of(m))
    assert t.shattered


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_incremental_matches_recheck_on_random_growth(n):
    """Grow random families and compare every candidate against a full recheck."""
    rng = random.Random(n)
    cands = colex_k_subsets(n, 3)
    for _ in range(5 if n < 7 else 2):
        checker = IncrementalChecker(Family(GroundSet(n), (), 3), 2)
        order = cands[:]
        rng.shuffle(order)
        for c in order:
            fam = checker.family
            if c in fam.masks:
                continue
            expected = uniform_vc_at_most(Family(fam.ground, fam.masks + (c,), 3), 2)
            assert checker.can_add(c) == expected
            if expected and rng.random() < 0.7:
                assert checker.add(c)


def test_incremental_exhaustive_n5():
    """Every family on [5] with VC <= 2 and every candidate (all of them, n=5)."""
    n = 5
    cands = colex_k_subsets(n, 3)
    fam = Family(GroundSet(n), tuple(cands), 3)
    assert uniform_vc_at_most(fam, 2)
    # drop one set at a time and re-add it
    for c in cands:
        rest = fam.without_member(c)
        assert incremental_vc_check(rest, c, 2)


# oracle equivalence ------------------------------------------------------------


def random_family(rng, n, k):
    pool = list(combinations(range(1, n + 1), k))
    size = rng.randint(1, len(pool))
    return Family.from_sets(n, rng.sample(pool, size), k)


def test_vc_dimension_matches_naive_oracle():
    rng = random.Random(12345)
    for _ in range(300):
        n = rng.randint(3, 7)
        k = rng.randint(1, min(4, n))
        fam = random_family(rng, n, k)
        assert vc_dimension(fam) == oracles.vc_dimension(fam.sets(), n)


def test_uniform_shortcut_matches_naive_oracle():
    rng = random.Random(777)
    for _ in range(300):
        n = rng.randint(3, 7)
        fam = random_family(rng, n, 3)
        assert uniform_vc_at_most(fam, 2) == oracles.vc_at_most(fam.sets(), n, 2)


# properties ----------------------------------------------------------------


family_strategy = st.integers(4, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(st.sampled_from(list(combinations(range(1, n + 1), 3))), min_size=1),
    )
)


@settings(max_examples=60, deadline=None)
@given(family_strategy, st.randoms(use_true_random=False))
def test_relabel_invariance(data, rnd):
    n, sets = data
    fam = Family.from_sets(n, sets, 3)
    perm = list(range(1, n + 1))
    rnd.shuffle(perm)
    assert vc_dimension(fam.relabel(perm)) == vc_dimension(fam)


@settings(max_examples=60, deadline=None)
@given(family_strategy, st.data())
def test_subfamily_monotonicity(data, draw):
    n, sets = data
    fam = Family.from_sets(n, sets, 3)
    sub = draw.draw(st.sets(st.sampled_from(sorted(sets)), min_size=1))
    assert vc_dimension(Family.from_sets(n, sub, 3)) <= vc_dimension(fam)
