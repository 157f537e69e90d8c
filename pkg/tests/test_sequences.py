# tests/test_sequences.py
import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.bound_formulas import BoundFormulas
from core.exceptions import PreconditionError
from models.monotone_witness import Direction, MonotoneWitness
from services.sequence_service import SequenceService

from tests.strategies import distinct_sequences


def _has_run(seq, length: int, increasing: bool) -> bool:
    for idx in combinations(range(len(seq)), length):
        vals = [seq[i] for i in idx]
        if all((a < b) == increasing for a, b in zip(vals, vals[1:])):
            return True
    return False


def test_increasing_run() -> None:
    seq = [3, 1, 4, 2, 5]
    w = SequenceService.es_extract(seq, 3, 3)
    assert w.direction == Direction.INCREASING
    assert w.indices == (0, 2, 4)
    assert w.values(seq) == (3, 4, 5)


def test_decreasing_sequence() -> None:
    seq = [5, 4, 3, 2, 1]
    w = SequenceService.find_run(seq, 5, 5)
    assert w.direction == Direction.DECREASING
    assert w.indices == (0, 1, 2, 3, 4)


def test_length_below_guarantee() -> None:
    with pytest.raises(PreconditionError) as e:
        SequenceService.es_extract([1, 2, 3], 4, 4)
    assert "(l-1)(k-1)+1 = 10" in e.value.detail


def test_duplicate_values() -> None:
    with pytest.raises(PreconditionError):
        SequenceService.es_extract([1, 2, 2, 3, 0], 3, 3)
    with pytest.raises(PreconditionError):
        SequenceService.find_run([4, 4], 1, 1)


def test_non_positive_lengths() -> None:
    with pytest.raises(PreconditionError):
        SequenceService.es_extract([1, 2, 3], 0, 2)


def test_trivial_runs() -> None:
    assert SequenceService.es_extract([7], 1, 1).indices == (0,)
    assert SequenceService.find_run([], 1, 1) is None


def test_earliest_ending_run_wins() -> None:
    # the increasing pair at 1, 2 ends later than the decreasing one at 0, 1
    w = SequenceService.find_run([2, 0, 1], 2, 2)
    assert w.indices == (0, 1)
    assert w.direction == Direction.DECREASING
    w = SequenceService.find_run([0, 2, 1], 2, 2)
    assert w.direction == Direction.INCREASING


def test_witness_rejects_wrong_direction() -> None:
    assert not MonotoneWitness(indices=(0, 1), direction=Direction.INCREASING).holds_for([2, 1])
    assert not MonotoneWitness(indices=(1, 0), direction=Direction.DECREASING).holds_for([2, 1])
    assert len(MonotoneWitness(indices=(0, 1), direction=Direction.DECREASING)) == 2


@pytest.mark.parametrize("k, ell", [(3, 3), (3, 4), (4, 3), (2, 7), (7, 2)])
def test_every_permutation_of_seven(k: int, ell: int) -> None:
    for perm in permutations(range(7)):
        w = SequenceService.es_extract(perm, k, ell)
        assert w.holds_for(perm)
        assert len(w) == (k if w.direction == Direction.INCREASING else ell)


@pytest.mark.parametrize("n", range(0, 7))
def test_find_run_agrees_with_brute_force(n: int) -> None:
    for perm in permutations(range(n)):
        w = SequenceService.find_run(perm, 3, 3)
        expected = _has_run(perm, 3, True) or _has_run(perm, 3, False)
        assert (w is not None) == expected
        if w is not None:
            assert w.holds_for(perm)


@settings(max_examples=200)
@given(distinct_sequences(), st.integers(min_value=1, max_value=7), st.integers(min_value=1, max_value=7))
def test_extraction_on_long_enough_sequences(seq, k: int, ell: int) -> None:
    if len(seq) < BoundFormulas.es_length(k, ell):
        with pytest.raises(PreconditionError):
            SequenceService.es_extract(seq, k, ell)
        return
    w = SequenceService.es_extract(seq, k, ell)
    assert w.holds_for(seq)


@pytest.mark.slow
def test_random_sequences() -> None:
    rng = random.Random(20)
    for _ in range(10_000):
        k, ell = rng.randint(1, 8), rng.randint(1, 8)
        n = BoundFormulas.es_length(k, ell) + rng.randint(0, 5)
        seq = rng.sample(range(10 * n), n)
        w = SequenceService.es_extract(seq, k, ell)
        assert w.holds_for(seq)
        assert len(w) == (k if w.direction == Direction.INCREASING else ell)
