import random

import pytest

from deltabraid.braids import (
    BraidError,
    BraidWord,
    PureGenSpec,
    braid_eq,
    commutator,
    compose,
    invert,
    permutation,
    pure_gen,
    shift_braid,
)
from deltabraid.combing import exponent_vector, is_in_p_prime
from deltabraid.delta import (
    DeltaInsertion,
    MarkedBraid,
    alt_sum,
    apply_insertions,
    delta_n_witness,
    delta_trivialize,
    marked_from_json,
    marked_to_json,
    marked_word_from_trivialization,
    script_from_json,
    script_to_json,
)
from deltabraid.invariants import closure_components, linking_matrix
from deltabraid.lab import sample_gamma, sample_p_prime
from helpers import random_pure, random_word

COMM = commutator(pure_gen(PureGenSpec(1, 2), 3), pure_gen(PureGenSpec(2, 3), 3))


def test_insertion_validation():
    with pytest.raises(BraidError):
        DeltaInsertion(0, 2, 1, 3, 1)
    with pytest.raises(BraidError):
        DeltaInsertion(0, 1, 2, 3, 2)
    with pytest.raises(BraidError):
        DeltaInsertion(-1, 1, 2, 3, 1)


def test_apply_insertions_empty_set_is_identity():
    w = BraidWord(3, (1, -2, 1))
    assert apply_insertions(w, []) == w.reduced()


def test_apply_insertion_into_empty_word_gives_relator():
    got = apply_insertions(BraidWord(3), [DeltaInsertion(0, 1, 2, 3, 1)])
    assert braid_eq(got, COMM)


def test_apply_insertions_position_checks():
    w = BraidWord(3, (1, 1))
    with pytest.raises(BraidError):
        apply_insertions(w, [DeltaInsertion(3, 1, 2, 3, 1)])
    with pytest.raises(BraidError):
        apply_insertions(w, [DeltaInsertion(1, 1, 2, 3, 1),
                             DeltaInsertion(1, 1, 2, 3, -1)])


def test_insertions_preserve_exponent_vector_and_permutation():
    rng = random.Random(43)
    for trial in range(80):
        k = rng.randint(3, 6)
        w = random_word(k, rng.randint(0, 25), rng)
        h = rng.randint(1, k - 2)
        i = rng.randint(h + 1, k - 1)
        j = rng.randint(i + 1, k)
        mv = DeltaInsertion(rng.randint(0, len(w.letters)), h, i, j,
                            rng.choice((1, -1)))
        w2 = apply_insertions(w, [mv])
        assert permutation(w2).images == permutation(w).images
        if w.is_pure():
            assert exponent_vector(w2).entries == exponent_vector(w).entries
        assert closure_components(w2)[0] == closure_components(w)[0]
        assert linking_matrix(w2) == linking_matrix(w)


def test_trivialize_identity_gives_empty_script():
    script = delta_trivialize(BraidWord(4))
    assert script.moves == ()
    assert script.base.letters == ()


def test_trivialize_single_commutator_is_one_move():
    script = delta_trivialize(COMM)
    assert len(script.moves) == 1
    assert script.base.reduced().letters == ()
    assert braid_eq(script.apply(), COMM)


def test_trivialize_random_p_prime():
    from helpers import sample_p_prime_small
    rng = random.Random(47)
    for trial in range(30):
        k = rng.randint(3, 5)
        w, script = sample_p_prime_small(k, rng)
        assert script.base.reduced().letters == ()
        assert braid_eq(script.apply(), w), trial


def test_trivialize_rejects_non_p_prime():
    with pytest.raises(BraidError):
        delta_trivialize(pure_gen(PureGenSpec(1, 2), 3))


def test_equal_exponent_vectors_are_delta_connected():
    rng = random.Random(53)
    found = 0
    for _ in range(40):
        k = rng.randint(3, 4)
        p = random_pure(k, rng.randint(0, 10), rng)
        shuffle = list(p.letters)
        rng.shuffle(shuffle)
        q = BraidWord(k, tuple(shuffle))
        if not q.is_pure():
            continue
        if exponent_vector(p).entries != exponent_vector(q).entries:
            continue
        script = delta_trivialize(compose(p, invert(q)))
        assert braid_eq(script.apply(), compose(p, invert(q)))
        found += 1
    assert found >= 5


def test_marked_word_from_trivialization():
    mk = marked_word_from_trivialization(COMM)
    assert mk.order == 1
    assert len(mk.site_sets[0]) == 1
    assert braid_eq(mk.subset_word([]), COMM)
    assert mk.subset_word([0]).letters == ()


def test_marked_braid_rejects_position_clashes():
    mv = DeltaInsertion(0, 1, 2, 3, 1)
    with pytest.raises(BraidError):
        MarkedBraid(BraidWord(3), ((mv,), (mv,)))


def test_witness_subsets_trivialize():
    rng = random.Random(59)
    for n in (1, 2, 3):
        for trial in range(4):
            k = rng.randint(3, 4)
            cert = sample_gamma(n, k, rng.getrandbits(32), size=1)
            w = cert.word()
            mk = delta_n_witness(cert)
            assert mk.order == n
            for mask in range(1, 1 << n):
                subset = [i for i in range(n) if mask >> i & 1]
                trivial = mk.subset_word(subset)
                assert trivial.letters == ()
                assert braid_eq(trivial, BraidWord(k))
            assert braid_eq(mk.subset_word([]), w) if n == 1 else True
            assert permutation(mk.subset_word([])).is_identity()


def test_script_json_round_trip():
    script = delta_trivialize(COMM)
    assert script_from_json(script_to_json(script)) == script


def test_marked_json_round_trip():
    cert = sample_gamma(2, 4, 99, size=1)
    mk = delta_n_witness(cert)
    assert marked_from_json(marked_to_json(mk)) == mk


def test_alt_sum_no_sites_returns_value():
    mk = MarkedBraid(BraidWord(2, (1, 1, 1)), ())
    report = alt_sum(mk, lambda w: w.writhe)
    assert report.order == 0
    assert report.total == 3


def test_alt_sum_constant_invariant_cancels():
    cert = sample_gamma(2, 3, 7, size=1)
    mk = delta_n_witness(cert)
    report = alt_sum(mk, lambda w: 17)
    assert report.total == 0
    assert len(report.values) == 4


def test_alt_sum_reports_failing_subset():
    mk = MarkedBraid(BraidWord(3, (1,)), ())

    def boom(w):
        raise ValueError("nope")

    with pytest.raises(BraidError, match="subset"):
        alt_sum(mk, boom)
