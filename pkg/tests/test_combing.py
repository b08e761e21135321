import random

import pytest

from deltabraid.braids import (
    BraidError,
    BraidWord,
    NotPureError,
    PureGenSpec,
    braid_eq,
    commutator,
    compose,
    free_reduce,
    invert,
    pure_gen,
)
from deltabraid.combing import (
    CombedForm,
    comb,
    decompose_layer,
    expand,
    expand_layer,
    exponent_vector,
    forget_last_strand,
    is_in_p_prime,
    layer_exponent_sums,
)
from helpers import random_pure, random_word


def test_exponent_vector_of_generators():
    rng = random.Random(1)
    for _ in range(20):
        k = rng.randint(2, 7)
        i = rng.randint(1, k - 1)
        j = rng.randint(i + 1, k)
        ev = exponent_vector(pure_gen(PureGenSpec(i, j), k))
        assert ev.as_dict() == {(i, j): 1}


def test_exponent_vector_additive_on_products():
    rng = random.Random(2)
    for _ in range(25):
        k = rng.randint(3, 6)
        p = random_pure(k, rng.randint(0, 15), rng)
        q = random_pure(k, rng.randint(0, 15), rng)
        lhs = exponent_vector(compose(p, q)).as_dict()
        a, b = exponent_vector(p).as_dict(), exponent_vector(q).as_dict()
        keys = set(a) | set(b)
        rhs = {key: a.get(key, 0) + b.get(key, 0) for key in keys}
        assert lhs == {key: v for key, v in rhs.items() if v != 0}


def test_exponent_vector_rejects_non_pure():
    with pytest.raises(NotPureError):
        exponent_vector(BraidWord(3, (1,)))


def test_is_in_p_prime_on_commutators():
    k = 4
    a = pure_gen(PureGenSpec(1, 3), k)
    b = pure_gen(PureGenSpec(2, 4), k)
    assert is_in_p_prime(commutator(a, b))
    assert not is_in_p_prime(a)
    assert is_in_p_prime(BraidWord(k))


def test_forget_last_strand_on_generators():
    k = 4
    # generators not touching strand k survive unchanged
    g = pure_gen(PureGenSpec(1, 2), k)
    assert forget_last_strand(g).letters == pure_gen(PureGenSpec(1, 2), 3).letters
    # generators linking strand k die
    h = pure_gen(PureGenSpec(2, 4), k)
    assert free_reduce(forget_last_strand(h).letters) == ()


def test_forget_last_strand_is_a_homomorphism():
    rng = random.Random(4)
    for _ in range(25):
        k = rng.randint(3, 6)
        p = random_pure(k, rng.randint(0, 20), rng)
        q = random_pure(k, rng.randint(0, 20), rng)
        lhs = forget_last_strand(compose(p, q))
        rhs = compose(forget_last_strand(p), forget_last_strand(q))
        assert braid_eq(lhs, rhs)


def test_comb_requires_pure():
    with pytest.raises(NotPureError):
        comb(BraidWord(3, (1,)))


def test_comb_of_pure_generator():
    cf = comb(pure_gen(PureGenSpec(1, 3), 3))
    assert cf.layer(3) == (1,)
    assert cf.layer(2) == ()


def test_comb_expand_round_trip():
    rng = random.Random(6)
    for trial in range(60):
        k = rng.randint(2, 6)
        p = random_pure(k, rng.randint(0, 25), rng)
        cf = comb(p)
        assert braid_eq(expand(cf), p), trial


def test_combed_form_layer_count_validation():
    with pytest.raises(BraidError):
        CombedForm(3, ((1,),))


def test_p_prime_layers_have_zero_exponent_sums():
    rng = random.Random(8)
    for _ in range(25):
        k = rng.randint(3, 5)
        a = pure_gen(PureGenSpec(rng.randint(1, k - 1), k), k)
        conj = random_pure(k, rng.randint(0, 8), rng)
        w = compose(compose(conj, commutator(
            a, pure_gen(PureGenSpec(1, rng.randint(2, k)), k))), invert(conj))
        if not is_in_p_prime(w):
            continue
        for layer in comb(w).layers:
            assert layer_exponent_sums(layer) == {}


def test_decompose_layer_rebuilds_word():
    rng = random.Random(10)
    for trial in range(60):
        # random zero-exponent-sum free word: u * shuffled(u^-1)
        size = rng.randint(0, 8)
        word = []
        for _ in range(size):
            g = rng.choice((1, -1)) * rng.randint(1, 4)
            word.append(g)
        inverse = [-g for g in word]
        rng.shuffle(inverse)
        layer = free_reduce(tuple(word + inverse))
        if layer_exponent_sums(layer):
            continue
        decomp = decompose_layer(layer)
        assert decomp.as_word() == free_reduce(layer), trial


def test_decompose_layer_rejects_unbalanced():
    with pytest.raises(BraidError):
        decompose_layer((1, 2))


def test_expand_layer_matches_pure_generators():
    w = expand_layer((2, -1), 4, 5)
    expected = compose(pure_gen(PureGenSpec(2, 4), 5),
                       invert(pure_gen(PureGenSpec(1, 4), 5)))
    assert w == expected
