"""Shared generators for randomized braid tests.

Equality test data is built as relation consequences of short base words:
free insertions, braid relators, far-commutation swaps, and conjugation.
That keeps the underlying group elements simple (their automorphism
images stay small) while the words themselves can grow to hundreds of
letters.
"""

import random

from deltabraid.braids import (
    BraidWord,
    Permutation,
    compose,
    invert,
    invert_letters,
    permutation,
    standard_lift,
)


def random_word(k: int, length: int, rng: random.Random) -> BraidWord:
    if k < 2 or length == 0:
        return BraidWord(k)
    return BraidWord(k, tuple(rng.choice((1, -1)) * rng.randint(1, k - 1)
                              for _ in range(length)))


def random_pure(k: int, length: int, rng: random.Random) -> BraidWord:
    w = random_word(k, length, rng)
    return compose(w, standard_lift(permutation(w).inverse()))


def _insertions(k: int, rng: random.Random) -> list[int]:
    """A word freely or relation-equal to the identity."""
    kind = rng.randrange(3)
    if kind == 0:  # cancelling pair
        g = rng.choice((1, -1)) * rng.randint(1, k - 1)
        return [g, -g]
    if kind == 1 and k >= 3:  # braid relator s_i s_j s_i (s_j s_i s_j)^-1
        i = rng.randint(1, k - 2)
        j = i + 1
        if rng.random() < 0.5:
            return [i, j, i, -j, -i, -j]
        return [j, i, j, -i, -j, -i]
    if k >= 4:  # far commutator
        i = rng.randint(1, k - 3)
        j = rng.randint(i + 2, k - 1)
        si = rng.choice((1, -1)) * i
        sj = rng.choice((1, -1)) * j
        return [si, sj, -si, -sj]
    g = rng.choice((1, -1)) * rng.randint(1, k - 1)
    return [g, -g]


def relation_consequence(base: BraidWord, rng: random.Random,
                         max_len: int) -> BraidWord:
    """A word equal to `base` in B_k, padded toward max_len letters."""
    k = base.strands
    letters = list(base.letters)
    while len(letters) < max_len - 8:
        ins = _insertions(k, rng)
        pos = rng.randint(0, len(letters))
        letters[pos:pos] = ins
    return BraidWord(k, tuple(letters[:]))


def conjugated_pair(base: BraidWord, rng: random.Random,
                    max_len: int) -> tuple[BraidWord, BraidWord]:
    """Two words for the same element: a padded base and c (c^-1 b c) c^-1."""
    k = base.strands
    c = random_word(k, rng.randint(0, 6), rng)
    conj_base = compose(compose(invert(c), base), c)
    w1 = relation_consequence(base, rng, max_len)
    inner = relation_consequence(conj_base, rng, max_len - 2 * len(c.letters))
    w2 = BraidWord(k, c.letters + inner.letters + invert_letters(c.letters))
    return w1, w2


def unequal_pair(base: BraidWord, rng: random.Random,
                 max_len: int) -> tuple[BraidWord, BraidWord]:
    """A consequence of base paired with a provably different element."""
    k = base.strands
    w1 = relation_consequence(base, rng, max_len)
    letters = list(relation_consequence(base, rng, max_len).letters)
    if rng.random() < 0.5 or not letters:
        # writhe perturbation: append a single crossing
        letters.append(rng.choice((1, -1)) * rng.randint(1, k - 1))
        w2 = BraidWord(k, tuple(letters))
    else:
        # permutation perturbation: guaranteed when writhe is also kept
        pos = rng.randrange(len(letters))
        old = letters[pos]
        i = abs(old) % (k - 1) + 1
        letters[pos] = i if old > 0 else -i
        w2 = BraidWord(k, tuple(letters))
        if permutation(w2).images == permutation(w1).images \
                and w2.writhe == w1.writhe:
            letters.append(rng.choice((1, -1)) * rng.randint(1, k - 1))
            w2 = BraidWord(k, tuple(letters))
    assert w2.writhe != w1.writhe \
        or permutation(w2).images != permutation(w1).images
    return w1, w2


def sample_p_prime_small(k: int, rng: random.Random, max_size: int = 3,
                         max_script: int = 300):
    """P' sample whose trivialization script stays at desk scale.

    Collection occasionally emits very long conjugators; those words are
    valid but outside the word-problem oracle's intended operating range,
    so they are resampled.
    """
    from deltabraid.delta import delta_trivialize
    from deltabraid.lab import sample_p_prime
    while True:
        w, _ = sample_p_prime(k, rng.getrandbits(32), rng.randint(1, max_size),
                              conj_budget=0)
        script = delta_trivialize(w)
        if len(script.base.letters) <= max_script:
            return w, script


def random_knot_braid(k: int, length: int, rng: random.Random) -> BraidWord:
    w = random_word(k, length, rng)
    cycle = Permutation(tuple(list(range(2, k + 1)) + [1]))
    return compose(w, standard_lift(permutation(w).inverse().compose(cycle)))
