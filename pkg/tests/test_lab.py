import random

import pytest

from deltabraid.braids import (
    BraidError,
    BraidWord,
    braid_eq,
    compose,
    invert,
    permutation,
    shift_braid,
)
from deltabraid.combing import is_in_p_prime
from deltabraid.delta import delta_n_witness
from deltabraid.invariants import (
    closure_components,
    conway_a2,
    jones,
    linking_matrix,
)
from deltabraid.lab import (
    GammaCertificate,
    IdealProduct,
    PPrimeLeaf,
    SlideState,
    cert_from_json,
    cert_to_json,
    connected_sum_normalize,
    expand_ideal_product,
    random_knot_word,
    sample_derived,
    sample_gamma,
    sample_p_prime,
    slide_conjugator,
    slide_step,
    validate_certificate,
    verify_theorem_2_1_AC,
)


def test_sample_p_prime_size_zero_is_identity():
    w, leaf = sample_p_prime(4, 11, 0)
    assert w.letters == ()
    assert leaf.factors == ()


def test_sample_p_prime_membership():
    rng = random.Random(61)
    for _ in range(100):
        k = rng.randint(2, 6)
        w, leaf = sample_p_prime(k, rng.getrandbits(32), rng.randint(0, 3))
        assert is_in_p_prime(w)
        assert leaf.word() == w


def test_sample_p_prime_deterministic():
    a, _ = sample_p_prime(4, 123, 2)
    b, _ = sample_p_prime(4, 123, 2)
    assert a == b


def test_sample_gamma_level_one_is_leaf():
    cert = sample_gamma(1, 4, 5)
    assert isinstance(cert.root, PPrimeLeaf)
    assert cert.level == 1


def test_sample_gamma_structure_validates():
    rng = random.Random(67)
    for n in (1, 2, 3):
        for _ in range(5):
            cert = sample_gamma(n, rng.randint(3, 5), rng.getrandbits(32))
            validate_certificate(cert)
            assert is_in_p_prime(cert.word())


def test_sample_gamma_k2_yields_identity():
    cert = sample_gamma(1, 2, 3)
    assert cert.word().letters == ()


def test_validate_certificate_rejects_level_mismatch():
    leaf = sample_gamma(1, 3, 1).root
    with pytest.raises(BraidError):
        validate_certificate(GammaCertificate(strands=3, level=2, root=leaf))


def test_derived_certificates_transcribe_to_gamma():
    rng = random.Random(71)
    for trial in range(50):
        n = rng.randint(1, 3)
        cert = sample_derived(n, rng.randint(3, 4), rng.getrandbits(32))
        validate_certificate(cert)  # doubles as the gamma-level check
        assert is_in_p_prime(cert.word())
        mk = delta_n_witness(cert)
        assert mk.order == n


def test_cert_json_round_trip():
    rng = random.Random(73)
    for n in (1, 2, 3):
        cert = sample_gamma(n, 4, rng.getrandbits(32))
        back = cert_from_json(cert_to_json(cert))
        assert back == cert


def test_ideal_product_validation():
    p, _ = sample_p_prime(3, 1, 1)
    with pytest.raises(BraidError):
        IdealProduct(strands=3, xs=(BraidWord(3, (1, 1)),), y=BraidWord(3))
    with pytest.raises(BraidError):
        IdealProduct(strands=3, xs=(p,), y=BraidWord(3, (1,)))


def test_expand_ideal_product_counts_and_signs():
    rng = random.Random(79)
    for n in (0, 1, 2, 3):
        k = 3
        xs = tuple(sample_p_prime(k, rng.getrandbits(32), 1)[0]
                   for _ in range(n))
        y, _ = sample_p_prime(k, rng.getrandbits(32), 1)
        terms = expand_ideal_product(IdealProduct(strands=k, xs=xs, y=y))
        assert len(terms) == 2 ** n
        if n >= 1:
            assert sum(sign for sign, _ in terms) == 0
        for _, w in terms:
            assert closure_components(w)[0] == 1


def test_expand_ideal_product_n1_terms():
    k = 3
    x, _ = sample_p_prime(k, 5, 1)
    y = BraidWord(3)
    terms = expand_ideal_product(IdealProduct(strands=k, xs=(x,), y=y))
    t_k = shift_braid(k)
    assert braid_eq(terms[0][1], t_k) and terms[0][0] == -1
    assert braid_eq(terms[1][1], compose(x, t_k)) and terms[1][0] == 1


def test_connected_sum_normalize_jones_multiplicative():
    rng = random.Random(83)
    for _ in range(5):
        k = rng.randint(2, 3)
        y = compose(random_knot_word(k, rng.randint(2, 6), rng),
                    invert(shift_braid(k)))
        ip = IdealProduct(strands=k, xs=(), y=y)
        state = connected_sum_normalize(ip)
        assert state.m == k and state.z.letters == ()
        lhs = jones(state.term_word(0))
        rhs = jones(compose(y, shift_braid(k))) * \
            jones(compose(invert(y), shift_braid(k)))
        assert lhs == rhs


def test_connected_sum_normalize_a2_additive():
    rng = random.Random(89)
    for _ in range(5):
        k = rng.randint(2, 3)
        y = compose(random_knot_word(k, rng.randint(2, 6), rng),
                    invert(shift_braid(k)))
        x, _ = sample_p_prime(k, rng.getrandbits(32), 1)
        ip = IdealProduct(strands=k, xs=(x,), y=y)
        state = connected_sum_normalize(ip)
        summand = conway_a2(compose(invert(y), shift_braid(k)))
        for mask, (_, orig) in enumerate(expand_ideal_product(ip)):
            assert conway_a2(state.term_word(mask)) == \
                conway_a2(orig) + summand


def test_slide_step_identity_y_collapses():
    k = 3
    x, _ = sample_p_prime(k, 7, 1)
    from deltabraid.braids import embed
    state = SlideState(strands=k, xs=(embed(x, 2 * k),), z=BraidWord(2 * k),
                       y=BraidWord(2 * k), m=2)
    new = slide_step(state)
    assert new.m == 1
    assert new.xs == state.xs
    assert new.z.letters == ()


def test_slide_step_conjugates_terms():
    from helpers import random_pure
    rng = random.Random(97)
    for trial in range(6):
        k = rng.randint(2, 3)
        n = rng.randint(0, 2)
        xs = tuple(sample_p_prime(k, rng.getrandbits(32), 1)[0]
                   for _ in range(n))
        y = random_pure(k, rng.randint(4, 8), rng)
        while not y.letters:
            y = random_pure(k, rng.randint(4, 8), rng)
        state = connected_sum_normalize(IdealProduct(strands=k, xs=xs, y=y))
        while state.m > 0:
            g = slide_conjugator(state)
            new = slide_step(state)
            for mask in range(1 << n):
                lhs = new.term_word(mask)
                rhs = compose(compose(g, state.term_word(mask)), invert(g))
                assert braid_eq(lhs, rhs), (trial, state.m, mask)
            state = new
        assert is_in_p_prime(state.residual_y())


def test_slide_preserves_term_invariants():
    # sampled P' data makes the exact word check expensive, but closure
    # invariants must be conserved at every step regardless
    rng = random.Random(107)
    for _ in range(4):
        k = rng.randint(2, 3)
        n = rng.randint(0, 2)
        xs = tuple(sample_p_prime(k, rng.getrandbits(32), 1)[0]
                   for _ in range(n))
        y, _ = sample_p_prime(k, rng.getrandbits(32), 1)
        state = connected_sum_normalize(IdealProduct(strands=k, xs=xs, y=y))
        baseline = [(jones(w), linking_matrix(w)) for _, w in state.terms()]
        while state.m > 0:
            state = slide_step(state)
            for (jv, lk), (_, w) in zip(baseline, state.terms()):
                assert jones(w) == jv
                assert linking_matrix(w) == lk
        assert is_in_p_prime(state.residual_y())


def test_slide_step_rejects_m_zero():
    k = 2
    state = SlideState(strands=k, xs=(), z=BraidWord(2 * k),
                       y=BraidWord(2 * k), m=0)
    with pytest.raises(BraidError):
        slide_step(state)


def test_verify_theorem_report_shape_and_pass():
    report = verify_theorem_2_1_AC(2, 3, seed=11, trials=4)
    assert report["theorem"] == "2.1AC"
    assert report["n"] == 2 and report["k"] == 3
    assert report["seed"] == "11"
    assert len(report["trials"]) == 4
    assert report["pass"] is True
    for t in report["trials"]:
        assert t["agree"] is True
        assert t["coeffs_base"] == t["coeffs_mod"]
        assert t["b"].startswith("B3 ")
        cert_from_json(t["p_cert"])  # round-trips


def test_verify_theorem_passes_for_all_levels():
    for n in (1, 2, 3):
        for k in (3, 4):
            assert verify_theorem_2_1_AC(n, k, seed=n * 10 + k,
                                         trials=3)["pass"]


def test_p_prime_does_not_fix_a2():
    # order-2 data is not constrained at n = 1: some P' multiplication
    # must change a_2
    rng = random.Random(101)
    found = False
    for _ in range(50):
        k = 3
        p, _ = sample_p_prime(k, rng.getrandbits(32), 1)
        b = random_knot_word(k, rng.randint(4, 10), rng)
        if conway_a2(b) != conway_a2(compose(p, b)):
            found = True
            break
    assert found


def test_random_knot_word_closure_is_knot():
    rng = random.Random(103)
    for _ in range(30):
        k = rng.randint(2, 6)
        w = random_knot_word(k, rng.randint(0, 12), rng)
        assert closure_components(w)[0] == 1
        assert permutation(w).is_cycle()
