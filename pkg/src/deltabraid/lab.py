"""Certified samplers and desk-scale verification experiments.

Membership in gamma_n(P') or the derived series is never decided for
arbitrary words; it is certified by construction trees whose leaves are
explicit products of conjugated commutators of the standard pure braid
generators.  On top of the samplers sit the ideal-product expansion, the
connected-sum slide machinery, and the invariant-agreement check behind
the main equivalence theorem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence, Union

from .braids import (
    BraidError,
    BraidWord,
    NotPureError,
    Permutation,
    PureGenSpec,
    braid_pow,
    commutator,
    compose,
    embed,
    format_braid,
    invert,
    parse_braid,
    permutation,
    pure_gen,
    shift_braid,
    standard_lift,
)
from .combing import is_in_p_prime
from .invariants import conway_a2, jones_series


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class PPrimeFactor:
    """One conjugated commutator c [p_a, p_b]^sign c^-1 of standard generators."""

    conjugator: BraidWord
    a: PureGenSpec
    b: PureGenSpec
    sign: int

    def word(self, k: int) -> BraidWord:
        core = commutator(pure_gen(self.a, k), pure_gen(self.b, k))
        if self.sign < 0:
            core = invert(core)
        return compose(compose(self.conjugator, core), invert(self.conjugator))


@dataclass(frozen=True)
class PPrimeLeaf:
    """Explicit element of P' = [P, P], certified by its factorization."""

    strands: int
    factors: tuple[PPrimeFactor, ...]

    @property
    def level(self) -> int:
        return 1

    def word(self) -> BraidWord:
        out = BraidWord(self.strands)
        for f in self.factors:
            out = compose(out, f.word(self.strands))
        return out


@dataclass(frozen=True)
class CommNode:
    """[left, right] with left at level n and right certified in P'."""

    left: "CertNode"
    right: "CertNode"

    @property
    def strands(self) -> int:
        return self.left.strands

    @property
    def level(self) -> int:
        return self.left.level + 1

    def word(self) -> BraidWord:
        return commutator(self.left.word(), self.right.word())


@dataclass(frozen=True)
class ProdNode:
    """Product of same-level certified elements."""

    nodes: tuple["CertNode", ...]

    @property
    def strands(self) -> int:
        return self.nodes[0].strands

    @property
    def level(self) -> int:
        return self.nodes[0].level

    def word(self) -> BraidWord:
        out = BraidWord(self.strands)
        for node in self.nodes:
            out = compose(out, node.word())
        return out


@dataclass(frozen=True)
class ConjNode:
    """Conjugate of a certified element by an arbitrary pure braid."""

    conjugator: BraidWord
    node: "CertNode"

    @property
    def strands(self) -> int:
        return self.node.strands

    @property
    def level(self) -> int:
        return self.node.level

    def word(self) -> BraidWord:
        return compose(compose(self.conjugator, self.node.word()),
                       invert(self.conjugator))


CertNode = Union[PPrimeLeaf, CommNode, ProdNode, ConjNode]


@dataclass(frozen=True)
class GammaCertificate:
    """Construction tree certifying membership in gamma_level(P'_strands)."""

    strands: int
    level: int
    root: CertNode

    def word(self) -> BraidWord:
        return self.root.word()


def validate_certificate(cert: GammaCertificate) -> None:
    """Structural validation plus P'-membership at every node."""
    def check(node: CertNode) -> int:
        if isinstance(node, PPrimeLeaf):
            if node.strands != cert.strands:
                raise BraidError("leaf strand count mismatch")
            if not is_in_p_prime(node.word()):
                raise BraidError("leaf word escapes P'")
            return 1
        if isinstance(node, CommNode):
            right_level = check(node.right)
            if right_level < 1:
                raise BraidError("commutator right child must certify P'")
            if not is_in_p_prime(node.word()):
                raise BraidError("commutator word escapes P'")
            return check(node.left) + 1
        if isinstance(node, ProdNode):
            levels = {check(child) for child in node.nodes}
            if len(levels) != 1:
                raise BraidError("product children must share a level")
            return levels.pop()
        if isinstance(node, ConjNode):
            if not node.conjugator.is_pure():
                raise NotPureError("certificate conjugators must be pure")
            return check(node.node)
        raise BraidError(f"unknown certificate node {node!r}")

    level = check(cert.root)
    if level != cert.level:
        raise BraidError(
            f"certificate level {cert.level} disagrees with tree level {level}"
        )


# ---------------------------------------------------------------------------
# Samplers (all randomness flows through explicit integer seeds)


def random_word(k: int, length: int, rng: random.Random) -> BraidWord:
    if k < 2 or length == 0:
        return BraidWord(k)
    return BraidWord(k, tuple(rng.choice((1, -1)) * rng.randint(1, k - 1)
                              for _ in range(length)))


def random_pure_word(k: int, length: int, rng: random.Random) -> BraidWord:
    """Random word composed with the positive lift of its inverse permutation."""
    w = random_word(k, length, rng)
    fix = standard_lift(permutation(w).inverse())
    return compose(w, fix)


def random_knot_word(k: int, length: int, rng: random.Random) -> BraidWord:
    """Random word whose closure is a knot (permutation forced to a k-cycle)."""
    w = random_word(k, length, rng)
    cycle = Permutation(tuple(list(range(2, k + 1)) + [1])) if k > 1 \
        else Permutation((1,))
    fix = standard_lift(permutation(w).inverse().compose(cycle))
    out = compose(w, fix)
    assert permutation(out).is_cycle()
    return out


def _random_gen_spec(k: int, rng: random.Random) -> PureGenSpec:
    i = rng.randint(1, k - 1)
    j = rng.randint(i + 1, k)
    return PureGenSpec(i, j)


def _random_linked_pair(k: int, rng: random.Random) -> tuple[PureGenSpec, PureGenSpec]:
    """Two generators sharing exactly one strand, so they never commute."""
    while True:
        a = _random_gen_spec(k, rng)
        b = _random_gen_spec(k, rng)
        if a != b and len({a.i, a.j} & {b.i, b.j}) == 1:
            return a, b


def _random_conjugator(k: int, rng: random.Random, budget: int) -> BraidWord:
    out = BraidWord(k)
    for _ in range(rng.randint(0, budget)):
        spec = _random_gen_spec(k, rng)
        g = pure_gen(spec, k)
        out = compose(out, g if rng.random() < 0.5 else invert(g))
    return out


def sample_p_prime(k: int, seed: int, size: int,
                   conj_budget: int = 1) -> tuple[BraidWord, PPrimeLeaf]:
    """Random product of `size` conjugated generator commutators in P_k'."""
    if k < 2:
        raise BraidError("P' sampling needs at least 2 strands")
    rng = random.Random(seed)
    factors = []
    if k > 2:  # P_2' is trivial: report the identity rather than erroring
        for _ in range(size):
            a, b = _random_linked_pair(k, rng)
            factors.append(PPrimeFactor(
                conjugator=_random_conjugator(k, rng, conj_budget),
                a=a,
                b=b,
                sign=rng.choice((1, -1)),
            ))
    leaf = PPrimeLeaf(strands=k, factors=tuple(factors))
    return leaf.word(), leaf


def sample_gamma(n: int, k: int, seed: int, size: int = 1,
                 conj_budget: int = 1) -> GammaCertificate:
    """Certificate tree for a random element of gamma_n(P_k').

    For k = 2 the commutator subgroup is trivial and every sample is the
    identity; that degeneracy is the caller's to interpret, not an error.
    """
    if n < 1:
        raise BraidError("gamma level must be >= 1")
    rng = random.Random(seed)

    def build(level: int) -> CertNode:
        if level == 1:
            _, leaf = sample_p_prime(k, rng.getrandbits(32), size, conj_budget)
            return leaf
        left = build(level - 1)
        node: CertNode = CommNode(left=left, right=build(1))
        # retry right children that happen to cancel the left word freely
        for _ in range(8):
            if node.word().letters or not left.word().letters:
                break
            node = CommNode(left=left, right=build(1))
        if rng.random() < 0.3:
            node = ConjNode(conjugator=_random_conjugator(k, rng, conj_budget),
                            node=node)
        return node

    cert = GammaCertificate(strands=k, level=n, root=build(n))
    return cert


def sample_derived(n: int, k: int, seed: int, size: int = 1,
                   conj_budget: int = 1) -> GammaCertificate:
    """Certificate for the derived series P^(n): both children recurse.

    P^(2) = P' is the base (level tag 1); P^(n+1) = [P^(n), P^(n)].  The
    returned tree is also a valid gamma_{n}(P') certificate because the
    right child of each commutator certifies membership in P'.
    """
    if n < 1:
        raise BraidError("derived level must be >= 1")
    rng = random.Random(seed)

    def build(level: int) -> CertNode:
        if level == 1:
            _, leaf = sample_p_prime(k, rng.getrandbits(32), size, conj_budget)
            return leaf
        left = build(level - 1)
        node = CommNode(left=left, right=build(level - 1))
        for _ in range(8):
            if node.word().letters or not left.word().letters:
                break
            node = CommNode(left=left, right=build(level - 1))
        return node

    return GammaCertificate(strands=k, level=n, root=build(n))


# ---------------------------------------------------------------------------
# Certificate serialization


def _node_to_json(node: CertNode) -> dict:
    if isinstance(node, PPrimeLeaf):
        return {"type": "leaf", "factors": [
            {"conj": format_braid(f.conjugator), "a": [f.a.i, f.a.j],
             "b": [f.b.i, f.b.j], "sign": f.sign}
            for f in node.factors]}
    if isinstance(node, CommNode):
        return {"type": "comm", "left": _node_to_json(node.left),
                "right": _node_to_json(node.right)}
    if isinstance(node, ProdNode):
        return {"type": "prod", "nodes": [_node_to_json(c) for c in node.nodes]}
    if isinstance(node, ConjNode):
        return {"type": "conj", "conjugator": format_braid(node.conjugator),
                "node": _node_to_json(node.node)}
    raise BraidError(f"unknown certificate node {node!r}")


def _node_from_json(obj: dict, strands: int) -> CertNode:
    kind = obj["type"]
    if kind == "leaf":
        return PPrimeLeaf(strands=strands, factors=tuple(
            PPrimeFactor(conjugator=parse_braid(f["conj"]),
                         a=PureGenSpec(*f["a"]), b=PureGenSpec(*f["b"]),
                         sign=int(f["sign"]))
            for f in obj["factors"]))
    if kind == "comm":
        return CommNode(left=_node_from_json(obj["left"], strands),
                        right=_node_from_json(obj["right"], strands))
    if kind == "prod":
        return ProdNode(nodes=tuple(_node_from_json(c, strands)
                                    for c in obj["nodes"]))
    if kind == "conj":
        return ConjNode(conjugator=parse_braid(obj["conjugator"]),
                        node=_node_from_json(obj["node"], strands))
    raise BraidError(f"unknown certificate node type {kind!r}")


def cert_to_json(cert: GammaCertificate) -> dict:
    return {"strands": cert.strands, "level": cert.level,
            "root": _node_to_json(cert.root)}


def cert_from_json(obj: dict) -> GammaCertificate:
    strands = int(obj["strands"])
    return GammaCertificate(strands=strands, level=int(obj["level"]),
                            root=_node_from_json(obj["root"], strands))


# ---------------------------------------------------------------------------
# Ideal products and the connected-sum slide


@dataclass(frozen=True)
class IdealProduct:
    """(x_1 - 1)..(x_n - 1) y t_k with x_i in P_k' and y in P_k."""

    strands: int
    xs: tuple[BraidWord, ...]
    y: BraidWord

    def __post_init__(self) -> None:
        for x in self.xs:
            if x.strands != self.strands or not is_in_p_prime(x):
                raise BraidError("ideal-product x factors must lie in P'")
        if self.y.strands != self.strands or not self.y.is_pure():
            raise NotPureError("ideal-product y must be a pure braid")


def expand_ideal_product(ip: IdealProduct) -> list[tuple[int, BraidWord]]:
    """The 2^n signed terms; subsets in lexicographic bitmask order."""
    n = len(ip.xs)
    tail = compose(ip.y, shift_braid(ip.strands))
    out = []
    for mask in range(1 << n):
        word = BraidWord(ip.strands)
        for i in range(n):
            if mask >> i & 1:
                word = compose(word, ip.xs[i])
        sign = (-1) ** (n - bin(mask).count("1"))
        out.append((sign, compose(word, tail)))
    return out


@dataclass(frozen=True)
class SlideState:
    """Relation (x_1-1)..(x_n-1) z y (t^-m y^-1 t^m) t_2k in B_{2k}.

    `strands` is k, so the ambient group is B_{2k}; all stored words are
    already embedded there.
    """

    strands: int
    xs: tuple[BraidWord, ...]
    z: BraidWord
    y: BraidWord
    m: int

    @property
    def ambient(self) -> int:
        return 2 * self.strands

    def residual_y(self) -> BraidWord:
        """z y (t^-m y^-1 t^m): collapses to z when m = 0."""
        t = shift_braid(self.ambient)
        return compose(
            compose(self.z, self.y),
            compose(compose(braid_pow(t, -self.m), invert(self.y)),
                    braid_pow(t, self.m)),
        )

    def term_word(self, mask: int) -> BraidWord:
        word = BraidWord(self.ambient)
        for i in range(len(self.xs)):
            if mask >> i & 1:
                word = compose(word, self.xs[i])
        return compose(compose(word, self.residual_y()),
                       shift_braid(self.ambient))

    def terms(self) -> list[tuple[int, BraidWord]]:
        n = len(self.xs)
        return [((-1) ** (n - bin(mask).count("1")), self.term_word(mask))
                for mask in range(1 << n)]


def connected_sum_normalize(ip: IdealProduct) -> SlideState:
    """Connected-sum each expanded term with <y^-1 t_k>, giving m = k.

    Every term's closure becomes the connected sum of the original term's
    closure with that fixed knot, so additive invariants vanish on the old
    relation iff they vanish on the new one.
    """
    k = ip.strands
    return SlideState(
        strands=k,
        xs=tuple(embed(x, 2 * k) for x in ip.xs),
        z=BraidWord(2 * k),
        y=embed(ip.y, 2 * k),
        m=k,
    )


def slide_step(s: SlideState) -> SlideState:
    """One slide of y^-1 toward y: conjugation by t^-m y t^m, m -> m - 1."""
    if s.m < 1:
        raise BraidError("slide_step requires m >= 1")
    t = shift_braid(s.ambient)
    t_neg = braid_pow(t, -s.m)
    t_pos = braid_pow(t, s.m)
    g = compose(compose(t_neg, s.y), t_pos)
    g_inv = compose(compose(t_neg, invert(s.y)), t_pos)
    xs_new = tuple(compose(compose(g, x), g_inv) for x in s.xs)
    z_new = compose(
        compose(compose(g, s.z), g_inv),
        compose(compose(g, s.y), compose(g_inv, invert(s.y))),
    )
    return SlideState(strands=s.strands, xs=xs_new, z=z_new, y=s.y, m=s.m - 1)


def slide_conjugator(s: SlideState) -> BraidWord:
    """The braid conjugating each input term word to the output term word."""
    t = shift_braid(s.ambient)
    return compose(compose(braid_pow(t, -s.m), s.y), braid_pow(t, s.m))


# ---------------------------------------------------------------------------
# Theorem verification


def verify_theorem_2_1_AC(n: int, k: int, seed: int, trials: int,
                          size: int = 1) -> dict:
    """Check that gamma_n(P')-equivalent knots share u_d for d <= 2n-1.

    For each trial: sample p in gamma_n(P_k') and a random b with k-cycle
    permutation, then compare the Jones series of <b> and <p b> exactly.
    Any disagreement is recorded and fails the report.
    """
    rng = random.Random(seed)
    d_max = 2 * n - 1
    results = []
    all_agree = True
    for _ in range(trials):
        cert = sample_gamma(n, k, rng.getrandbits(32), size=size)
        p = cert.word()
        b = random_knot_word(k, rng.randint(4, 10), rng)
        pb = compose(p, b)
        base = jones_series(b, d_max)
        mod = jones_series(pb, d_max)
        agree = base.coefficients == mod.coefficients
        a2_base, a2_mod = conway_a2(b), conway_a2(pb)
        if n >= 2:  # a_2 = u-type order 2, only constrained once 2 <= 2n-1
            agree = agree and a2_base == a2_mod
        all_agree = all_agree and agree
        results.append({
            "p_cert": cert_to_json(cert),
            "b": format_braid(b),
            "coeffs_base": [str(c) for c in base.coefficients],
            "coeffs_mod": [str(c) for c in mod.coefficients],
            "a2_base": a2_base,
            "a2_mod": a2_mod,
            "agree": agree,
        })
    return {
        "theorem": "2.1AC",
        "n": n,
        "k": k,
        "seed": str(seed),
        "trials": results,
        "pass": all_agree,
    }
