"""Artin combing of pure braids, abelianization, and commutator collection.

A pure braid in P_k factors as w_k * u where u is the braid with strand k
forgotten and w_k lies in the free kernel of P_k -> P_{k-1}, generated by
A_{i,k} = p_{i,k}.  Recursing gives the layered normal form (CombedForm).
Layer words with zero exponent sums are collected into conjugated
commutators of generators, which is what makes them removable by delta
moves downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braids import (
    BraidError,
    BraidWord,
    NotPureError,
    PureGenSpec,
    compose,
    free_reduce,
    invert,
    invert_letters,
    pair_crossings,
    permutation,
    pure_gen,
)


@dataclass(frozen=True)
class ExponentVector:
    """Exponent sums e_{i,j} of a pure braid over the generators p_{i,j}."""

    strands: int
    entries: tuple[tuple[tuple[int, int], int], ...]  # sorted ((i,j), e) pairs

    def __getitem__(self, key: tuple[int, int]) -> int:
        return dict(self.entries).get(key, 0)

    def is_zero(self) -> bool:
        return all(e == 0 for _, e in self.entries)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {pair: e for pair, e in self.entries if e != 0}


def exponent_vector(p: BraidWord) -> ExponentVector:
    """Half the signed crossing count for each strand pair of a pure braid."""
    if not p.is_pure():
        raise NotPureError("exponent_vector is defined for pure braids")
    counts = pair_crossings(p)
    entries = []
    for pair, c in sorted(counts.items()):
        if c % 2 != 0:
            raise BraidError(
                f"odd signed crossing count {c} for strand pair {pair}"
            )
        if c != 0:
            entries.append((pair, c // 2))
    return ExponentVector(p.strands, tuple(entries))


def is_in_p_prime(p: BraidWord) -> bool:
    """Membership in P_k' = [P_k, P_k], the kernel of abelianization."""
    return exponent_vector(p).is_zero()


def forget_last_strand(w: BraidWord) -> BraidWord:
    """Remove the strand starting at position k from a pure braid word."""
    k = w.strands
    if k == 1:
        return BraidWord(1)
    pos = k  # current position of the forgotten strand
    letters: list[int] = []
    for letter in w.letters:
        i = abs(letter)
        if i == pos:
            pos += 1
        elif i + 1 == pos:
            pos -= 1
        elif i > pos:
            letters.append(letter - (1 if letter > 0 else -1))
        else:
            letters.append(letter)
    return BraidWord(k - 1, tuple(letters))


def _act_letter(a_word: Sequence[int], i: int, eps: int) -> tuple[int, ...]:
    """Conjugation by sigma_i^eps on a free word in the A_{j,k} (i <= k-2).

    sigma_i A_i sigma_i^-1 = A_{i+1}; sigma_i A_{i+1} sigma_i^-1 =
    A_{i+1}^-1 A_i A_{i+1}; other generators are fixed (and the inverse
    letter applies the inverse substitution).
    """
    out: list[int] = []

    def push(x: int) -> None:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)

    for letter in a_word:
        j, s = abs(letter), (1 if letter > 0 else -1)
        if eps > 0:
            if j == i:
                push(s * (i + 1))
            elif j == i + 1:
                if s > 0:
                    push(-(i + 1)), push(i), push(i + 1)
                else:
                    push(-(i + 1)), push(-i), push(i + 1)
            else:
                push(letter)
        else:
            if j == i:
                if s > 0:
                    push(i), push(i + 1), push(-i)
                else:
                    push(i), push(-(i + 1)), push(-i)
            elif j == i + 1:
                push(s * i)
            else:
                push(letter)
    return tuple(out)


def _act_word(a_word: Sequence[int], conj: Sequence[int]) -> tuple[int, ...]:
    """Conjugation by the B_{k-1} word `conj` (applied innermost-last)."""
    out = tuple(a_word)
    for letter in reversed(conj):
        out = _act_letter(out, abs(letter), 1 if letter > 0 else -1)
    return out


def _express_last_layer(w: BraidWord) -> tuple[int, ...]:
    """Express a kernel word (strand-k deletion freely trivial) in A_{i,k}.

    Schreier scan with transversal r_p = sigma_{k-1}..sigma_p: letters not
    touching strand k accumulate as a B_{k-1} conjugator, letters where
    strand k crosses emit a conjugated A-generator.
    """
    k = w.strands
    pos = k
    conj: list[int] = []  # accumulated B_{k-1} word
    out: list[int] = []
    for letter in w.letters:
        i = abs(letter)
        positive = letter > 0
        if i == pos:
            # strand k moves right; positive crossing emits A_pos
            if positive:
                for x in _act_word((pos,), conj):
                    if out and out[-1] == -x:
                        out.pop()
                    else:
                        out.append(x)
            pos += 1
        elif i + 1 == pos:
            # strand k moves left; negative crossing emits A_{pos-1}^-1
            if not positive:
                for x in _act_word((-(pos - 1),), conj):
                    if out and out[-1] == -x:
                        out.pop()
                    else:
                        out.append(x)
            pos -= 1
        else:
            shifted = letter - (1 if letter > 0 else -1) if i > pos else letter
            if conj and conj[-1] == -shifted:
                conj.pop()
            else:
                conj.append(shifted)
    if pos != k:
        raise NotPureError("strand k does not return to its position")
    if free_reduce(conj):
        raise BraidError("projection of kernel word is not freely trivial")
    return tuple(out)


@dataclass(frozen=True)
class CombedForm:
    """Layered normal form: layers[0] is the j=k layer, down to j=2.

    Each layer is a free word in the generators A_{1,j}..A_{j-1,j}, stored
    as signed indices i.
    """

    strands: int
    layers: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.layers) != max(self.strands - 1, 0):
            raise BraidError("combed form needs one layer per strand 2..k")

    def layer(self, j: int) -> tuple[int, ...]:
        """The layer of generators A_{i,j}."""
        return self.layers[self.strands - j]


def comb(p: BraidWord) -> CombedForm:
    """Artin combing of a pure braid; expand() reverses it up to braid_eq."""
    if not p.is_pure():
        raise NotPureError("comb requires a pure braid")
    layers: list[tuple[int, ...]] = []
    w = p
    for j in range(p.strands, 1, -1):
        u = forget_last_strand(w)
        kernel = compose(w, invert(_reembed(u, j)))
        layers.append(_express_last_layer(kernel))
        w = u
    return CombedForm(p.strands, tuple(layers))


def _reembed(u: BraidWord, k: int) -> BraidWord:
    return BraidWord(k, u.letters)


def expand_layer(layer: Sequence[int], j: int, k: int) -> BraidWord:
    """Expand A_{i,j} letters into a braid word in B_k."""
    out = BraidWord(k)
    for letter in layer:
        g = pure_gen(PureGenSpec(abs(letter), j), k)
        out = compose(out, g if letter > 0 else invert(g))
    return out


def expand(cf: CombedForm) -> BraidWord:
    """Concatenate expanded layers j = k, k-1, .., 2."""
    out = BraidWord(cf.strands)
    for idx, layer in enumerate(cf.layers):
        j = cf.strands - idx
        out = compose(out, expand_layer(layer, j, cf.strands))
    return out


def layer_exponent_sums(layer: Sequence[int]) -> dict[int, int]:
    sums: dict[int, int] = {}
    for letter in layer:
        i = abs(letter)
        sums[i] = sums.get(i, 0) + (1 if letter > 0 else -1)
    return {i: s for i, s in sums.items() if s != 0}


@dataclass(frozen=True)
class CommutatorFactor:
    """One factor c [x_a, x_b]^sign c^-1 over abstract free generators."""

    conjugator: tuple[int, ...]
    a: int
    b: int
    sign: int

    def as_word(self) -> tuple[int, ...]:
        comm = (self.a, self.b, -self.a, -self.b)
        if self.sign < 0:
            comm = invert_letters(comm)
        return free_reduce(self.conjugator + comm + invert_letters(self.conjugator))


@dataclass(frozen=True)
class CommutatorDecomposition:
    factors: tuple[CommutatorFactor, ...]

    def as_word(self) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for f in self.factors:
            out = free_reduce(out + f.as_word())
        return out


def _normalize_factor(conj: Sequence[int], left: int, right: int) -> CommutatorFactor:
    """Rewrite c [x^a, y^b] c^-1 with signed letters into standard form."""
    conj = list(conj)
    sign = 1
    # [u^-1, v] = u^-1 [u,v]^-1 u ; [u, v^-1] = v^-1 [u,v]^-1 v ;
    # [u^-1, v^-1] = (vu)^-1 [u,v] (vu)
    if left < 0 and right < 0:
        conj += [right, left]
    elif left < 0:
        conj += [left]
        sign = -sign
    elif right < 0:
        conj += [right]
        sign = -sign
    return CommutatorFactor(free_reduce(conj), abs(left), abs(right), sign)


def decompose_layer(layer: Sequence[int]) -> CommutatorDecomposition:
    """Collect a zero-exponent-sum free word into conjugated commutators.

    Repeatedly takes the leftmost occurrence of the lowest generator index
    and commutes it rightward to its cancelling inverse, emitting one
    conjugated commutator per transposition past a different letter.
    """
    word = list(free_reduce(layer))
    if layer_exponent_sums(word):
        raise BraidError("decompose_layer needs zero exponent sum per generator")
    factors: list[CommutatorFactor] = []
    while word:
        g = min(abs(l) for l in word)
        s = next(idx for idx, l in enumerate(word) if abs(l) == g)
        i = s
        while True:
            cur = word[i]
            nxt = word[i + 1]
            if nxt == -cur:
                del word[i:i + 2]
                word = list(free_reduce(word))
                break
            if nxt != cur:
                factors.append(_normalize_factor(free_reduce(word[:i]), cur, nxt))
                word[i], word[i + 1] = nxt, cur
            i += 1
    return CommutatorDecomposition(tuple(factors))
