"""Braid words, group operations, and the Artin-action word problem.

A braid in B_k is a word in the generators sigma_1 .. sigma_{k-1}, stored
as a tuple of nonzero signed integers: +i means sigma_i, -i means
sigma_i^{-1}.  Generator indices are 1-based.  The word "a b" means a
first, then b, reading left to right.  Equality of braids is decided by
comparing the induced automorphisms of the free group F_k (the Artin
action), which is faithful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class BraidError(ValueError):
    """Base class for domain errors raised by this library."""


class StrandMismatchError(BraidError):
    """Operands live in braid groups with different strand counts."""


class NotPureError(BraidError):
    """An operation required a pure braid (identity permutation)."""


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a word over signed-integer letters (x, -x cancel)."""
    out: list[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-l for l in reversed(letters))


@dataclass(frozen=True)
class BraidWord:
    """A word in the generators of B_k.  Not automatically reduced."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if letter == 0 or not 1 <= abs(letter) <= self.strands - 1:
                raise BraidError(
                    f"letter {letter} out of range for B_{self.strands}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __pow__(self, n: int) -> "BraidWord":
        return braid_pow(self, n)

    def reduced(self) -> "BraidWord":
        return BraidWord(self.strands, free_reduce(self.letters))

    @property
    def writhe(self) -> int:
        """Exponent sum of the word (signed crossing count)."""
        return sum(1 if l > 0 else -1 for l in self.letters)

    def is_pure(self) -> bool:
        return permutation(self).is_identity()


def identity_braid(k: int) -> BraidWord:
    return BraidWord(k)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenate two braid words and freely reduce the result."""
    if a.strands != b.strands:
        raise StrandMismatchError(
            f"cannot compose words in B_{a.strands} and B_{b.strands}"
        )
    out = list(a.letters)
    for letter in b.letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return BraidWord(a.strands, tuple(out))


def concat_unreduced(k: int, *parts: Sequence[int]) -> BraidWord:
    """Concatenate letter sequences without free reduction.

    Used where letter positions must stay stable (marked words).
    """
    letters: list[int] = []
    for part in parts:
        letters.extend(part)
    return BraidWord(k, tuple(letters))


def invert(a: BraidWord) -> BraidWord:
    """Reversed word with flipped signs; a * invert(a) reduces to empty."""
    return BraidWord(a.strands, invert_letters(a.letters))


def braid_pow(a: BraidWord, n: int) -> BraidWord:
    if n < 0:
        return braid_pow(invert(a), -n)
    out = identity_braid(a.strands)
    for _ in range(n):
        out = compose(out, a)
    return out


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    """[a, b] = a b a^-1 b^-1."""
    if a.strands != b.strands:
        raise StrandMismatchError("commutator operands must share strand count")
    return compose(compose(a, b), compose(invert(a), invert(b)))


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..k}; images[s-1] is where strand s ends up."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        k = len(self.images)
        if sorted(self.images) != list(range(1, k + 1)):
            raise BraidError(f"not a permutation of 1..{k}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, s: int) -> int:
        return self.images[s - 1]

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(len(self.images)))

    def compose(self, other: "Permutation") -> "Permutation":
        """self followed by other (matching word concatenation order)."""
        if self.size != other.size:
            raise BraidError("permutation size mismatch")
        return Permutation(tuple(other.images[self.images[s - 1] - 1]
                                 for s in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for s, img in enumerate(self.images, start=1):
            inv[img - 1] = s
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for s in range(1, self.size + 1):
            if s in seen:
                continue
            cycle = [s]
            seen.add(s)
            cur = self.images[s - 1]
            while cur != s:
                cycle.append(cur)
                seen.add(cur)
                cur = self.images[cur - 1]
            out.append(tuple(cycle))
        return out

    def is_cycle(self) -> bool:
        return len(self.cycles()) == 1


def permutation(a: BraidWord) -> Permutation:
    """Underlying permutation of a braid word (crossing signs ignored)."""
    pos = list(range(a.strands + 1))  # pos[p] = strand currently at position p
    for letter in a.letters:
        i = abs(letter)
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    images = [0] * a.strands
    for p in range(1, a.strands + 1):
        images[pos[p] - 1] = p
    return Permutation(tuple(images))


def standard_lift(perm: Permutation) -> BraidWord:
    """A positive braid word whose permutation is `perm` (bubble-sort lift)."""
    k = perm.size
    # target arrangement: position p ends up holding strand perm^-1(p)
    target = [perm.inverse()(p) for p in range(1, k + 1)]
    current = list(range(1, k + 1))
    letters: list[int] = []
    for p in range(k):
        idx = current.index(target[p])
        while idx > p:
            current[idx - 1], current[idx] = current[idx], current[idx - 1]
            letters.append(idx)  # sigma_idx swaps positions idx, idx+1
            idx -= 1
    return BraidWord(k, tuple(letters))


@dataclass(frozen=True)
class PureGenSpec:
    """Indices (i, j) of the standard pure braid generator p_{i,j}."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise BraidError(f"need 1 <= i < j, got ({self.i}, {self.j})")


def pure_gen(spec: PureGenSpec, k: int) -> BraidWord:
    """The generator p_{i,j} = (s_{j-1}..s_{i+1}) s_i^2 (s_{i+1}^-1..s_{j-1}^-1).

    It links strands i and j and induces the identity permutation.
    """
    i, j = spec.i, spec.j
    if j > k:
        raise BraidError(f"p_{{{i},{j}}} does not fit in B_{k}")
    prefix = list(range(j - 1, i, -1))
    suffix = [-x for x in range(i + 1, j)]
    return BraidWord(k, tuple(prefix + [i, i] + suffix))


def shift_braid(k: int) -> BraidWord:
    """t_k = sigma_{k-1}^-1 sigma_{k-2}^-1 ... sigma_1^-1; a k-cycle."""
    return BraidWord(k, tuple(-x for x in range(k - 1, 0, -1)))


def conjugate_shift(p: BraidWord, m: int) -> BraidWord:
    """t_k^-m p t_k^m: the pure braid p shifted m strands to the right."""
    if not p.is_pure():
        raise NotPureError("conjugate_shift requires a pure braid")
    t = shift_braid(p.strands)
    return compose(compose(braid_pow(t, -m), p), braid_pow(t, m))


def embed(a: BraidWord, strands: int) -> BraidWord:
    """Re-read a word in a larger braid group (extra trivial strands at right)."""
    if strands < a.strands:
        raise BraidError("cannot embed into a smaller braid group")
    return BraidWord(strands, a.letters)


def braid_connected_sum(p: BraidWord, q: BraidWord) -> BraidWord:
    """Pure braid r in B_{2k} with <r t_2k> = <p t_k> # <q t_k>.

    p sits on strands 1..k; q is conjugate-shifted onto strands k+1..2k.
    """
    if p.strands != q.strands:
        raise StrandMismatchError("connected sum operands must share strand count")
    if not p.is_pure() or not q.is_pure():
        raise NotPureError("connected sum requires pure braids")
    k = p.strands
    return compose(embed(p, 2 * k), conjugate_shift(embed(q, 2 * k), k))


@dataclass(frozen=True)
class ArtinAutomorphism:
    """Automorphism of F_k given by freely reduced images of x_1..x_k."""

    strands: int
    images: tuple[tuple[int, ...], ...]

    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self.images))

    def apply(self, word: Sequence[int]) -> tuple[int, ...]:
        """Image of a free-group word under this automorphism."""
        out: list[int] = []
        for letter in word:
            img = self.images[abs(letter) - 1]
            if letter < 0:
                img = invert_letters(img)
            for x in img:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        return tuple(out)

    def after(self, other: "ArtinAutomorphism") -> "ArtinAutomorphism":
        """Composite sending x to self(other(x)) -- `other` acts first."""
        if self.strands != other.strands:
            raise StrandMismatchError("automorphism strand mismatch")
        return ArtinAutomorphism(
            self.strands, tuple(self.apply(img) for img in other.images)
        )


def identity_automorphism(k: int) -> ArtinAutomorphism:
    return ArtinAutomorphism(k, tuple((i,) for i in range(1, k + 1)))


def _artin_letterwise(k: int, letters: Sequence[int]) -> ArtinAutomorphism:
    imgs: list[tuple[int, ...]] = [(i,) for i in range(1, k + 1)]
    for letter in letters:
        i = abs(letter)
        u, v = imgs[i - 1], imgs[i]
        if letter > 0:
            imgs[i - 1] = free_reduce(u + v + invert_letters(u))
            imgs[i] = u
        else:
            imgs[i - 1] = v
            imgs[i] = free_reduce(invert_letters(v) + u + v)
    return ArtinAutomorphism(k, tuple(imgs))


def _artin_split(k: int, letters: Sequence[int]) -> ArtinAutomorphism:
    # divide and conquer: intermediate image sizes are governed by the
    # complexity of contiguous subwords, not of raw prefixes, which avoids
    # exponential swell on words with heavy long-range cancellation
    if len(letters) <= 32:
        return _artin_letterwise(k, letters)
    mid = len(letters) // 2
    return _artin_split(k, letters[:mid]).after(_artin_split(k, letters[mid:]))


def artin_action(a: BraidWord) -> ArtinAutomorphism:
    """Artin automorphism of F_{strands} induced by the braid word.

    sigma_i sends x_i -> x_i x_{i+1} x_i^-1 and x_{i+1} -> x_i, fixing the
    other generators.  Satisfies artin_action(a*b) = artin_action(a) after
    artin_action(b) under `after`, and is faithful, so it decides braid
    equality.
    """
    return _artin_split(a.strands, a.letters)


def braid_eq(a: BraidWord, b: BraidWord) -> bool:
    """Decide whether two words represent the same element of B_k."""
    if a.strands != b.strands:
        raise StrandMismatchError(
            f"cannot compare words in B_{a.strands} and B_{b.strands}"
        )
    if a.writhe != b.writhe:
        return False
    if permutation(a) != permutation(b):
        return False
    return artin_action(a) == artin_action(b)


def pair_crossings(a: BraidWord) -> dict[tuple[int, int], int]:
    """Signed crossing count between each pair of strands (by start position)."""
    counts: dict[tuple[int, int], int] = {}
    pos = list(range(a.strands + 1))  # pos[p] = strand at position p
    for letter in a.letters:
        i = abs(letter)
        s, t = pos[i], pos[i + 1]
        key = (s, t) if s < t else (t, s)
        counts[key] = counts.get(key, 0) + (1 if letter > 0 else -1)
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    return counts


def parse_braid(text: str) -> BraidWord:
    """Parse the text format "Bk i1 i2 ...", e.g. "B3 1 1 2 -1"."""
    tokens = text.split()
    if not tokens or not tokens[0].startswith("B"):
        raise BraidError(f"expected leading strand token 'Bk', got {text!r}")
    try:
        k = int(tokens[0][1:])
    except ValueError as exc:
        raise BraidError(f"bad strand token {tokens[0]!r}") from exc
    try:
        letters = tuple(int(tok) for tok in tokens[1:])
    except ValueError as exc:
        raise BraidError(f"bad letter in {text!r}") from exc
    return BraidWord(k, letters)


def format_braid(a: BraidWord) -> str:
    return " ".join([f"B{a.strands}"] + [str(l) for l in a.letters])
