"""Braid words in Artin generators, their permutations, and exchange-move structure.

A braid word on n strands is a sequence of signed generator letters: the
integer i > 0 stands for the positive generator on strands (i, i+1), and
i < 0 for its inverse.  Words read left to right, braids are drawn top to
bottom, and the induced permutation maps a top position to the bottom
position of the strand starting there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class WordError(ValueError):
    """Invalid braid word, strand count, or letter index."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands.

    ``letters`` holds nonzero integers; ``k`` means the generator on strands
    (|k|, |k|+1) raised to the power sign(k).  The empty word is the identity.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise WordError(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for pos, k in enumerate(self.letters):
            if k == 0 or abs(k) >= self.strands:
                raise WordError(
                    f"letter {k} at position {pos} out of range for {self.strands} strands"
                )

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return word_str(self)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, stored as the image tuple (1-indexed)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise WordError(f"not a bijection of 1..{n}: {self.images}")

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    @property
    def size(self) -> int:
        return len(self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Composition acting left to right: (self.then(other))(k) = other(self(k))."""
        if other.size != self.size:
            raise WordError("size mismatch in permutation composition")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def is_identity(self) -> bool:
        return all(v == k + 1 for k, v in enumerate(self.images))


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles of a permutation, covering {1..n}.

    When the permutation is a single n-cycle and the normalized writing was
    requested, ``normalized`` holds the cycle written as (x_1, .., x_{n-1}, n),
    i.e. ending on n, with the cycle mapping x_i to x_{i+1} and n to x_1;
    ``one_index`` is the position l with x_l = 1.
    """

    cycles: tuple[tuple[int, ...], ...]
    normalized: tuple[int, ...] | None = None
    one_index: int | None = None

    @property
    def count(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class Admissibility:
    """Result of the exchange-move admissibility test.

    ``degenerate`` flags strand counts n <= 3, where the move is trivial and
    the test returns admissible by convention.
    """

    admissible: bool
    degenerate: bool = False

    def __bool__(self):
        return self.admissible


@dataclass(frozen=True)
class CriterionVerdict:
    """Whether a word meets the non-conjugacy criterion.

    The criterion: the word admits an exchange move and its permutation
    fixes neither position 1 nor position n.  ``reason`` names the first
    failed condition, or is None when the criterion applies.
    """

    applies: bool
    reason: str | None = None

    def __bool__(self):
        return self.applies


@dataclass(frozen=True)
class ExchangeForm:
    """A braid split as alpha * beta with alpha avoiding the last generator
    and beta avoiding the first, the seed of an exchange-move family."""

    strands: int
    alpha: BraidWord
    beta: BraidWord

    def __post_init__(self):
        n = self.strands
        if self.alpha.strands != n or self.beta.strands != n:
            raise WordError("alpha/beta strand counts must match the form")
        if any(abs(k) == n - 1 for k in self.alpha.letters):
            raise WordError(f"alpha may not use generator {n - 1}")
        if any(abs(k) == 1 for k in self.beta.letters):
            raise WordError("beta may not use generator 1")

    def word(self) -> BraidWord:
        return compose(self.alpha, self.beta)

    def mirrored(self) -> "ExchangeForm":
        return ExchangeForm(self.strands, mirror(self.alpha), mirror(self.beta))


# ---------------------------------------------------------------------------
# elementary word operations


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenate two words on the same strand count (group multiplication)."""
    if a.strands != b.strands:
        raise WordError(f"strand counts differ: {a.strands} vs {b.strands}")
    return BraidWord(a.strands, a.letters + b.letters)


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-k for k in reversed(w.letters)))


def mirror(w: BraidWord) -> BraidWord:
    """Interchange every generator with its inverse (sign flip only)."""
    return BraidWord(w.strands, tuple(-k for k in w.letters))


def reverse_word(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(reversed(w.letters)))


def cyclic_rotate(w: BraidWord, k: int) -> BraidWord:
    """Move the first k letters to the end (conjugation by the prefix)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return BraidWord(w.strands, w.letters[k:] + w.letters[:k])


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for k in w.letters:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return BraidWord(w.strands, tuple(out))


def cyclic_free_reduce(w: BraidWord) -> BraidWord:
    """Free reduction that also cancels across the wrap-around.

    The result is conjugate to the input, so every conjugacy invariant
    (closure link, axis link) is unchanged.
    """
    w = free_reduce(w)
    while len(w.letters) >= 2 and w.letters[0] == -w.letters[-1]:
        w = free_reduce(BraidWord(w.strands, w.letters[1:-1]))
    return w


def concat_power(w: BraidWord, m: int) -> BraidWord:
    if m < 0:
        return concat_power(inverse(w), -m)
    return BraidWord(w.strands, w.letters * m)


def square(w: BraidWord) -> BraidWord:
    return compose(w, w)


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: append the new last generator on n+1 strands."""
    if sign not in (1, -1):
        raise WordError("stabilization sign must be +1 or -1")
    return BraidWord(w.strands + 1, w.letters + (sign * w.strands,))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if k > 0 else -1 for k in w.letters)


# ---------------------------------------------------------------------------
# permutations and cycles


def permutation_of(w: BraidWord) -> Permutation:
    """Image of the word under the homomorphism sending each generator to the
    transposition of its two strand positions."""
    images = list(range(1, w.strands + 1))
    # images[pos] tracks where the strand starting at top position pos+1 is now
    pos_of = list(range(w.strands))  # pos_of[j] = current position of strand j
    at = list(range(w.strands))      # at[p] = strand currently at position p
    for k in w.letters:
        i = abs(k) - 1
        s, t = at[i], at[i + 1]
        at[i], at[i + 1] = t, s
        pos_of[s], pos_of[t] = i + 1, i
    for j in range(w.strands):
        images[j] = pos_of[j] + 1
    return Permutation(tuple(images))


def cycle_decomposition(p: Permutation, normalized: bool = False) -> CycleDecomposition:
    """Disjoint cycles, each written starting from its smallest element.

    With ``normalized=True`` the permutation must be a single n-cycle; the
    cycle is then rewritten to end on n and the position of the entry 1 is
    reported.
    """
    n = p.size
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        k = p(start)
        while k != start:
            cyc.append(k)
            seen[k] = True
            k = p(k)
        cycles.append(tuple(cyc))
    result = CycleDecomposition(tuple(cycles))
    if not normalized:
        return result
    if len(cycles) != 1 or len(cycles[0]) != n:
        raise WordError("normalized writing requires a single n-cycle")
    # rotate so the cycle ends on n: successive images starting after n
    writing = []
    k = p(n)
    while k != n:
        writing.append(k)
        k = p(k)
    writing.append(n)
    one_index = writing.index(1) + 1
    return CycleDecomposition(tuple(cycles), tuple(writing), one_index)


def strand_linking(w: BraidWord, a_set: Iterable[int], b_set: Iterable[int]) -> int:
    """Linking number of the closure sublinks over two disjoint cycle sets.

    Each set must be a union of cycles of the braid permutation; the result
    is half the signed count of crossings between a strand of one set and a
    strand of the other.
    """
    a, b = frozenset(a_set), frozenset(b_set)
    if a & b:
        raise WordError("strand sets must be disjoint")
    cyc = {frozenset(c) for c in cycle_decomposition(permutation_of(w)).cycles}
    for s in (a, b):
        rem = set(s)
        for c in cyc:
            if c <= rem:
                rem -= c
        if rem:
            raise WordError(f"{sorted(s)} is not a union of permutation cycles")
    total = 0
    at = list(range(1, w.strands + 1))
    for k in w.letters:
        i = abs(k) - 1
        s, t = at[i], at[i + 1]
        if (s in a and t in b) or (s in b and t in a):
            total += 1 if k > 0 else -1
        at[i], at[i + 1] = t, s
    if total % 2:
        raise WordError("odd inter-set crossing count; sets do not close up")
    return total // 2


# ---------------------------------------------------------------------------
# twists, the exchange band, and families


def full_twist_word(n: int, i: int, j: int, count: int = 1) -> BraidWord:
    """Full twist on strands i..j: the cycle word (sigma_i .. sigma_{j-1})
    raised to the (j-i+1)-st power, repeated ``count`` times (negative count
    gives the inverse word)."""
    if not (1 <= i < j <= n):
        raise WordError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    base = tuple(range(i, j)) * (j - i + 1)
    word = BraidWord(n, base)
    return concat_power(word, count)


def kappa_word(n: int) -> BraidWord:
    """The pure band braid (sigma_1 .. sigma_{n-2})(sigma_{n-2} .. sigma_1)
    conjugating one side of an exchange move."""
    if n < 3:
        raise WordError(f"band word needs n >= 3, got {n}")
    up = tuple(range(1, n - 1))
    return BraidWord(n, up + up[::-1])


def _restricted_cyclic_pattern(w: BraidWord) -> list[bool]:
    """Occurrences of the two extreme generator indices, in word order.

    True marks index 1, False marks index n-1.
    """
    n = w.strands
    return [abs(k) == 1 for k in w.letters if abs(k) in (1, n - 1)]


def admits_exchange(w: BraidWord) -> Admissibility:
    """Test whether some cyclic rotation splits as alpha*beta (alpha without
    the last generator, beta without the first).

    Equivalent formulation: among the letters restricted to the two extreme
    generator indices, each index forms at most one contiguous cyclic block.
    Strand counts n <= 3 are degenerate and count as admissible.
    """
    n = w.strands
    if n <= 3:
        return Admissibility(True, degenerate=True)
    pat = _restricted_cyclic_pattern(w)
    if not pat:
        return Admissibility(True)
    boundaries = sum(1 for i in range(len(pat)) if pat[i] != pat[(i + 1) % len(pat)])
    return Admissibility(boundaries <= 2)


def exchange_split(w: BraidWord) -> ExchangeForm | None:
    """Split a cyclic rotation of w as alpha*beta, or None if not admissible.

    If one extreme index never occurs, the part allowed to contain the other
    extreme absorbs the whole word.
    """
    n = w.strands
    if n <= 3:
        # no two distinct extreme indices to separate; only the trivial splits
        if all(abs(k) <= n - 2 for k in w.letters):
            return ExchangeForm(n, w, BraidWord(n))
        if all(abs(k) >= 2 for k in w.letters):
            return ExchangeForm(n, BraidWord(n), w)
        return None
    if not admits_exchange(w):
        return None
    has_one = any(abs(k) == 1 for k in w.letters)
    has_top = any(abs(k) == n - 1 for k in w.letters)
    if not has_top:
        return ExchangeForm(n, w, BraidWord(n))
    if not has_one:
        return ExchangeForm(n, BraidWord(n), w)
    L = len(w.letters)
    # rotate so the word starts right after the last top-index letter of the
    # (unique) cyclic top block; the index-1 block then precedes the top block
    ext = [i for i, k in enumerate(w.letters) if abs(k) in (1, n - 1)]
    start = None
    for pos_i, i in enumerate(ext):
        j = ext[(pos_i + 1) % len(ext)]
        if abs(w.letters[i]) == n - 1 and abs(w.letters[j]) == 1:
            start = (i + 1) % L
            break
    if start is None:
        return None
    rot = cyclic_rotate(w, start)
    first_top = next(i for i, k in enumerate(rot.letters) if abs(k) == n - 1)
    alpha = BraidWord(n, rot.letters[:first_top])
    beta = BraidWord(n, rot.letters[first_top:])
    return ExchangeForm(n, alpha, beta)


def family_member(form: ExchangeForm, m: int) -> BraidWord:
    """The m-th exchange-move iterate alpha * kappa^m * beta * kappa^-m."""
    if m == 0:
        return form.word()
    kap = concat_power(kappa_word(form.strands), m)
    return compose(compose(form.alpha, kap), compose(form.beta, inverse(kap)))


def nonconjugacy_criterion(w: BraidWord) -> CriterionVerdict:
    """Admissible, and the permutation moves both boundary positions.

    When this holds, iterating the exchange move produces infinitely many
    pairwise non-conjugate braids with the same closure.
    """
    n = w.strands
    if not admits_exchange(w):
        return CriterionVerdict(False, "no exchange-move splitting")
    p = permutation_of(w)
    if p(1) == 1:
        return CriterionVerdict(False, "permutation fixes position 1")
    if p(n) == n:
        return CriterionVerdict(False, f"permutation fixes position {n}")
    return CriterionVerdict(True)


# ---------------------------------------------------------------------------
# canonical families


def canonical_odd_knot_braid(n: int) -> ExchangeForm:
    """The odd-strand knot seed with alternating negative generators.

    alpha is the single letter 1^-1 and beta the remaining letters of
    sigma_1^-1 sigma_3^-1 .. sigma_{n-2}^-1 * sigma_2^-1 sigma_4^-1 .. sigma_{n-1}^-1.
    Its permutation is an n-cycle whose normalized writing has the entry 1
    exactly in the middle position, the configuration where the axis-link
    degree-3 coefficient alone cannot separate the family.
    """
    if n < 5 or n % 2 == 0:
        raise WordError(f"need odd n >= 5, got {n}")
    alpha = BraidWord(n, (-1,))
    odds = tuple(-i for i in range(3, n - 1, 2))
    evens = tuple(-i for i in range(2, n, 2))
    beta = BraidWord(n, odds + evens)
    return ExchangeForm(n, alpha, beta)


def canonical_joint_cycle_braid(n: int) -> ExchangeForm:
    """Seed whose permutation joins positions 1, n, 2 in one 3-cycle and
    cycles the middle strands separately.

    alpha = sigma_1; beta = w' * band, where w' = sigma_3 .. sigma_{n-2}
    (empty for n = 4) realizes the middle cycle and the band word
    sigma_2 .. sigma_{n-2} sigma_{n-1} sigma_{n-2}^-1 .. sigma_2^-1 swaps
    positions 2 and n.  All strand-linking numbers among strands 1, 2, n and
    the middle cycle vanish for this construction.
    """
    if n < 4:
        raise WordError(f"need n >= 4, got {n}")
    alpha = BraidWord(n, (1,))
    wprime = tuple(range(3, n - 1))
    band = tuple(range(2, n)) + tuple(-i for i in range(n - 2, 1, -1))
    beta = BraidWord(n, wprime + band)
    return ExchangeForm(n, alpha, beta)


def canonical_split_cycle_braid(n1: int, n2: int) -> ExchangeForm:
    """Seed with permutation cycles exactly (1..n1) and (n1+1..n1+n2):
    alpha = sigma_1 .. sigma_{n1-1}, beta = sigma_{n1+1} .. sigma_{n-1}."""
    if n1 < 2 or n2 < 2:
        raise WordError("both cycle lengths must be >= 2")
    n = n1 + n2
    if n < 4:
        raise WordError("need at least 4 strands")
    alpha = BraidWord(n, tuple(range(1, n1)))
    beta = BraidWord(n, tuple(range(n1 + 1, n)))
    return ExchangeForm(n, alpha, beta)


# ---------------------------------------------------------------------------
# text format


def parse_word(text: str | Sequence[int | str], strands: int) -> BraidWord:
    """Parse the whitespace-separated signed-integer word format.

    An integer i > 0 means the i-th generator, i < 0 its inverse.  The strand
    count is always given alongside, never inferred.
    """
    tokens = text.split() if isinstance(text, str) else list(text)
    letters = []
    for pos, tok in enumerate(tokens):
        try:
            k = int(tok)
        except (TypeError, ValueError):
            raise WordError(f"token {tok!r} at position {pos} is not an integer")
        if k == 0 or abs(k) >= strands:
            raise WordError(
                f"letter {k} at position {pos} out of range for {strands} strands"
            )
        letters.append(k)
    return BraidWord(strands, tuple(letters))


def word_str(w: BraidWord) -> str:
    return " ".join(str(k) for k in w.letters)
