"""Word-level invariants: induced maps on X^j, rotations, spectra, periodic lines."""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    EmptyWord,
    LengthMismatch,
    NoFixedState,
    NonInvertibleState,
    NotAPermutation,
    NotSynchronizing,
)
from .transducer import WORD_CAP, Transducer, inverse, run_words, sync_analysis, sync_level, word_array


def word_str(w) -> str:
    return "".join(str(x) for x in w)


def parse_word(s: str) -> tuple:
    return tuple(int(c) for c in s.strip())


def encode(words: np.ndarray, n: int) -> np.ndarray:
    code = np.zeros(words.shape[0], dtype=np.int64)
    for i in range(words.shape[1]):
        code = code * n + words[:, i]
    return code


def decode(code: int, n: int, j: int) -> tuple:
    out = []
    for _ in range(j):
        out.append(code % n)
        code //= n
    return tuple(reversed(out))


@dataclass(frozen=True, eq=False)
class WordMap:
    """A map X_n^j -> X_n^j stored as an array over word codes (lex order)."""
    n: int
    j: int
    table: np.ndarray

    @property
    def is_permutation(self) -> bool:
        return len(np.unique(self.table)) == len(self.table)

    def __call__(self, word):
        c = 0
        for x in word:
            c = c * self.n + x
        return decode(int(self.table[c]), self.n, self.j)

    def as_dict(self) -> dict:
        return {decode(i, self.n, self.j): decode(int(v), self.n, self.j) for i, v in enumerate(self.table)}

    def __eq__(self, other):
        return (isinstance(other, WordMap) and (self.n, self.j) == (other.n, other.j)
                and np.array_equal(self.table, other.table))

    def then(self, other: "WordMap") -> "WordMap":
        """Apply self first, then other."""
        return WordMap(self.n, self.j, other.table[self.table])

    def cycles(self):
        if not self.is_permutation:
            raise NotAPermutation(self.j)
        seen = np.zeros(len(self.table), dtype=bool)
        out = []
        for start in range(len(self.table)):
            if seen[start]:
                continue
            cyc = []
            c = start
            while not seen[c]:
                seen[c] = True
                cyc.append(decode(c, self.n, self.j))
                c = int(self.table[c])
            out.append(cyc)
        return out

    def format_cycles(self) -> str:
        return "".join("(" + " ".join(word_str(w) for w in cyc) + ")" for cyc in self.cycles())


def parse_cycles(text: str) -> dict:
    """Parse disjoint-cycle notation with digit-string words into a mapping."""
    out = {}
    for body in re.findall(r"\(([^)]*)\)", text):
        ws = [parse_word(t) for t in body.split()]
        for a, b in zip(ws, ws[1:] + ws[:1]):
            out[a] = b
    return out


def _fixed_states(A: Transducer, words: np.ndarray, k: int) -> np.ndarray:
    j = words.shape[1]
    reps = max(1, -(-k // j)) if j else 1
    q = np.zeros(words.shape[0], dtype=np.int64)
    for _ in range(reps):
        q, _ = run_words(A, words, q)
    back, _ = run_words(A, words, q)
    bad = np.flatnonzero(back != q)
    if len(bad):
        raise NoFixedState(tuple(int(x) for x in words[bad[0]]))
    return q


def level_map(A: Transducer, j: int, cap: int = WORD_CAP) -> WordMap:
    """Gamma -> output of Gamma from the state that Gamma fixes."""
    if j < 1:
        raise ValueError("j must be at least 1")
    if A.n ** j > cap:
        raise BudgetExceeded(f"{A.n}^{j} words", cap)
    k = sync_level(A)
    if k is None:
        sync_analysis(A)
    words = word_array(A.n, j)
    q = _fixed_states(A, words, k)
    _, out = run_words(A, words, q)
    return WordMap(A.n, j, encode(out, A.n))


def inverse_level_map(H: Transducer, j: int, cap: int = WORD_CAP) -> WordMap:
    """Gamma -> the unique preimage of Gamma under the state fixed by Gamma."""
    if j == 0:
        return WordMap(H.n, 0, np.zeros(1, dtype=np.int64))
    if H.n ** j > cap:
        raise BudgetExceeded(f"{H.n}^{j} words", cap)
    for q in range(H.size):
        if not H.is_local_permutation(q):
            raise NonInvertibleState(H.names[q])
    k = sync_level(H)
    if k is None:
        sync_analysis(H)
    words = word_array(H.n, j)
    q = _fixed_states(H, words, k)
    _, pre = run_words(inverse(H), words, q)
    return WordMap(H.n, j, encode(pre, H.n))


def is_prime_word(w) -> bool:
    w = tuple(w)
    if not w:
        raise EmptyWord("prime test needs a nonempty word")
    k = len(w)
    return all(w != w[:d] * (k // d) for d in range(1, k) if k % d == 0)


def primitive_root(w) -> tuple:
    w = tuple(w)
    for d in range(1, len(w) + 1):
        if len(w) % d == 0 and w == w[:d] * (len(w) // d):
            return w[:d]
    return w


def rotation(w, i: int) -> tuple:
    w = tuple(w)
    k = len(w)
    if k == 0:
        return w
    i %= k
    return w[k - i:] + w[:k - i]


def rotation_index(w, v):
    w, v = tuple(w), tuple(v)
    if len(w) != len(v):
        raise LengthMismatch(f"{len(w)} != {len(v)}")
    for i in range(max(1, len(w))):
        if rotation(w, i) == v:
            return i
    return None


@dataclass(frozen=True, order=True)
class CycleTriple:
    L: int
    s: int
    r: int

    def __iter__(self):
        return iter((self.L, self.s, self.r))


@dataclass(frozen=True)
class Spectrum:
    k: int
    entries: tuple  # sorted ((k, d, (L, s, r)), ...)

    def __str__(self):
        return "{" + ", ".join(f"({k},{d},({L},{s},{r}))" for k, d, (L, s, r) in self.entries) + "}"


def spectrum(A: Transducer, k: int) -> Spectrum:
    m = level_map(A, k)
    if not m.is_permutation:
        raise NotAPermutation(k)
    counts = Counter()
    for cyc in m.cycles():
        primes = [is_prime_word(w) for w in cyc]
        assert all(primes) or not any(primes), "cycle mixes prime and non-prime words"
        if not primes[0]:
            continue
        L = len(cyc)
        g = min(cyc)
        cur, s, r = g, 0, None
        while r is None:
            cur = m(cur)
            s += 1
            r = rotation_index(g, cur)
        o = k // math.gcd(r, k) if r else 1
        assert L == o * s, (L, o, s)
        counts[CycleTriple(L, s, r)] += 1
    entries = tuple(sorted((k, d, tuple(t)) for t, d in counts.items()))
    return Spectrum(k, entries)


# ---------------------------------------------------------------- periodic lines

@dataclass(frozen=True)
class PeriodicBiInfiniteWord:
    """...LLL C RRR... with the center starting at position `start`.

    Positions below `start` repeat `left` (ending at start-1); positions from
    start+len(center) on repeat `right`. Always held in canonical form.
    """
    left: tuple
    center: tuple
    right: tuple
    start: int = 0

    @classmethod
    def make(cls, left, center, right, start=0):
        L, C, R, s = _canonical(tuple(left), tuple(center), tuple(right), start)
        return cls(L, C, R, s)

    def letter(self, i: int) -> int:
        s, C = self.start, self.center
        if i < s:
            return self.left[(i - s) % len(self.left)]
        if i < s + len(C):
            return C[i - s]
        return self.right[(i - s - len(C)) % len(self.right)]

    def segment(self, a: int, b: int) -> tuple:
        return tuple(self.letter(i) for i in range(a, b))

    @property
    def is_periodic(self) -> bool:
        return not self.center and self.left == self.right

    def __str__(self):
        lo = min(self.start, 0)
        hi = max(self.start + len(self.center), 1)
        body = "".join(("." if i == 0 else "") + str(self.letter(i)) for i in range(lo, hi))
        return f"...({word_str(self.left)}){body}({word_str(self.right)})..."


def _canonical(L, C, R, s):
    if not L or not R:
        raise EmptyWord("periods must be nonempty")
    L, R = primitive_root(L), primitive_root(R)
    while C and C[0] == L[0]:
        L, C, s = L[1:] + L[:1], C[1:], s + 1
    while C and C[-1] == R[-1]:
        R, C = R[-1:] + R[:-1], C[:-1]
    if not C:
        if L == R:
            p = len(R)
            off = (-s) % p
            R = R[off:] + R[:off]
            return R, (), R, 0
        for _ in range(len(L) * len(R) + 1):
            if L[-1] != R[-1]:
                break
            L, R, s = L[-1:] + L[:-1], R[-1:] + R[:-1], s - 1
    return L, C, R, s


def apply_to_periodic(A: Transducer, w: PeriodicBiInfiniteWord, level: int | None = None) -> PeriodicBiInfiniteWord:
    """Image of a periodic line under the sliding action of a synchronizing machine."""
    k = sync_level(A) if level is None else level
    if k is None:
        raise NotSynchronizing()
    s, nl, nc, nr = w.start, len(w.left), len(w.center), len(w.right)
    a = s - nl
    seq = w.segment(a - k, s + nc + k + nr)
    _, out = A.read(seq, 0)
    out = out[k:]  # positions a .. s+nc+k+nr-1
    left = out[:nl]
    center = out[nl:nl + nc + k]
    right = out[nl + nc + k:]
    return PeriodicBiInfiniteWord.make(left, center, right, s)


def orbit(A: Transducer, w: PeriodicBiInfiniteWord, T: int):
    k = sync_level(A)
    out = [w]
    for _ in range(T - 1):
        out.append(apply_to_periodic(A, out[-1], k))
    return out


def orbit_is_infinite_sample(A: Transducer, w: PeriodicBiInfiniteWord, T: int) -> bool:
    seq = orbit(A, w, T)
    return len(set(seq)) == len(seq)


def compare_spectra(A: Transducer, B: Transducer, k: int):
    """Different spectra rule out conjugacy; equal spectra settle nothing."""
    sa, sb = spectrum(A, k), spectrum(B, k)
    return sa, sb, ("not conjugate" if sa != sb else "inconclusive")
