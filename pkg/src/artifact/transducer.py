"""Finite synchronous transducers: the core algebra.

A transducer over the alphabet {0..n-1} is stored as two integer tables of
shape (states, n): `delta[q, x]` is the target state and `rho[q, x]` the output
letter. Words are tuples of ints. Every operation returns a new object.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from . import kernels
from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    DuplicateState,
    LetterOutOfRange,
    MissingTransition,
    NonInvertibleState,
    NotSynchronizing,
    ParseError,
)

PAIR_CAP = 2_000_000
WORD_CAP = 3 ** 13


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Transducer:
    n: int
    names: tuple
    delta: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "delta", _frozen(self.delta).reshape(len(self.names), self.n))
        object.__setattr__(self, "rho", _frozen(self.rho).reshape(len(self.names), self.n))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        return self.names.index(name)

    def read(self, word, q=0):
        """Return (end state, output word) after reading `word` from state q."""
        q = self.index(q)
        out = []
        for x in word:
            out.append(int(self.rho[q, x]))
            q = int(self.delta[q, x])
        return q, tuple(out)

    def target(self, word, q=0) -> int:
        q = self.index(q)
        for x in word:
            q = int(self.delta[q, x])
        return q

    def output(self, word, q=0) -> tuple:
        return self.read(word, q)[1]

    def is_local_permutation(self, q) -> bool:
        return len(set(self.rho[self.index(q)].tolist())) == self.n

    def is_invertible(self) -> bool:
        return all(self.is_local_permutation(q) for q in range(self.size))

    def restrict(self, keep):
        """Sub-transducer on the state indices `keep` (must be closed under delta)."""
        keep = sorted(int(k) for k in keep)
        pos = {k: i for i, k in enumerate(keep)}
        delta = [[pos[int(t)] for t in self.delta[k]] for k in keep]
        return Transducer(self.n, [self.names[k] for k in keep], delta, self.rho[keep])

    def rename(self, names):
        return Transducer(self.n, names, self.delta, self.rho)

    def __eq__(self, other):
        return (
            isinstance(other, Transducer)
            and self.n == other.n
            and self.names == other.names
            and np.array_equal(self.delta, other.delta)
            and np.array_equal(self.rho, other.rho)
        )

    def __hash__(self):
        return hash((self.n, self.names, self.delta.tobytes(), self.rho.tobytes()))

    def __repr__(self):
        return f"Transducer(n={self.n}, states={list(self.names)})"

    def to_trn(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class InitialTransducer:
    base: Transducer
    start: int

    def __post_init__(self):
        if not 0 <= self.start < self.base.size:
            raise ValueError("start state out of range")


def identity(n: int) -> Transducer:
    return Transducer(n, ["e"], [[0] * n], [list(range(n))])


# ---------------------------------------------------------------- TRN I/O

_NAME = re.compile(r"^[^\s:|#]+$")
_TRIPLE = re.compile(r"^(\d+)\|(\d+)->(\S+)$")


def validate(raw) -> Transducer:
    """Build a checked Transducer from a dict description.

    raw = {"alphabet": n, "states": [names], "rows": {name: [(i, o, target), ...]}}
    """
    n = int(raw["alphabet"])
    if n < 1:
        raise ParseError("alphabet size must be positive")
    names = list(raw["states"])
    seen = set()
    for s in names:
        if s in seen:
            raise DuplicateState(s)
        if not _NAME.match(str(s)) or "->" in str(s):
            raise ParseError(f"bad state name {s!r}")
        seen.add(s)
    pos = {s: i for i, s in enumerate(names)}
    delta = np.full((len(names), n), -1, dtype=np.int64)
    rho = np.full((len(names), n), -1, dtype=np.int64)
    for s, triples in raw["rows"].items():
        if s not in pos:
            raise ParseError(f"row for undeclared state {s!r}")
        q = pos[s]
        for i, o, t in triples:
            if not 0 <= i < n:
                raise LetterOutOfRange(i, n)
            if not 0 <= o < n:
                raise LetterOutOfRange(o, n)
            if t not in pos:
                raise ParseError(f"unknown target state {t!r}")
            if delta[q, i] != -1:
                raise ParseError(f"state {s!r} has two transitions on {i}")
            delta[q, i] = pos[t]
            rho[q, i] = o
    for q, s in enumerate(names):
        for i in range(n):
            if delta[q, i] == -1:
                raise MissingTransition(s, i)
    return Transducer(n, names, delta, rho)


def parse_trn(text: str) -> Transducer:
    lines = []
    for line in text.split("\n"):
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise ParseError("expected 'alphabet:' and 'states:' header lines")
    head, _, val = lines[0].partition(":")
    if head.strip() != "alphabet" or not val.strip().isdigit():
        raise ParseError("first line must be 'alphabet: <n>'")
    head, _, val = lines[1].partition(":")
    if head.strip() != "states":
        raise ParseError("second line must be 'states: ...'")
    names = val.split()
    rows = {}
    for line in lines[2:]:
        name, sep, rest = line.partition(":")
        name = name.strip()
        if not sep:
            raise ParseError(f"malformed line {line!r}")
        if name in rows:
            raise DuplicateState(name)
        triples = []
        for tok in rest.split():
            m = _TRIPLE.match(tok)
            if not m:
                raise ParseError(f"malformed transition {tok!r}")
            triples.append((int(m.group(1)), int(m.group(2)), m.group(3)))
        rows[name] = triples
    return validate({"alphabet": int(lines[0].partition(":")[2]), "states": names, "rows": rows})


def serialize(A: Transducer) -> str:
    out = [f"alphabet: {A.n}", "states: " + " ".join(A.names)]
    for q, s in enumerate(A.names):
        cells = [f"{x}|{A.rho[q, x]}->{A.names[A.delta[q, x]]}" for x in range(A.n)]
        out.append(f"{s}: " + " ".join(cells))
    return "\n".join(out) + "\n"


def load(path) -> Transducer:
    with open(path, encoding="ascii") as fh:
        return parse_trn(fh.read())


def save(A: Transducer, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize(A))


# ---------------------------------------------------------------- algebra

def product(A: Transducer, B: Transducer) -> Transducer:
    """A*B: read with A, feed A's output into B. State (p, q) has index p*|B|+q."""
    if A.n != B.n:
        raise AlphabetMismatch(A.n, B.n)
    sa, sb = A.size, B.size
    mid = A.rho  # (sa, n)
    dB = B.delta[:, mid]  # (sb, sa, n)
    rB = B.rho[:, mid]
    delta = A.delta[:, None, :] * sb + dB.transpose(1, 0, 2)
    rho = rB.transpose(1, 0, 2)
    names = [f"{a}.{b}" for a in A.names for b in B.names]
    return Transducer(A.n, names, delta.reshape(sa * sb, A.n), rho.reshape(sa * sb, A.n))


def power_raw(A: Transducer, m: int) -> Transducer:
    P = A
    for _ in range(m - 1):
        P = product(P, A)
    return P


def _toggle(name: str) -> str:
    return name[:-1] if name.endswith("'") else name + "'"


def inverse(A: Transducer) -> Transducer:
    for q in range(A.size):
        if not A.is_local_permutation(q):
            raise NonInvertibleState(A.names[q])
    rho = np.argsort(A.rho, axis=1)  # rho_inv[q, y] = x with rho[q, x] = y
    delta = np.take_along_axis(A.delta, rho, axis=1)
    return Transducer(A.n, [_toggle(s) for s in A.names], delta, rho)


def minimize(A: Transducer):
    """Merge omega-equivalent states. Returns (minimal transducer, class index per state)."""
    init = kernels.canonical_labels(A.rho)
    labels = np.asarray(kernels.refine(A.delta, init), dtype=np.int64)
    k = int(labels.max()) + 1 if A.size else 0
    reps = np.zeros(k, dtype=np.int64)
    reps[labels[::-1]] = np.arange(A.size)[::-1]  # smallest index per class
    delta = labels[A.delta[reps]]
    M = Transducer(A.n, [A.names[r] for r in reps], delta, A.rho[reps])
    return M, labels


# ---------------------------------------------------------------- synchronization

@dataclass(frozen=True)
class SyncInfo:
    transducer: Transducer
    level: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def forcing(self, word) -> int:
        """Forced state (index) of a word of length >= level."""
        if len(word) < self.level:
            raise ValueError(f"word shorter than sync level {self.level}")
        return self.transducer.target(word, 0)

    def forcing_name(self, word) -> str:
        return self.transducer.names[self.forcing(word)]

    @property
    def forcing_map(self) -> dict:
        if "map" not in self._cache:
            A, k = self.transducer, self.level
            if A.n ** k > WORD_CAP:
                raise BudgetExceeded("forcing map words", WORD_CAP)
            words = list(itertools.product(range(A.n), repeat=k))
            targets = forced_states(A, k)
            self._cache["map"] = {w: int(t) for w, t in zip(words, targets)}
        return self._cache["map"]

    @property
    def forcing_sets(self) -> dict:
        sets = {s: [] for s in self.transducer.names}
        for w, q in self.forcing_map.items():
            sets[self.transducer.names[q]].append(w)
        return sets


def all_words(n: int, k: int):
    return list(itertools.product(range(n), repeat=k))


def word_array(n: int, k: int) -> np.ndarray:
    """All words of length k as rows, most significant letter first (lex order)."""
    if n ** k > WORD_CAP:
        raise BudgetExceeded(f"{n}^{k} words", WORD_CAP)
    idx = np.arange(n ** k)
    cols = [(idx // n ** (k - 1 - i)) % n for i in range(k)]
    return np.stack(cols, axis=1) if k else np.zeros((1, 0), dtype=np.int64)


def run_words(A: Transducer, words: np.ndarray, start):
    """Vectorized read of every row of `words` from the matching entry of `start`."""
    q = np.broadcast_to(np.asarray(start, dtype=np.int64), (words.shape[0],)).copy()
    out = np.empty_like(words)
    for i in range(words.shape[1]):
        x = words[:, i]
        out[:, i] = A.rho[q, x]
        q = A.delta[q, x]
    return q, out


def forced_states(A: Transducer, k: int) -> np.ndarray:
    q, _ = run_words(A, word_array(A.n, k), 0)
    return q


def _subset_sync_level(A: Transducer, cap: int):
    """Sync level by breadth-first search over image sets (for machines too big for pairs)."""
    full = np.ones(A.size, dtype=bool)
    frontier = {full.tobytes(): full}
    history = set()
    d = 0
    while True:
        if all(int(v.sum()) == 1 for v in frontier.values()):
            return d
        key = frozenset(frontier)
        if key in history:
            return -1
        history.add(key)
        nxt = {}
        for v in frontier.values():
            if v.sum() == 1:
                continue
            for x in range(A.n):
                img = np.zeros(A.size, dtype=bool)
                img[A.delta[v, x]] = True
                nxt.setdefault(img.tobytes(), img)
        if sum(len(k) for k in nxt) > cap * 8:
            raise BudgetExceeded("image sets in sync search", cap)
        frontier = nxt
        d += 1


def _pair_evidence(A: Transducer):
    """For a non-synchronizing machine, a pair of states and a word returning to it."""
    S = A.size
    alive = ~np.eye(S, dtype=bool)
    while True:
        new = np.zeros_like(alive)
        for x in range(A.n):
            col = A.delta[:, x]
            new |= alive[np.ix_(col, col)]
        if np.array_equal(new, alive):
            break
        alive = new
    p, q = map(int, np.argwhere(alive)[0])
    seen = {}
    path = []
    while (p, q) not in seen:
        seen[(p, q)] = len(path)
        for x in range(A.n):
            a, b = int(A.delta[p, x]), int(A.delta[q, x])
            if alive[a, b]:
                path.append(((p, q), x))
                p, q = a, b
                break
    i = seen[(p, q)]
    word = tuple(x for _, x in path[i:])
    return (A.names[p], A.names[q]), word


def sync_level(A: Transducer, cap: int = PAIR_CAP):
    """Minimal synchronizing level, or None when A is not synchronizing."""
    if A.size * (A.size - 1) // 2 <= cap:
        k = kernels.pair_sync_level(A.delta)
    else:
        k = _subset_sync_level(A, cap)
    return None if k < 0 else int(k)


def sync_analysis(A: Transducer, cap: int = PAIR_CAP) -> SyncInfo:
    k = sync_level(A, cap)
    if k is None:
        if A.size * A.size <= cap:
            pair, word = _pair_evidence(A)
            raise NotSynchronizing(pair, word)
        raise NotSynchronizing()
    return SyncInfo(A, k)


def is_synchronizing(A: Transducer, cap: int = PAIR_CAP) -> bool:
    return sync_level(A, cap) is not None


def _core_indices(A: Transducer):
    chain = kernels.image_chain(A.delta, np.arange(A.size))
    return chain


def core(A: Transducer, check: bool = True) -> Transducer:
    if check and not is_synchronizing(A):
        sync_analysis(A)  # raises with evidence
    chain = _core_indices(A)
    return A.restrict(np.flatnonzero(chain[-1]))


def core_distance(A: Transducer) -> int:
    if not is_synchronizing(A):
        sync_analysis(A)
    return len(_core_indices(A)) - 1


def min_core(A: Transducer, check: bool = True) -> Transducer:
    return minimize(core(A, check))[0]


def min_core_power(A: Transducer, m: int, cap: int | None = None) -> Transducer:
    """minimize(core(A^m)) built one factor at a time."""
    if m < 1:
        raise ValueError("m must be positive")
    if not is_synchronizing(A):
        sync_analysis(A)
    B = min_core(A, check=False)
    for _ in range(m - 1):
        if cap is not None and B.size * A.size > cap:
            raise BudgetExceeded("raw product states", cap, partial=B)
        B = min_core(product(B, A), check=False)
    return B


def canonical_key(A: Transducer, start: int = 0):
    """Relabel states in BFS order from `start`; tables of equal keys are identical."""
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for x in range(A.n):
            t = int(A.delta[q, x])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    rows = []
    for q in sorted(order, key=order.get):
        rows.append(tuple(order[int(t)] for t in A.delta[q]) + tuple(int(o) for o in A.rho[q]))
    return (A.n, len(order), tuple(rows))


def core_key(A: Transducer, level: int | None = None):
    """Canonical key of a minimal core machine, anchored at the state forced by 0^k."""
    k = sync_level(A) if level is None else level
    return canonical_key(A, A.target((0,) * max(k, 1), 0))


# ---------------------------------------------------------------- equivalence

@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    state_bijection: dict | None = None
    separating_word: tuple | None = None
    prefix_length: int = 0
    unmatched: str | None = None

    def __bool__(self):
        return self.equivalent


def _distinguish(A, B, p, q):
    """Shortest word on which A from p and B from q give different outputs."""
    prev = {(p, q): None}
    queue = deque([(p, q)])
    while queue:
        a, b = queue.popleft()
        for x in range(A.n):
            if A.rho[a, x] != B.rho[b, x]:
                word = [x]
                cur = (a, b)
                while prev[cur] is not None:
                    cur, y = prev[cur]
                    word.append(y)
                return tuple(reversed(word))
            nxt = (int(A.delta[a, x]), int(B.delta[b, x]))
            if nxt not in prev:
                prev[nxt] = ((a, b), x)
                queue.append(nxt)
    return None


def equivalent(A: Transducer, B: Transducer) -> EquivalenceResult:
    """Omega-equivalence of minimized machines (minimized cores when both synchronize).

    On failure for synchronizing inputs the separating word w has the shape
    prefix + v: after the prefix both machines sit in forced states, and their
    outputs on v differ.
    """
    if A.n != B.n:
        raise AlphabetMismatch(A.n, B.n)
    ka, kb = sync_level(A), sync_level(B)
    sync = ka is not None and kb is not None
    MA = min_core(A, False) if sync else minimize(A)[0]
    MB = min_core(B, False) if sync else minimize(B)[0]
    U = Transducer(A.n, list(MA.names) + list(MB.names),
                   np.vstack([MA.delta, MB.delta + MA.size]), np.vstack([MA.rho, MB.rho]))
    _, labels = minimize(U)
    la, lb = labels[:MA.size], labels[MA.size:]
    if MA.size == MB.size and len(set(la.tolist())) == MA.size and set(la.tolist()) == set(lb.tolist()):
        where = {int(c): j for j, c in enumerate(lb)}
        bij = {MA.names[i]: MB.names[where[int(c)]] for i, c in enumerate(la)}
        return EquivalenceResult(True, state_bijection=bij)
    if not sync:
        for i, c in enumerate(la):
            if int(c) not in set(lb.tolist()):
                return EquivalenceResult(False, unmatched=MA.names[i])
        for j, c in enumerate(lb):
            if int(c) not in set(la.tolist()):
                return EquivalenceResult(False, unmatched=MB.names[j])
        return EquivalenceResult(False)
    K = max(ka, kb)
    # pairs of forced states reached by a common word of length K
    pairs = {(p, q): () for p in range(MA.size) for q in range(MB.size)}
    for _ in range(K):
        nxt = {}
        for (p, q), w in pairs.items():
            for x in range(A.n):
                key = (int(MA.delta[p, x]), int(MB.delta[q, x]))
                if key not in nxt or w + (x,) < nxt[key]:
                    nxt[key] = w + (x,)
        pairs = nxt
    for (p, q), w in sorted(pairs.items(), key=lambda kv: (len(kv[1]), kv[1])):
        if la[p] != lb[q]:
            v = _distinguish(MA, MB, p, q)
            return EquivalenceResult(False, separating_word=w + v, prefix_length=K)
    raise AssertionError("inequivalent cores without a separating forced pair")


# ---------------------------------------------------------------- injectivity on lines

@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    witness: tuple | None = None  # (Lambda, Delta, image)
    kind: str | None = None  # "cycle" or "diamond"
    states: tuple | None = None

    def __bool__(self):
        return self.injective


def _is_rotation(u, v) -> bool:
    return len(u) == len(v) and any(u[i:] + u[:i] == v for i in range(len(u)))


def is_injective_on_lines(A: Transducer) -> InjectivityResult:
    """Decide injectivity of the induced map on two-sided sequences.

    Two lines with the same image either run through an output-matched cycle of
    state pairs (periodic witness) or split off the diagonal and rejoin it (a
    diamond, only possible when some state is not a local permutation).
    """
    if not is_synchronizing(A):
        sync_analysis(A)
    C = core(A, check=False)
    S, n = C.size, C.n
    G = nx.DiGraph()
    G.add_nodes_from((p, q) for p in range(S) for q in range(S))
    labels = {}
    for p in range(S):
        for q in range(S):
            for x in range(n):
                for y in range(n):
                    if C.rho[p, x] == C.rho[q, y] and (p != q or x != y):
                        e = ((p, q), (int(C.delta[p, x]), int(C.delta[q, y])))
                        labels.setdefault(e, (x, y))
                        G.add_edge(*e)
    # diamonds: leave the diagonal on differing letters, come back to it
    for p in range(S):
        for x in range(n):
            for y in range(x + 1, n):
                if C.rho[p, x] != C.rho[p, y]:
                    continue
                start = (int(C.delta[p, x]), int(C.delta[p, y]))
                path = _path_to_diagonal(G, start)
                if path is not None:
                    u, v = (x,), (y,)
                    for a, b in zip(path, path[1:]):
                        lx, ly = labels[(a, b)]
                        u, v = u + (lx,), v + (ly,)
                    return InjectivityResult(False, (u, v, C.read(u, p)[1]), "diamond",
                                             (C.names[p], C.names[p]))
    best = None
    for comp in sorted(nx.strongly_connected_components(G), key=min):
        comp = set(comp)
        if all(a == b for a, b in comp):
            continue
        for u in sorted(comp):
            if u[0] == u[1]:
                continue
            for v in sorted(G.successors(u)):
                if v not in comp:
                    continue
                back = nx.shortest_path(G.subgraph(comp), v, u)
                cyc = [u] + back
                lam = tuple(labels[(a, b)][0] for a, b in zip(cyc, cyc[1:]))
                dlt = tuple(labels[(a, b)][1] for a, b in zip(cyc, cyc[1:]))
                if lam == dlt:
                    continue
                res = InjectivityResult(False, (lam, dlt, C.read(lam, u[0])[1]), "cycle",
                                        (C.names[u[0]], C.names[u[1]]))
                if not _is_rotation(lam, dlt):
                    return res
                best = best or res
    if best is not None:
        return best
    return InjectivityResult(True)


def _path_to_diagonal(G, start):
    if start[0] == start[1]:
        return [start]
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in G.successors(u):
            if v in prev:
                continue
            prev[v] = u
            if v[0] == v[1]:
                path = [v]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            queue.append(v)
    return None
