"""Dual automata, splits, bad-pair graphs and order decision.

The level-r dual of A has the words of length r as states and the states of
A as letters: reading q at word G moves to the output of G through q and
emits the state G leads q to. For r at or above the synchronizing level that
emitted state is the forced state of G, which is what makes the split search
below a search over pairs of words.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import (
    BudgetExceeded,
    HypothesesNotMet,
    NoLoop,
    NoSplit,
    NonInvertibleState,
    NotInvertible,
    NotWellDefined,
    PreconditionUnmet,
    VerificationFailed,
    WrongAlphabet,
)
from .transducer import (
    WORD_CAP,
    Transducer,
    core_key,
    inverse,
    is_synchronizing,
    min_core,
    minimize,
    product,
    run_words,
    sync_level,
    word_array,
)
from .words import PeriodicBiInfiniteWord, encode, orbit, word_str

PAIR_WORD_CAP = 20_000_000


# ---------------------------------------------------------------- dual automaton

@dataclass(frozen=True, eq=False)
class DualAutomaton:
    base: Transducer
    k: int
    words: np.ndarray  # (n^k, k)
    step: np.ndarray  # step[c, q] = code of the output of word c through q
    emit: np.ndarray  # emit[c, q] = state reached from q after word c

    @property
    def transducer(self) -> Transducer:
        names = [word_str(w) for w in self.words]
        return Transducer(self.base.size, names, self.step, self.emit)

    def word(self, c: int) -> tuple:
        return tuple(int(x) for x in self.words[c])


def dual(A: Transducer, k: int, cap: int = WORD_CAP) -> DualAutomaton:
    if k < 1:
        raise ValueError("dual level must be at least 1")
    if A.n ** k > cap:
        raise BudgetExceeded(f"{A.n}^{k} dual states", cap)
    words = word_array(A.n, k)
    N = words.shape[0]
    step = np.empty((N, A.size), dtype=np.int64)
    emit = np.empty((N, A.size), dtype=np.int64)
    for q in range(A.size):
        t, out = run_words(A, words, q)
        step[:, q] = encode(out, A.n)
        emit[:, q] = t
    return DualAutomaton(A, k, words, step, emit)


def same_behaviour(A: Transducer, B: Transducer) -> bool:
    """True when the minimized machines agree up to a renaming of states."""
    if A.n != B.n:
        return False
    MA, MB = minimize(A)[0], minimize(B)[0]
    if MA.size != MB.size:
        return False
    U = Transducer(A.n, [f"a{i}" for i in range(MA.size)] + [f"b{i}" for i in range(MB.size)],
                   np.vstack([MA.delta, MB.delta + MA.size]), np.vstack([MA.rho, MB.rho]))
    _, lab = minimize(U)
    la, lb = lab[:MA.size], lab[MA.size:]
    return len(set(la.tolist())) == MA.size and set(la.tolist()) == set(lb.tolist())


def dual_is_zero(A: Transducer, m: int) -> bool:
    return same_behaviour(dual(A, m).transducer, dual(A, m + 1).transducer)


def finite_order_certificate(A: Transducer, m: int) -> bool:
    """Every state of the minimized level-m dual ignores its input letter."""
    if not dual_is_zero(A, m):
        return False
    M = minimize(dual(A, m).transducer)[0]
    return bool((M.delta == M.delta[:, :1]).all() and (M.rho == M.rho[:, :1]).all())


# ---------------------------------------------------------------- splits

@dataclass(frozen=True)
class Split:
    word: tuple
    P: tuple
    T: tuple
    length: int
    top: frozenset
    bottom: frozenset
    bottom_depends_only_on_top: bool | None = None


@dataclass(frozen=True)
class NoSplitUpTo:
    max_len: int
    exhausted: bool  # True: the search saturated, so no split exists at any length

    def __bool__(self):
        return False


class _Level:
    """Word tables for split analysis at level r >= sync level."""

    def __init__(self, A: Transducer, r: int, k: int | None = None):
        k = sync_level(A) if k is None else k
        if k is None:
            raise PreconditionUnmet("split analysis needs a synchronizing machine")
        if r < k:
            raise PreconditionUnmet(f"level {r} is below the synchronizing level {k}")
        self.A, self.r, self.k = A, r, k
        self.D = dual(A, r)
        self.N = self.D.words.shape[0]
        self.step = self.D.step
        self.forced = self.D.emit[:, 0].copy()

    def image_sets(self, c: int, x: int, depth: int):
        """Forced-state sets of images of word c through x then any padding."""
        Z = {int(self.step[c, x])}
        out = [frozenset(int(self.forced[z]) for z in Z)]
        for _ in range(depth - 1):
            Z = set(self.step[sorted(Z)].reshape(-1).tolist())
            out.append(frozenset(int(self.forced[z]) for z in Z))
        return out


def splitting_length(A: Transducer, r: int, max_len: int, cap: int = PAIR_WORD_CAP):
    """Shortest split of the level-r dual, or NoSplitUpTo(max_len)."""
    lv = _Level(A, r)
    N, S, step, forced = lv.N, A.size, lv.step, lv.forced
    if N * N > cap:
        raise BudgetExceeded("word pairs in split search", cap)
    parent = {}
    frontier = []
    for c in range(N):
        parent[(c, c)] = None
        frontier.append((c, c))
    for depth in range(1, max_len + 1):
        nxt = []
        for (u, v) in frontier:
            for q in range(S):
                a = int(step[u, q])
                for p in range(S):
                    b = int(step[v, p])
                    if forced[a] != forced[b]:
                        return _build_split(lv, parent, (u, v), (q, p), (a, b), depth)
                    if (a, b) not in parent:
                        parent[(a, b)] = ((u, v), (q, p))
                        nxt.append((a, b))
        if not nxt:
            return NoSplitUpTo(max_len, True)
        frontier = nxt
    return NoSplitUpTo(max_len, False)


def _build_split(lv, parent, node, move, last, depth):
    P, T = [move[0]], [move[1]]
    while parent[node] is not None:
        node, (q, p) = parent[node]
        P.append(q)
        T.append(p)
    P, T = tuple(reversed(P)), tuple(reversed(T))
    gamma = lv.D.word(node[0])
    names = lv.A.names
    return Split(gamma, tuple(names[q] for q in P), tuple(names[p] for p in T), depth,
                 frozenset((names[P[0]], names[T[0]])),
                 frozenset((names[int(lv.forced[last[0]])], names[int(lv.forced[last[1]])])))


def _edge_length(lv: _Level, c: int, x: int, y: int, max_len: int):
    """Length m of a top-{x,y} split of word c whose bottom depends only on the top."""
    fx, fy = lv.image_sets(c, x, max_len), lv.image_sets(c, y, max_len)
    for i in range(max_len):
        a, b = fx[i], fy[i]
        if len(a) != 1 or len(b) != 1:
            return None
        if a != b:
            return i + 1, next(iter(a)), next(iter(b))
    return None


def verify_split(A: Transducer, split: Split) -> bool:
    """Read the tuples directly: forced states agree before the last step and differ at it."""
    u, v = tuple(split.word), tuple(split.word)
    for i, (x, y) in enumerate(zip(split.P, split.T), start=1):
        u, v = A.output(u, x), A.output(v, y)
        fu, fv = A.target(u, 0), A.target(v, 0)
        if (fu != fv) != (i == split.length):
            return False
    return len(split.P) == len(split.T) == split.length


def bottom_depends_only_on_top(A: Transducer, split: Split, r: int | None = None) -> bool:
    """Check every padding of both top states, as sets of reachable image words."""
    lv = _Level(A, len(split.word) if r is None else r)
    c = 0
    for x in split.word:
        c = c * A.n + x
    x, y = A.index(split.P[0]), A.index(split.T[0])
    if x == y:
        return False
    res = _edge_length(lv, c, x, y, split.length)
    return res is not None and res[0] == split.length


# ---------------------------------------------------------------- sigma maps

@dataclass(frozen=True)
class SigmaFamily:
    base: Transducer
    r: int
    length: int
    maps: dict  # word -> tuple of state indices

    def __call__(self, word, q):
        return self.maps[tuple(word)][self.base.index(q)]


def sigma_family(A: Transducer, r: int, max_len: int = 64) -> SigmaFamily:
    sp = splitting_length(A, r, max_len)
    if not sp:
        raise NoSplit(f"no split of the level-{r} dual up to length {max_len}")
    lv = _Level(A, r)
    l = sp.length
    maps = {}
    for c in range(lv.N):
        row = []
        for q in range(A.size):
            sets = lv.image_sets(c, q, l)
            if len(sets[-1]) != 1:
                raise NotWellDefined(f"sigma for {word_str(lv.D.word(c))} at {A.names[q]} depends on padding")
            row.append(next(iter(sets[-1])))
        maps[lv.D.word(c)] = tuple(row)
    return SigmaFamily(A, r, l, maps)


# ---------------------------------------------------------------- bad pairs

@dataclass(frozen=True)
class BadPairsGraph:
    base: Transducer
    r: int
    minimal: bool
    vertices: frozenset
    edges: tuple  # (source pair, target pair, word, length), pairs as frozensets of names
    max_len: int | None = None

    def digraph(self):
        G = nx.MultiDiGraph()
        G.add_nodes_from(self.vertices)
        for a, b, w, m in self.edges:
            G.add_edge(a, b, word=w, length=m)
        return G

    def to_dot(self) -> str:
        def lab(v):
            return "{" + ",".join(sorted(v, key=self.base.index)) + "}"
        lines = ["digraph badpairs {"]
        for v in sorted(self.vertices, key=lambda v: sorted(map(self.base.index, v))):
            lines.append(f'  "{lab(v)}";')
        for a, b, w, m in self.edges:
            lines.append(f'  "{lab(a)}" -> "{lab(b)}" [label="{word_str(w)}/{m}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _pair(A, x, y):
    return frozenset((A.names[x], A.names[y]))


def minimal_bad_pairs_graph(A: Transducer, r: int) -> BadPairsGraph:
    fam = sigma_family(A, r)
    verts, edges = set(), []
    for w, sig in sorted(fam.maps.items()):
        for x, y in itertools.combinations(range(A.size), 2):
            if sig[x] != sig[y]:
                a, b = _pair(A, x, y), _pair(A, sig[x], sig[y])
                verts |= {a, b}
                edges.append((a, b, w, fam.length))
    return BadPairsGraph(A, r, True, frozenset(verts), tuple(edges))


def bad_pairs_graph(A: Transducer, r: int, max_len: int | None = None) -> BadPairsGraph:
    """Splits of length up to max_len (default minimal length + 3) whose bottom depends only on the top."""
    if max_len is None:
        sp = splitting_length(A, r, 64)
        if not sp:
            return BadPairsGraph(A, r, False, frozenset(), (), 0)
        max_len = sp.length + 3
    lv = _Level(A, r)
    verts, edges = set(), []
    for c in range(lv.N):
        sets = [lv.image_sets(c, x, max_len) for x in range(A.size)]
        for x, y in itertools.combinations(range(A.size), 2):
            for i in range(max_len):
                a, b = sets[x][i], sets[y][i]
                if len(a) != 1 or len(b) != 1:
                    break
                if a != b:
                    s, t = _pair(A, x, y), _pair(A, next(iter(a)), next(iter(b)))
                    verts |= {s, t}
                    edges.append((s, t, lv.D.word(c), i + 1))
                    break
    return BadPairsGraph(A, r, False, frozenset(verts), tuple(edges), max_len)


def _vkey(A, v):
    return sorted(A.index(s) for s in v)


def has_circuit(g: BadPairsGraph):
    """A directed cycle as a list of edges, self-loops first; None when acyclic."""
    A = g.base
    order = sorted(g.vertices, key=lambda v: _vkey(A, v))
    out = {v: [] for v in order}
    for e in g.edges:
        out[e[0]].append(e)
    for v in order:
        for e in out[v]:
            if e[1] == v:
                return [e]
    for v in order:
        prev = {v: None}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for e in sorted(out[u], key=lambda e: (_vkey(A, e[1]), e[2], e[3])):
                w = e[1]
                if w == v:
                    path = [e]
                    while prev[u] is not None:
                        path.append(prev[u])
                        u = prev[u][0]
                    return path[::-1]
                if w not in prev:
                    prev[w] = e
                    queue.append(w)
    return None


def right_zero_check(A: Transducer, r: int) -> bool:
    """Do all products of |Q|^2+1 sigma maps have a single-point image?"""
    fam = sigma_family(A, r)
    maps = [fam.maps[w] for w in sorted(fam.maps)]
    layer = {frozenset(range(A.size))}
    for _ in range(A.size ** 2 + 1):
        layer = {frozenset(m[q] for q in S) for S in layer for m in maps}
    return all(len(S) == 1 for S in layer)


# ---------------------------------------------------------------- witnesses

def _tuple_read(A, word, S):
    out, states = tuple(word), []
    for s in S:
        t, out = A.read(out, s)
        states.append(t)
    return tuple(states), out


def _tuple_preimage(Ainv, word, S):
    out = tuple(word)
    for s in reversed(S):
        _, out = Ainv.read(out, s)
    return out


@dataclass(frozen=True)
class Witness:
    word: PeriodicBiInfiniteWord
    case: str
    chain: tuple
    loop_pair: frozenset
    length: int


def find_loop(A: Transducer, r: int, minimal: bool = True, max_len: int | None = None):
    g = minimal_bad_pairs_graph(A, r) if minimal else bad_pairs_graph(A, r, max_len)
    for e in g.edges:
        if e[0] == e[1]:
            return e
    raise NoLoop(f"no loop in the {'minimal ' if minimal else ''}bad-pairs graph at level {r}")


def witness_from_loop(A: Transducer, r: int, loop=None, T: int | None = None) -> Witness:
    """A periodic line on an infinite orbit, built from a self-loop split at {p,q}."""
    if not A.is_invertible():
        raise NotInvertible("witness construction needs every state to be a local permutation")
    if loop is None:
        try:
            loop = find_loop(A, r, True)
        except NoSplit as exc:
            raise NoLoop(str(exc)) from exc
    pair, _, gamma1, l = loop
    p, q = sorted((A.index(s) for s in pair))
    Ainv = inverse(A)
    lv = _Level(A, r)
    pad = (0,) * (l - 1)
    s0, delta = _tuple_read(A, gamma1, (p,) + pad)
    s0b, lam = _tuple_read(A, gamma1, (q,) + pad)
    if s0[1:] != s0b[1:] or s0[0] != s0b[0]:
        raise VerificationFailed("loop split does not have a common successor state")
    fd, fl = A.target(delta, 0), A.target(lam, 0)
    case = "case1" if (fd, fl) == (p, q) else "case2"
    if {fd, fl} != {p, q}:
        raise VerificationFailed("loop split bottom differs from its top")

    def chain(by_pair):
        words, seen = [tuple(gamma1)], {}
        S = s0
        while True:
            key = (words[-1], S) if by_pair else words[-1]
            if key in seen:
                i = seen[key]
                return words[:-1], i
            seen[key] = len(words) - 1
            nxt = _tuple_preimage(Ainv, words[-1], S)
            S, _ = _tuple_read(A, nxt, S)
            words.append(nxt)

    def line(left, words, i):
        center = sum(words[:i], ())
        right = sum(words[i:], ())
        return PeriodicBiInfiniteWord.make(left, center, right, len(left))

    def check(w, period):
        steps = T or max(8, 2 * l * period)
        return len(set(orbit(A, w, steps))) == steps

    k = lv.k
    for by_pair in (False, True):
        words, i = chain(by_pair)
        period = len(words) - i
        if i == 0:
            last = A.target(words[-1], 0) if len(words[-1]) >= k else None
            if case == "case1":
                first = delta if last != p else lam
            else:
                first = lam if last == q else delta
            tag = f"{case}:returns-to-start"
        else:
            first, tag = delta, f"{case}:tail"
        options = [first, lam if first == delta else delta]
        for j, left in enumerate(options):
            w = line(left, words, i)
            if check(w, period):
                suffix = "" if (j == 0 and not by_pair) else ":fallback"
                return Witness(w, tag + suffix, tuple(words), frozenset(pair), l)
    raise VerificationFailed("no candidate line passed the orbit check")


# ---------------------------------------------------------------- order decision

@dataclass
class OrderVerdict:
    verdict: str  # "finite", "infinite", "unknown"
    index: int | None = None
    period: int | None = None
    certificate: dict | None = None
    budgets: dict = field(default_factory=dict)

    def to_json(self) -> str:
        d = {"verdict": self.verdict}
        if self.index is not None:
            d["index"] = self.index
        if self.period is not None:
            d["period"] = self.period
        if self.certificate is not None:
            d["certificate"] = self.certificate
        d["budgets"] = self.budgets
        return json.dumps(d, sort_keys=True, indent=2)


def _edge_json(A, e):
    a, b, w, m = e
    return {"from": sorted(a, key=A.index), "to": sorted(b, key=A.index), "word": word_str(w), "length": m}


class _PowerTrack:
    def __init__(self, A, cap):
        self.A, self.cap = A, cap
        self.B = None
        self.t = 0
        self.seen = {}
        self.result = None

    def advance(self):
        if self.result is not None:
            return self.result
        if self.B is None:
            self.B = min_core(self.A, check=False)
        else:
            if self.B.size * self.A.size > self.cap:
                raise BudgetExceeded("power states", self.cap)
            self.B = min_core(product(self.B, self.A), check=False)
        self.t += 1
        key = core_key(self.B)
        if key in self.seen:
            i = self.seen[key]
            self.result = (i, self.t - i)
        else:
            self.seen[key] = self.t
        return self.result


def decide_order(A: Transducer, max_power: int = 12, max_dual_level: int | None = None,
                 size_cap: int = 250_000, extend_power: int = 64) -> OrderVerdict:
    k = sync_level(A)
    if k is None:
        raise PreconditionUnmet("order decision needs a synchronizing machine")
    lo = max(k, 1)
    hi = lo + 4 if max_dual_level is None else max_dual_level
    budgets = {"max_power": max_power, "max_dual_level": hi, "size_cap": size_cap}
    power = _PowerTrack(A, size_cap)
    progress = {"powers": 0, "dual_levels": [], "circuit_levels": []}
    invertible = A.is_invertible()
    if invertible and not is_synchronizing(inverse(A)):
        return OrderVerdict("infinite", certificate={"kind": "inverse-not-synchronizing"}, budgets=budgets)
    levels = list(range(lo, hi + 1))
    rounds = max(max_power, len(levels))
    for rnd in range(rounds):
        # (a) powers
        if rnd < max_power:
            try:
                res = power.advance()
            except BudgetExceeded:
                res = None
                max_power = rnd
            progress["powers"] = power.t
            if res:
                return OrderVerdict("finite", res[0], res[1], {"kind": "power-repeat", "power": power.t},
                                    budgets)
        if rnd >= len(levels) or rnd >= max(max_power, 1):
            continue
        m = levels[rnd]
        # (b) dual zero with input-independent minimized dual
        try:
            zero = finite_order_certificate(A, m)
        except BudgetExceeded:
            zero = False
        progress["dual_levels"].append(m)
        if zero:
            res = None
            while res is None and power.t < extend_power:
                try:
                    res = power.advance()
                except BudgetExceeded:
                    break
            cert = {"kind": "dual-zero", "level": m}
            if res:
                return OrderVerdict("finite", res[0], res[1], cert, budgets)
            return OrderVerdict("finite", None, None, cert, budgets)
        # (c) circuits
        if invertible:
            try:
                cert = _circuit_certificate(A, m)
            except BudgetExceeded:
                cert = None
            progress["circuit_levels"].append(m)
            if cert:
                return OrderVerdict("infinite", certificate=cert, budgets=budgets)
    budgets["progress"] = progress
    return OrderVerdict("unknown", budgets=budgets)


def _circuit_certificate(A, m):
    sp = splitting_length(A, m, 64)
    if not sp:
        return None
    for minimal in (True, False):
        g = minimal_bad_pairs_graph(A, m) if minimal else bad_pairs_graph(A, m, sp.length + 3)
        cyc = has_circuit(g)
        if cyc:
            return {"kind": "bad-pairs-circuit", "graph": "minimal" if minimal else "general",
                    "level": m, "circuit": [_edge_json(A, e) for e in cyc]}
    if A.n == 3:
        h = h3_order_tests(A)
        if h.verdict == "InfiniteOrZeroStep" and not dual_is_zero(A, sync_level(A) or 1):
            return {"kind": "three-letter-lemma", "level": m, "evidence": h.evidence}
    return None


# ---------------------------------------------------------------- letter partitions

@dataclass(frozen=True)
class LetterPartition:
    blocks: tuple  # ((letters), (state names)) sorted by least letter; letterless blocks last

    def block_of_letter(self, i):
        for letters, states in self.blocks:
            if i in letters:
                return letters, states
        raise KeyError(i)

    def __str__(self):
        parts = []
        for letters, states in self.blocks:
            parts.append("[" + ",".join(map(str, letters)) + "]={" + ",".join(states) + "}")
        return "{" + ", ".join(parts) + "}"


def letter_partition(A: Transducer) -> LetterPartition:
    sets = {i: {int(A.delta[p, i]) for p in range(A.size)} for i in range(A.n)}
    groups = [([i], set(s)) for i, s in sets.items()]
    merged = True
    while merged:
        merged = False
        for a, b in itertools.combinations(range(len(groups)), 2):
            if groups[a][1] & groups[b][1]:
                groups[a] = (sorted(groups[a][0] + groups[b][0]), groups[a][1] | groups[b][1])
                del groups[b]
                merged = True
                break
    covered = set().union(*(g[1] for g in groups)) if groups else set()
    blocks = [(tuple(l), tuple(A.names[q] for q in sorted(s))) for l, s in sorted(groups)]
    for q in range(A.size):
        if q not in covered:
            blocks.append(((), (A.names[q],)))
    return LetterPartition(tuple(blocks))


def letter_partition_inverse(A: Transducer) -> LetterPartition:
    return letter_partition(inverse(A))


# ---------------------------------------------------------------- three letters

@dataclass(frozen=True)
class H3Result:
    verdict: str  # "InfiniteOrZeroStep" or "Inconclusive"
    evidence: dict


def h3_order_tests(A: Transducer, max_power: int = 3) -> H3Result:
    if A.n != 3:
        raise WrongAlphabet(f"expected alphabet 3, got {A.n}")
    if not A.is_invertible():
        raise NonInvertibleState(next(A.names[q] for q in range(A.size) if not A.is_local_permutation(q)))
    part = letter_partition(A)
    lettered = [b for b in part.blocks if b[0]]
    if len(lettered) != 2:
        return H3Result("Inconclusive", {"reason": "partition is not of shape {[i1,i2],[i3]}",
                                         "partition": str(part)})
    pair = next(b[0] for b in lettered if len(b[0]) == 2)
    i3 = next(b[0][0] for b in lettered if len(b[0]) == 1)
    i1, i2 = pair
    # inverse classes of the paired letters are disjoint
    Ainv = inverse(A)
    s1 = {Ainv.names[int(Ainv.delta[p, i1])] for p in range(A.size)}
    s2 = {Ainv.names[int(Ainv.delta[p, i2])] for p in range(A.size)}
    if not s1 & s2:
        return H3Result("InfiniteOrZeroStep", {"test": "inverse-classes-disjoint", "i1": i1, "i2": i2})
    # some power has states with a common target on one letter but outputs on both sides
    P = A
    for l in range(1, max_power + 1):
        if l > 1:
            P = product(P, A)
        for ia in range(3):
            tgt, out = P.delta[:, ia], P.rho[:, ia]
            for t in np.unique(tgt):
                idx = np.flatnonzero(tgt == t)
                lo = [s for s in idx if out[s] in (i1, i2)]
                hi = [s for s in idx if out[s] == i3]
                if lo and hi:
                    return H3Result("InfiniteOrZeroStep", {"test": "power-configuration", "power": l,
                                                           "letter": ia, "S1": P.names[lo[0]],
                                                           "S2": P.names[hi[0]]})
    return H3Result("Inconclusive", {"reason": f"no configuration up to power {max_power}"})


def _perm_of(A, Ainv, first_inv, then):
    """Letter map x -> output of (output of x through first_inv in A^-1) through `then` in A."""
    return tuple(int(A.rho[then, Ainv.rho[first_inv, x]]) for x in range(A.n))


def reduce_by_conjugation_h3(A: Transducer):
    """Find a two-state order-2 conjugator shrinking A; returns (C, B) or raises HypothesesNotMet."""
    if A.n != 3:
        raise WrongAlphabet(f"expected alphabet 3, got {A.n}")
    failed = []
    if not A.is_invertible():
        raise HypothesesNotMet(["machine is not invertible"])
    part, ipart = letter_partition(A), letter_partition_inverse(A)
    shape = sorted(len(b[0]) for b in part.blocks if b[0])
    ishape = sorted(len(b[0]) for b in ipart.blocks if b[0])
    if shape != [1, 2]:
        failed.append("partition of A is not {[i1,i2],[i3]}")
    if ishape != [1, 2] or {b[0] for b in part.blocks} != {b[0] for b in ipart.blocks}:
        failed.append("partition of the inverse does not match")
    if failed:
        raise HypothesesNotMet(failed)
    pair = next(b for b in part.blocks if len(b[0]) == 2)
    i12 = set(pair[0])
    i3 = next(b[0][0] for b in part.blocks if len(b[0]) == 1)
    Ainv = inverse(A)
    n0 = A.size
    for q1, q2 in itertools.permutations(range(n0), 2):
        if not np.array_equal(A.delta[q1], A.delta[q2]):
            continue
        blk = [b for b in part.blocks if A.names[q1] in b[1] and A.names[q2] in b[1]]
        if not blk:
            continue
        js1 = [(p, j) for p in range(n0) for j in range(3)
               if A.delta[p, j] == q1 and A.rho[p, j] in i12]
        js2 = [(p, j) for p in range(n0) for j in range(3)
               if A.delta[p, j] == q2 and A.rho[p, j] == i3]
        for (p1, j1), (p2, j2) in itertools.product(js1, js2):
            if set(blk[0][0]) == i12:
                perm = _perm_of(A, Ainv, q2, q1)
            else:
                perm = _perm_of(A, Ainv, q1, q2)
            js = {j1, j2}
            delta = [[0 if x in js else 1 for x in range(3)] for _ in range(2)]
            C = Transducer(3, ["c1", "c2"], delta, [list(range(3)), list(perm)])
            if not is_synchronizing(C) or not C.is_invertible():
                continue
            B = min_core(product(product(C, A), C))
            CC = min_core(product(C, C))
            if B.size < n0 and CC.size == 1 and np.array_equal(CC.rho[0], np.arange(3)):
                return C, B
    failed.append("no same-transition pair and (p, j) configuration gives a smaller conjugate")
    raise HypothesesNotMet(failed)


# ---------------------------------------------------------------- free semigroup test

@dataclass(frozen=True)
class FreeSemigroupReport:
    holds: bool
    missing_vertices: tuple
    stuck_vertices: tuple
    rank: int
    note: str


def free_semigroup_condition(A: Transducer, r: int, S, max_len: int | None = None,
                             graph: BadPairsGraph | None = None):
    """Every 2-subset of S is a bad pair that reaches a circuit of the bad-pairs graph."""
    S = sorted({A.index(s) for s in S})
    if len(S) < 2:
        raise PreconditionUnmet("state subset needs at least two states")
    g = graph or bad_pairs_graph(A, r, max_len)
    G = g.digraph()
    on_cycle = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1 or any(G.has_edge(v, v) for v in comp):
            on_cycle |= comp
    missing, stuck = [], []
    for x, y in itertools.combinations(S, 2):
        v = _pair(A, x, y)
        if v not in g.vertices:
            missing.append(tuple(sorted(v, key=A.index)))
        elif not (({v} | nx.descendants(G, v)) & on_cycle):
            stuck.append(tuple(sorted(v, key=A.index)))
    holds = not missing and not stuck
    note = (f"semigroup generated is free of rank at least {len(S)}" if holds
            else "condition fails; no rank claim")
    return FreeSemigroupReport(holds, tuple(missing), tuple(stuck), len(S), note)
