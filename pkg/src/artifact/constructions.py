"""Builders: Cayley machines, disjoint-union combinations, conjugation."""
from __future__ import annotations

import csv
import io
import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import BlockMismatch, BudgetExceeded, InvalidGroupTable, NotSynchronizingPart, ParseError
from .registry import RegistryEntry, example_registry  # noqa: F401  (re-exported)
from .transducer import (
    WORD_CAP,
    Transducer,
    inverse,
    min_core,
    product,
    sync_analysis,
    sync_level,
    word_array,
    run_words,
    load,
)
from .words import level_map


@dataclass(frozen=True)
class GroupTable:
    names: tuple
    mult: tuple  # mult[a][b] = index of a*b

    @property
    def order(self):
        return len(self.names)


def group_table(names, mult) -> GroupTable:
    names = tuple(str(x) for x in names)
    g = len(names)
    if g == 0:
        raise InvalidGroupTable("empty table")
    M = np.asarray(mult, dtype=np.int64)
    if M.shape != (g, g) or M.min() < 0 or M.max() >= g:
        raise InvalidGroupTable("table must be a square array of element indices")
    if not (M[0] == np.arange(g)).all() or not (M[:, 0] == np.arange(g)).all():
        raise InvalidGroupTable("element 0 must be the identity")
    for a, b, c in itertools.product(range(g), repeat=3):
        if M[M[a, b], c] != M[a, M[b, c]]:
            raise InvalidGroupTable(f"not associative at ({names[a]}, {names[b]}, {names[c]})")
    for a in range(g):
        if 0 not in M[a]:
            raise InvalidGroupTable(f"{names[a]} has no inverse")
    return GroupTable(names, tuple(tuple(int(x) for x in row) for row in M))


def cyclic_group(m: int) -> GroupTable:
    return group_table([str(i) for i in range(m)], [[(a + b) % m for b in range(m)] for a in range(m)])


def parse_group_csv(text: str) -> GroupTable:
    """Header row of element names, then one row per element (optionally led by its name)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise InvalidGroupTable("empty table")
    header = [c.strip() for c in rows[0]]
    if header and header[0] == "":
        header = header[1:]
    pos = {s: i for i, s in enumerate(header)}
    if len(pos) != len(header):
        raise InvalidGroupTable("duplicate element names")
    body = rows[1:]
    if len(body) != len(header):
        raise InvalidGroupTable("table must have one row per element")
    mult = []
    for i, r in enumerate(body):
        r = [c.strip() for c in r]
        if len(r) == len(header) + 1:
            if r[0] != header[i]:
                raise InvalidGroupTable(f"row label {r[0]!r} out of order")
            r = r[1:]
        if len(r) != len(header) or any(c not in pos for c in r):
            raise InvalidGroupTable(f"bad row {i + 1}")
        mult.append([pos[c] for c in r])
    return group_table(header, mult)


def cayley_machine(G: GroupTable) -> Transducer:
    """States and letters are the group; state m reading l emits ml and moves to ml."""
    g = G.order
    M = np.array(G.mult, dtype=np.int64)
    return Transducer(g, list(G.names), M, M)


# ---------------------------------------------------------------- combinations

@dataclass(frozen=True)
class Part:
    machine: Transducer
    sigma: tuple | None = None  # permutation of the block, local indices
    targets: tuple | None = None  # target state index per block letter
    block: tuple | None = None  # (lo, hi) as declared, checked against the tiling


def _fixed_states(A: Transducer):
    """State fixed by each single letter, read off the level-1 sliding action."""
    k = sync_level(A)
    out = []
    for x in range(A.n):
        q = A.target((x,) * max(k, 1), 0)
        if A.delta[q, x] != q:
            raise BlockMismatch(f"letter {x} has no fixed state")
        out.append(q)
    return out


def combine_disjoint(parts, default_outputs: str = "level1") -> Transducer:
    """Disjoint-union combination of machines on consecutive letter blocks.

    A state of part i reading a letter x of block j != i emits sigma_j(x) and
    moves to the state targets_j(x) of part j. Defaults: sigma_j is the level-1
    map of part j ("level1") or the identity ("identity"); targets_j(x) is the
    state of part j fixed by x.
    """
    parts = [p if isinstance(p, Part) else Part(*p) for p in parts]
    offsets, lo = [], 0
    for i, p in enumerate(parts):
        if p.block is not None and tuple(p.block) != (lo, lo + p.machine.n - 1):
            raise BlockMismatch(f"part {i} declares block {p.block}, tiling gives {(lo, lo + p.machine.n - 1)}")
        offsets.append(lo)
        lo += p.machine.n
        if sync_level(p.machine) is None:
            raise NotSynchronizingPart(i)
    n = lo
    names, base = [], []
    used = set()
    for i, p in enumerate(parts):
        base.append(len(names))
        for s in p.machine.names:
            nm = s if s not in used else f"{s}_{i}"
            while nm in used:
                nm += "_"
            used.add(nm)
            names.append(nm)
    sigmas, targets = [], []
    for i, p in enumerate(parts):
        A = p.machine
        if p.sigma is not None:
            sig = tuple(p.sigma)
            if sorted(sig) != list(range(A.n)):
                raise BlockMismatch(f"sigma of part {i} is not a permutation of its block")
        elif default_outputs == "identity":
            sig = tuple(range(A.n))
        else:
            sig = tuple(level_map(A, 1).table.tolist())
        tg = tuple(p.targets) if p.targets is not None else tuple(_fixed_states(A))
        if len(tg) != A.n or any(not 0 <= t < A.size for t in tg):
            raise BlockMismatch(f"targets of part {i} do not fit its block")
        sigmas.append(sig)
        targets.append(tg)
    S = len(names)
    delta = np.zeros((S, n), dtype=np.int64)
    rho = np.zeros((S, n), dtype=np.int64)
    for i, p in enumerate(parts):
        A = p.machine
        for q in range(A.size):
            row = base[i] + q
            for j, pj in enumerate(parts):
                off = offsets[j]
                for x in range(pj.machine.n):
                    if j == i:
                        delta[row, off + x] = base[i] + A.delta[q, x]
                        rho[row, off + x] = off + A.rho[q, x]
                    else:
                        delta[row, off + x] = base[j] + targets[j][x]
                        rho[row, off + x] = off + sigmas[j][x]
    return Transducer(n, names, delta, rho)


def combine_oplus(A: Transducer, B: Transducer) -> Transducer:
    """Combination with level-1 outputs on foreign letters."""
    return combine_disjoint([Part(A), Part(B)], default_outputs="level1")


_PART = re.compile(r"^part\s+(\S+)\s+block=(\d+)\.\.(\d+)((?:\s+\w+=\S+)*)\s*$")


def parse_combine_spec(text: str, loader=load):
    """Lines `part <file> block=<lo>..<hi> [sigma=<perm>] [targets=<states>]`.

    sigma is a comma list of block-local letters; targets a comma list of state names.
    """
    parts = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PART.match(line)
        if not m:
            raise ParseError(f"malformed combine line {raw!r}")
        A = loader(m.group(1))
        opts = dict(kv.split("=", 1) for kv in m.group(4).split())
        unknown = set(opts) - {"sigma", "targets"}
        if unknown:
            raise ParseError(f"unknown option(s) {sorted(unknown)}")
        sigma = tuple(int(x) for x in opts["sigma"].split(",")) if "sigma" in opts else None
        targets = tuple(A.index(x) for x in opts["targets"].split(",")) if "targets" in opts else None
        parts.append(Part(A, sigma, targets, (int(m.group(2)), int(m.group(3)))))
    return parts


# ---------------------------------------------------------------- conjugation and checks

def conjugate(A: Transducer, h: Transducer) -> Transducer:
    """minimize(core(h^-1 * A * h))."""
    return min_core(product(product(inverse(h), A), h))


def surjective_output_check(A: Transducer, k: int, cap: int = WORD_CAP) -> bool:
    """For every word G of length k and every state q some state p outputs a word forcing q."""
    info = sync_analysis(A)
    if info.level > k:
        raise ValueError(f"k={k} is below the synchronizing level {info.level}")
    if A.n ** k > cap:
        raise BudgetExceeded(f"{A.n}^{k} words", cap)
    words = word_array(A.n, k)
    hit = np.zeros((words.shape[0], A.size), dtype=bool)
    for p in range(A.size):
        _, out = run_words(A, words, p)
        forced, _ = run_words(A, out, 0)
        hit[np.arange(words.shape[0]), forced] = True
    return bool(hit.all())
