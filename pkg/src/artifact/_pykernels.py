"""Pure numpy versions of the hot loops. Same signatures as _ckernels."""
import numpy as np


def canonical_labels(keys):
    """Relabel rows of `keys` so classes are numbered by first occurrence."""
    _, first, inv = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inv = inv.reshape(-1)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[inv].astype(np.int64)


def refine(delta, init):
    """Moore refinement. delta: (S, n) targets, init: (S,) initial class ids."""
    labels = canonical_labels(np.asarray(init, dtype=np.int64).reshape(-1, 1))
    count = labels.max() + 1 if len(labels) else 0
    while True:
        keys = np.column_stack([labels, labels[delta]])
        new = canonical_labels(keys)
        c = new.max() + 1 if len(new) else 0
        if c == count:
            return new
        labels, count = new, c


def pair_sync_level(delta):
    """Synchronizing level via the pair graph; -1 when some pair never merges."""
    S, n = delta.shape
    if S <= 1:
        return 0
    alive = ~np.eye(S, dtype=bool)
    d = 0
    while alive.any():
        new = np.zeros_like(alive)
        for x in range(n):
            col = delta[:, x]
            new |= alive[np.ix_(col, col)]
        d += 1
        if np.array_equal(new, alive):
            return -1
        alive = new
    return d


def image_chain(delta, start):
    """Successive images Q_{i+1} = delta(X, Q_i) until stable; returns list of bool masks."""
    S = delta.shape[0]
    cur = np.zeros(S, dtype=bool)
    cur[start] = True
    out = [cur]
    while True:
        nxt = np.zeros(S, dtype=bool)
        nxt[delta[cur].reshape(-1)] = True
        if np.array_equal(nxt, cur):
            return out
        out.append(nxt)
        cur = nxt
