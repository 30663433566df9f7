# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in _pykernels."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def canonical_labels(keys):
    cdef const i64[:, :] k = np.ascontiguousarray(keys, dtype=np.int64)
    cdef Py_ssize_t S = k.shape[0], w = k.shape[1], i, j
    out = np.empty(S, dtype=np.int64)
    cdef i64[:] o = out
    seen = {}
    cdef i64 nxt = 0
    for i in range(S):
        key = tuple([k[i, j] for j in range(w)])
        v = seen.get(key)
        if v is None:
            seen[key] = nxt
            o[i] = nxt
            nxt += 1
        else:
            o[i] = v
    return out


def refine(delta, init):
    cdef const i64[:, :] d = np.ascontiguousarray(delta, dtype=np.int64)
    cdef Py_ssize_t S = d.shape[0], n = d.shape[1], i, x
    labels = canonical_labels(np.asarray(init, dtype=np.int64).reshape(-1, 1))
    cdef i64 count = (labels.max() + 1) if S else 0
    cdef i64 c
    keys = np.empty((S, n + 1), dtype=np.int64)
    cdef i64[:, :] kv = keys
    cdef i64[:] lv
    while True:
        lv = labels
        for i in range(S):
            kv[i, 0] = lv[i]
            for x in range(n):
                kv[i, x + 1] = lv[d[i, x]]
        new = canonical_labels(keys)
        c = (new.max() + 1) if S else 0
        if c == count:
            return new
        labels = new
        count = c


def pair_sync_level(delta):
    """Longest merge depth over all state pairs, by reverse peeling of the pair graph."""
    cdef const i64[:, :] d = np.ascontiguousarray(delta, dtype=np.int64)
    cdef Py_ssize_t S = d.shape[0], n = d.shape[1]
    if S <= 1:
        return 0
    cdef Py_ssize_t x, a, p, q, i, j, head, tail, P = S * S
    # preimages per letter in CSR form
    cnt = np.zeros((n, S + 1), dtype=np.int64)
    cdef i64[:, :] cv = cnt
    for x in range(n):
        for p in range(S):
            cv[x, d[p, x] + 1] += 1
    starts = np.cumsum(cnt, axis=1)
    cdef i64[:, :] st = starts
    pre = np.empty((n, S), dtype=np.int64)
    cdef i64[:, :] pv = pre
    fill = starts[:, :S].copy()
    cdef i64[:, :] fv = fill
    for x in range(n):
        for p in range(S):
            a = d[p, x]
            pv[x, fv[x, a]] = p
            fv[x, a] += 1
    remaining = np.full(P, n, dtype=np.int64)
    level = np.full(P, -1, dtype=np.int64)
    queue = np.empty(P, dtype=np.int64)
    cdef i64[:] rem = remaining
    cdef i64[:] lev = level
    cdef i64[:] qu = queue
    head = 0
    tail = 0
    for p in range(S):
        lev[p * S + p] = 0
        rem[p * S + p] = 0
        qu[tail] = p * S + p
        tail += 1
    cdef i64 cur, u, v, best = 0, done = 0
    while head < tail:
        cur = qu[head]
        head += 1
        u = cur // S
        v = cur % S
        for x in range(n):
            for i in range(st[x, u], st[x, u + 1]):
                p = pv[x, i]
                for j in range(st[x, v], st[x, v + 1]):
                    q = pv[x, j]
                    a = p * S + q
                    if rem[a] > 0:
                        rem[a] -= 1
                        if rem[a] == 0:
                            lev[a] = lev[cur] + 1
                            if lev[a] > best:
                                best = lev[a]
                            qu[tail] = a
                            tail += 1
    if tail < P:
        return -1
    return best


def image_chain(delta, start):
    cdef const i64[:, :] d = np.ascontiguousarray(delta, dtype=np.int64)
    cdef Py_ssize_t S = d.shape[0], n = d.shape[1], i, x
    cur = np.zeros(S, dtype=bool)
    cur[start] = True
    out = [cur]
    cdef cnp.uint8_t[:] cv
    cdef cnp.uint8_t[:] nv
    while True:
        nxt = np.zeros(S, dtype=bool)
        cv = cur.view(np.uint8)
        nv = nxt.view(np.uint8)
        for i in range(S):
            if cv[i]:
                for x in range(n):
                    nv[d[i, x]] = 1
        if np.array_equal(nxt, cur):
            return out
        out.append(nxt)
        cur = nxt
