"""Compiled core for the ordered-list state and the annealing inner loop.

All mutating transitions of the ordered list (linking, unlinking, label
assignment and relabeling) live here as njit functions over plain arrays, so
the Python-level OrderedList API and the hot per-stage loop share one
implementation. The audit in ordering.py deliberately recomputes everything
in pure Python and must stay independent of this module.

List state arrays (vertex ids are indices):
  label       int64[n]   order-maintenance key, strictly increasing along list
  prv, nxt    int64[n]   linkage threading, -1 at the ends
  member      uint8[n]   1 iff the vertex is in the list
  lower_count int64[n]   member neighbors with strictly lower label (members only)
  parent      int64[n]   the unique lower neighbor when lower_count==1, else -1
  meta        int64[3]   [head, tail, size]
"""

import numpy as np
from numba import njit

from .rng import splitmix64

# Label scheme: fresh slots are STRIDE apart; local relabeling respaces a
# doubling window so every element gets at least MIN_SLOT of room. int64
# leaves headroom of ~2^31 appends, far beyond any desk-scale run.
STRIDE = np.int64(1) << np.int64(32)
MIN_SLOT = np.int64(1) << np.int64(16)

NOGIL = {"cache": True, "nogil": True}


def make_rng_state(seed: int) -> np.ndarray:
    """Nonzero xorshift64* state derived from a 64-bit seed."""
    s = splitmix64(seed & ((1 << 64) - 1))
    if s == 0:
        s = 0x9E3779B97F4A7C15
    return np.array([s], dtype=np.uint64)


@njit(**NOGIL)
def _rand_u64(rstate):
    x = rstate[0]
    x ^= x >> np.uint64(12)
    x ^= x << np.uint64(25)
    x ^= x >> np.uint64(27)
    rstate[0] = x
    return x * np.uint64(0x2545F4914F6CDD1D)


@njit(**NOGIL)
def _rand_float(rstate):
    # 53-bit mantissa draw in [0, 1)
    return np.float64(_rand_u64(rstate) >> np.uint64(11)) * 1.1102230246251565e-16


@njit(**NOGIL)
def _rand_below(rstate, k):
    # modulo bias is ~k/2^64, irrelevant at desk scale
    return np.int64(_rand_u64(rstate) % np.uint64(k))


@njit(**NOGIL)
def _assign_label(label, nxt, p, s):
    """Label for a new element between p and s (-1 means list end on either
    side). Relabels a growing window after s when the local gap is exhausted;
    a window that reaches the tail is respaced with full STRIDE slots."""
    lo = label[p] if p != -1 else np.int64(-1)
    if s == -1:
        return lo + STRIDE
    hi = label[s]
    if hi - lo >= 2:
        return lo + (hi - lo) // 2
    w = np.int64(4)
    while True:
        end = s
        cnt = np.int64(1)
        while cnt < w and nxt[end] != -1:
            end = nxt[end]
            cnt += 1
        after = nxt[end]
        if after == -1:
            base = lo
            v = s
            while v != -1:
                base += STRIDE
                label[v] = base
                v = nxt[v]
            break
        bound = label[after]
        if bound - lo >= (cnt + 1) * MIN_SLOT:
            gap = (bound - lo) // (cnt + 1)
            base = lo
            v = s
            for _ in range(cnt):
                base += gap
                label[v] = base
                v = nxt[v]
            break
        w *= 2
    hi = label[s]
    return lo + (hi - lo) // 2


@njit(**NOGIL)
def link(indptr, indices, label, prv, nxt, member, lower_count, parent, meta, i, p, s):
    """Insert non-member i between p and s and update neighbor bookkeeping.

    Caller guarantees the position is legal: every member neighbor of i above
    the position has lower_count 0, and at most one member neighbor sits below.
    """
    lab = _assign_label(label, nxt, p, s)
    label[i] = lab
    prv[i] = p
    nxt[i] = s
    if p != -1:
        nxt[p] = i
    else:
        meta[0] = i
    if s != -1:
        prv[s] = i
    else:
        meta[1] = i
    member[i] = 1
    meta[2] += 1
    lc = np.int64(0)
    par = np.int64(-1)
    for e in range(indptr[i], indptr[i + 1]):
        v = indices[e]
        if member[v] == 1:
            if label[v] < lab:
                lc += 1
                par = v
            else:
                lower_count[v] += 1
                if lower_count[v] == 1:
                    parent[v] = i
    lower_count[i] = lc
    parent[i] = par if lc == 1 else np.int64(-1)


@njit(**NOGIL)
def unlink(indptr, indices, label, prv, nxt, member, lower_count, parent, meta, v):
    """Remove member v; decrements lower_count of its higher member neighbors."""
    p = prv[v]
    s = nxt[v]
    if p != -1:
        nxt[p] = s
    else:
        meta[0] = s
    if s != -1:
        prv[s] = p
    else:
        meta[1] = p
    member[v] = 0
    meta[2] -= 1
    prv[v] = -1
    nxt[v] = -1
    lv = label[v]
    for e in range(indptr[v], indptr[v + 1]):
        w = indices[e]
        if member[w] == 1 and label[w] > lv:
            lower_count[w] -= 1
            if lower_count[w] == 0:
                parent[w] = -1
    lower_count[v] = 0
    parent[v] = -1


@njit(**NOGIL)
def classify(indptr, indices, label, member, lower_count, i, del_buf):
    """Move proposal for non-member i: (member_neighbors, anchor, deletions).

    anchor is i's lowest-labelled member neighbor (-1 if none); del_buf gets
    the member neighbors besides the anchor whose ranking condition the
    insertion would violate (their lower_count is already 1)."""
    n_mem = np.int64(0)
    j = np.int64(-1)
    for e in range(indptr[i], indptr[i + 1]):
        v = indices[e]
        if member[v] == 1:
            n_mem += 1
            if j == -1 or label[v] < label[j]:
                j = v
    nd = np.int64(0)
    if n_mem >= 2:
        for e in range(indptr[i], indptr[i + 1]):
            v = indices[e]
            if member[v] == 1 and v != j and lower_count[v] == 1:
                del_buf[nd] = v
                nd += 1
    return n_mem, j, nd


@njit(**NOGIL)
def _gamma_remove(gamma, gpos, gmeta, v):
    idx = gpos[v]
    last = gmeta[0] - 1
    w = gamma[last]
    gamma[idx] = w
    gpos[w] = idx
    gmeta[0] = last
    gpos[v] = -1


@njit(**NOGIL)
def _gamma_add(gamma, gpos, gmeta, v):
    gamma[gmeta[0]] = v
    gpos[v] = gmeta[0]
    gmeta[0] += 1


@njit(**NOGIL)
def run_stage(indptr, indices, label, prv, nxt, member, lower_count, parent, meta,
              gamma, gpos, gmeta, best, emeta, rstate, del_buf,
              t, target, cap):
    """One temperature stage: propose uniformly from the complement set until
    `target` accepted updates or `cap` attempts. Tracks the best energy in
    emeta[0], snapshotting membership into `best` on strict improvement.
    Returns (accepted, attempted)."""
    n = member.shape[0]
    accepted = np.int64(0)
    attempted = np.int64(0)
    while accepted < target and attempted < cap and gmeta[0] > 0:
        attempted += 1
        i = gamma[_rand_below(rstate, gmeta[0])]
        n_mem, j, nd = classify(indptr, indices, label, member, lower_count, i, del_buf)
        if n_mem >= 2:
            delta = nd - 1
            if delta > 0 and _rand_float(rstate) >= np.exp(-np.float64(delta) / t):
                continue
            for q in range(nd):
                d = del_buf[q]
                unlink(indptr, indices, label, prv, nxt, member, lower_count, parent,
                       meta, d)
                _gamma_add(gamma, gpos, gmeta, d)
            p = j
            s = nxt[j]
        elif n_mem == 1:
            p = j
            s = nxt[j]
        else:
            p = np.int64(-1)
            s = meta[0]
        link(indptr, indices, label, prv, nxt, member, lower_count, parent, meta,
             i, p, s)
        _gamma_remove(gamma, gpos, gmeta, i)
        accepted += 1
        energy = n - meta[2]
        if energy < emeta[0]:
            emeta[0] = energy
            best[:] = member
    return accepted, attempted
