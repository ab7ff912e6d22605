"""Bitmask kernels for finite limit-successor systems.

A system of size n is given by arrays: ``s[x]`` (``-1`` when the successor
escapes a bounded window), and the L-table as parallel arrays ``dom`` of
subset masks and ``val`` of values.  The functions are compiled with numba
when it is importable and run as plain Python otherwise.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

# axiom indices in verdict vectors
C1, C2, C3, C4, C5 = range(5)


@njit(cache=True)
def sc_masks(s, n):
    """Successor-closed subsets in increasing mask order."""
    out = np.empty(1 << n, np.int64)
    k = 0
    for m in range(1 << n):
        ok = True
        for i in range(n):
            if (m >> i) & 1 and (s[i] < 0 or not (m >> s[i]) & 1):
                ok = False
                break
        if ok:
            out[k] = m
            k += 1
    return out[:k]


@njit(cache=True)
def preimage(s, n, m):
    """s⁻¹m."""
    out = 0
    for x in range(n):
        if s[x] >= 0 and (m >> s[x]) & 1:
            out |= 1 << x
    return out


@njit(cache=True)
def preimage_inf(s, n, m):
    """s⁻∞m: everything whose orbit meets m."""
    acc = m
    while True:
        nxt = acc | preimage(s, n, acc)
        if nxt == acc:
            return acc
        acc = nxt


@njit(cache=True)
def l_union(dom, val, k, m):
    """∪L⁻¹m: union of the sets whose L-value lies in m."""
    out = 0
    for j in range(k):
        if (m >> val[j]) & 1:
            out |= dom[j]
    return out


@njit(cache=True)
def closure_iterated(s, n, dom, val, k, I):
    """∪_k s⁻∞ [∪L⁻¹ s⁻∞]^k I, stopping once a term adds nothing.

    Both operators preserve unions, so a term inside the running union
    forces every later term inside it too.  Returns (mask, terms used).
    """
    term = preimage_inf(s, n, I)
    acc = term
    steps = 1
    while True:
        term = preimage_inf(s, n, l_union(dom, val, k, term))
        steps += 1
        if term & ~acc == 0:
            return acc, steps
        acc |= term


@njit(cache=True)
def closure_two_term(s, n, dom, val, k, I):
    """s⁻∞I ∪ ∪L⁻¹ s⁻∞I."""
    a = preimage_inf(s, n, I)
    return a | l_union(dom, val, k, a)


@njit(cache=True)
def is_closed(s, n, dom, val, k, m):
    return preimage(s, n, m) & ~m == 0 and l_union(dom, val, k, m) & ~m == 0


@njit(cache=True)
def lemma_violation(s, n, dom, val, k, out):
    """Look for x ≤_L y ≤_L z with x ≰_L z, or x ≤_s y ≤_L z with x ≰_L z.

    Returns 0 when neither occurs, else 1 or 2 with (x, y, z) in `out`.
    """
    ld = np.zeros(n, np.int64)
    for j in range(k):
        ld[val[j]] |= dom[j]
    for z in range(n):
        for y in range(n):
            if (ld[z] >> y) & 1:
                bad = ld[y] & ~ld[z]
                if bad:
                    out[0] = _low(bad); out[1] = y; out[2] = z
                    return 1
                bad = preimage_inf(s, n, 1 << y) & ~ld[z]
                if bad:
                    out[0] = _low(bad); out[1] = y; out[2] = z
                    return 2
    return 0


@njit(cache=True)
def _low(m):
    i = 0
    while not (m >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def c3_holds_at(s, n, A, v):
    """s⁻¹{v} = ∅ and s(v) ∉ A."""
    for x in range(n):
        if s[x] == v:
            return False
    return not (s[v] >= 0 and (A >> s[v]) & 1)


@njit(cache=True)
def is_injective(s, n):
    seen = 0
    for x in range(n):
        if s[x] >= 0:
            if (seen >> s[x]) & 1:
                return False
            seen |= 1 << s[x]
    return True


@njit(cache=True)
def c5_lfp(s, n, dom, val, k):
    """Least set closed under s and containing L(A) for every A inside it.

    Elements whose successor escapes the window are kept; the caller
    decides how to report them.
    """
    J = 0
    while True:
        nxt = J
        for j in range(k):
            if dom[j] & ~nxt == 0:
                nxt |= 1 << val[j]
        for x in range(n):
            if (nxt >> x) & 1 and s[x] >= 0:
                nxt |= 1 << s[x]
        if nxt == J:
            return J
        J = nxt


@njit(cache=True)
def axiom_vector(s, n, dom, val, k, sc, out):
    """Truth values of C1-C5 for a total-s system (out[i] in {0, 1})."""
    full = (1 << n) - 1
    # C1: dom is exactly the successor-closed subsets
    c1 = k == sc.shape[0]
    if c1:
        for j in range(k):
            found = False
            for i in range(k):
                if dom[i] == sc[j]:
                    found = True
                    break
            if not found:
                c1 = False
                break
    out[C1] = 1 if c1 else 0
    cl = np.empty(k, np.int64)
    for j in range(k):
        cl[j], _ = closure_iterated(s, n, dom, val, k, dom[j])
    c2 = True
    c4 = is_injective(s, n)
    for i in range(k):
        for j in range(i):
            if cl[i] == cl[j] and val[i] != val[j]:
                c2 = False
            if val[i] == val[j] and cl[i] != cl[j]:
                c4 = False
    out[C2] = 1 if c2 else 0
    out[C4] = 1 if c4 else 0
    c3 = True
    for j in range(k):
        if not c3_holds_at(s, n, dom[j], val[j]):
            c3 = False
            break
    out[C3] = 1 if c3 else 0
    out[C5] = 1 if c5_lfp(s, n, dom, val, k) == full else 0


@njit(cache=True)
def _close_preorder(down, n):
    changed = True
    while changed:
        changed = False
        for y in range(n):
            m = down[y]
            acc = m
            for z in range(n):
                if (m >> z) & 1:
                    acc |= down[z]
            if acc != m:
                down[y] = acc
                changed = True


@njit(cache=True)
def _down_of(down, n, I):
    acc = 0
    for z in range(n):
        if (I >> z) & 1:
            acc |= down[z]
    return acc


@njit(cache=True)
def _canonical_under(val, k, perms, source_index):
    """Is `val` lexicographically minimal among its images under `perms`?

    source_index[p, pos] is the set whose image under perms[p] sits at
    position pos, so the permuted table reads perms[p, val[source]].
    """
    for p in range(perms.shape[0]):
        for pos in range(k):
            w = perms[p, val[source_index[p, pos]]]
            if w < val[pos]:
                return False
            if w > val[pos]:
                break
    return True


@njit(cache=True)
def enumerate_tables(s, n, req, prune_c3, perms, source_index, store, capacity,
                     check_closures, stats, witness):
    """Depth-first enumeration of L-tables on the successor-closed sets of s.

    Every table satisfying C2 is visited (C2 is pruned exactly: distinct
    sets with equal partial closures keep equal closures as the table
    grows, because the generated preorder only gains pairs).  At each leaf
    the axiom vector is computed and compared with `req` (-1 any, 0 false,
    1 true); matches that are minimal under `perms` are stored.

    stats: [visited leaves, matches, stored, subsets checked, closure
    mismatches, lemma violations].  With `check_closures`, every subset
    of every visited leaf is closed both ways and the lemma is checked;
    the first discrepancy goes into `witness`.
    With capacity 0 nothing is stored and only the statistics are kept.
    Returns the number of stored tables, or -1 on overflow.
    """
    sc = sc_masks(s, n)
    k = sc.shape[0]
    downs = np.zeros((k + 1, n), np.int64)
    for i in range(n):
        downs[0, i] = 1 << i
    for x in range(n):
        if s[x] >= 0:
            downs[0, s[x]] |= 1 << x
    _close_preorder(downs[0], n)
    vals = np.zeros(k, np.int64)
    cls = np.zeros(k, np.int64)
    choice = np.zeros(k + 1, np.int64)
    ax = np.zeros(5, np.int64)
    lem = np.zeros(3, np.int64)
    stored = 0
    depth = 0
    while depth >= 0:
        if depth == k:
            stats[0] += 1
            if check_closures:
                for I in range(1 << n):
                    a, _ = closure_iterated(s, n, sc, vals, k, I)
                    b = closure_two_term(s, n, sc, vals, k, I)
                    stats[3] += 1
                    if a != b:
                        if stats[4] == 0:
                            witness[0] = I
                            for j in range(k):
                                witness[1 + j] = vals[j]
                        stats[4] += 1
                code = lemma_violation(s, n, sc, vals, k, lem)
                if code:
                    stats[5] += 1
            axiom_vector(s, n, sc, vals, k, sc, ax)
            match = True
            for i in range(5):
                if req[i] >= 0 and ax[i] != req[i]:
                    match = False
            if match:
                stats[1] += 1
                if capacity > 0 and _canonical_under(vals, k, perms, source_index):
                    if stored >= capacity:
                        return -1
                    for j in range(k):
                        store[stored, j] = vals[j]
                    stored += 1
                    stats[2] += 1
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        v = choice[depth]
        if v >= n:
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        A = sc[depth]
        if prune_c3 and not c3_holds_at(s, n, A, v):
            choice[depth] += 1
            continue
        DA = _down_of(downs[depth], n, A)
        for z in range(n):
            m = downs[depth, z]
            if (m >> v) & 1:
                m |= DA
            downs[depth + 1, z] = m
        _close_preorder(downs[depth + 1], n)
        vals[depth] = v
        ok = True
        if req[C2] == 1:
            for j in range(depth + 1):
                cls[j] = _down_of(downs[depth + 1], n, sc[j])
            for j in range(depth + 1):
                for i in range(j):
                    if cls[i] == cls[j] and vals[i] != vals[j]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            depth += 1
            choice[depth] = 0
        else:
            choice[depth] += 1
    return stored


@njit(cache=True)
def canonical_map(s, n, perms):
    """Is s minimal (as a tuple) among its conjugates p∘s∘p⁻¹?"""
    inv = np.empty(n, np.int64)
    for p in range(perms.shape[0]):
        for i in range(n):
            inv[perms[p, i]] = i
        for pos in range(n):
            # (p∘s∘p⁻¹)(pos)
            w = perms[p, s[inv[pos]]]
            if w < s[pos]:
                return False
            if w > s[pos]:
                break
    return True
