"""Bitmask kernels shared by the connectivity checks and the oracle.

Every function here is written in the subset of Python that numba compiles
in nopython mode. With numba disabled they run unchanged on Python lists and
unbounded ints, which also covers hosts with more than 62 vertices.
"""

import types

from ._accel import njit


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def bit_index(low):
    # low must be a single set bit
    i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i


@njit
def reach(adj, start, alive):
    """Vertices reachable from ``start`` inside ``alive`` following ``adj``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[bit_index(low)]
            f ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


@njit
def strong_on(out_adj, in_adj, alive):
    if popcount(alive) <= 1:
        return True
    s = bit_index(alive & -alive)
    if reach(out_adj, s, alive) != alive:
        return False
    return reach(in_adj, s, alive) == alive


@njit
def next_combination(x):
    # Gosper's hack: next integer with the same popcount
    c = x & -x
    r = x + c
    return (((r ^ x) >> 2) // c) | r


@njit
def l_strong(out_adj, in_adj, n, l):
    """Exhaustive check that no set of fewer than ``l`` vertices separates."""
    if n < l + 1:
        return False
    full = (1 << n) - 1
    if not strong_on(out_adj, in_adj, full):
        return False
    limit = 1 << n
    for k in range(1, l):
        x = (1 << k) - 1
        while x < limit:
            if not strong_on(out_adj, in_adj, full & ~x):
                return False
            x = next_combination(x)
    return True


@njit
def _spread(bits, positions):
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << positions[i]
        bits >>= 1
        i += 1
    return out


@njit
def min_separator(out_adj, n, u, v, positions):
    """Smallest vertex set avoiding ``u`` and ``v`` that blocks every
    ``u -> v`` path; returns its mask, or -1 when ``u -> v`` is an arc.

    ``positions`` lists the candidate vertices (all but ``u`` and ``v``).
    """
    if (out_adj[u] >> v) & 1:
        return -1
    full = (1 << n) - 1
    target = 1 << v
    m = len(positions)
    if reach(out_adj, u, full) & target == 0:
        return 0
    limit = 1 << m
    for k in range(1, m + 1):
        x = (1 << k) - 1
        while x < limit:
            sep = _spread(x, positions)
            if reach(out_adj, u, full & ~sep) & target == 0:
                return sep
            x = next_combination(x)
    return -1


# oracle kernels


@njit
def induced_paths(step_adj, chord_adj, start, allowed):
    """All chordless paths leaving ``start`` through ``allowed`` vertices.

    Forward use (``step_adj=out, chord_adj=in``) lists paths ``start -> w``;
    backward use (``step_adj=in, chord_adj=out``) lists paths ``w -> start``.
    Returns parallel lists ``(ends, masks)``; masks exclude ``start``.
    """
    ends = [0]
    masks = [0]
    ends.pop()
    masks.pop()
    n_max = popcount(allowed) + 2
    path = [0] * n_max
    cand = [0] * n_max
    body = [0] * n_max
    path[0] = start
    body[0] = 0
    cand[0] = step_adj[start] & allowed
    pm = 1 << start
    depth = 0
    while depth >= 0:
        c = cand[depth]
        if c == 0:
            pm &= ~(1 << path[depth])
            depth -= 1
            continue
        low = c & -c
        cand[depth] = c ^ low
        w = bit_index(low)
        last = path[depth]
        if chord_adj[w] & (pm & ~(1 << last)):
            continue
        nb = body[depth] | low
        ends.append(w)
        masks.append(nb)
        depth += 1
        path[depth] = w
        body[depth] = nb
        pm |= low
        cand[depth] = step_adj[w] & allowed & ~pm
    return ends, masks


@njit
def _group(ends, masks, n):
    # counting sort by end vertex: offsets[v]..offsets[v+1]
    counts = [0] * (n + 1)
    for e in ends:
        counts[e + 1] += 1
    for v in range(n):
        counts[v + 1] += counts[v]
    fill = counts[:]
    grouped = [0] * len(masks)
    for k in range(len(ends)):
        e = ends[k]
        grouped[fill[e]] = masks[k]
        fill[e] += 1
    return counts, grouped


@njit
def minimal_supports(out_adj, in_adj, n, r, x, y):
    """Inclusion-minimal non-terminal vertex sets of pendant (S, r)-trees,
    sorted by size then mask."""
    terminals = (1 << r) | (1 << x) | (1 << y)
    allowed = ((1 << n) - 1) & ~terminals
    a_end, a_mask = induced_paths(out_adj, in_adj, r, allowed)
    b_end, b_mask = induced_paths(in_adj, out_adj, x, allowed)
    c_end, c_mask = induced_paths(in_adj, out_adj, y, allowed)
    ao, ag = _group(a_end, a_mask, n)
    bo, bg = _group(b_end, b_mask, n)
    co, cg = _group(c_end, c_mask, n)
    found = [0]
    found.pop()
    for alpha in range(n):
        bit = 1 << alpha
        if ao[alpha] == ao[alpha + 1] or bo[alpha] == bo[alpha + 1] or co[alpha] == co[alpha + 1]:
            continue
        for i in range(ao[alpha], ao[alpha + 1]):
            ma = ag[i]
            for j in range(bo[alpha], bo[alpha + 1]):
                mb = bg[j]
                if ma & mb != bit:
                    continue
                u = ma | mb
                for k in range(co[alpha], co[alpha + 1]):
                    mc = cg[k]
                    if mc & u == bit:
                        found.append(u | mc)
    return _minimal_only(found)


@njit
def _minimal_only(found):
    found.sort()
    top = 0
    for m in found:
        c = popcount(m)
        if c > top:
            top = c
    kept = [0]
    kept.pop()
    # by size then mask, dropping duplicates and supersets
    for size in range(1, top + 1):
        prev = -1
        for m in found:
            if m == prev or popcount(m) != size:
                continue
            prev = m
            dominated = False
            for k in kept:
                if k & m == k:
                    dominated = True
                    break
            if not dominated:
                kept.append(m)
    return kept


@njit
def max_packing(cands, r_out, x_in, y_in, target):
    """Branch and bound for the most pairwise disjoint masks in ``cands``.

    Stops as soon as ``target`` disjoint masks are found. The bound is the
    smaller of the remaining candidate count and the free out-neighbours of
    the root / in-neighbours of the two leaves. Returns ``(count, indices)``.
    """
    m = len(cands)
    best = 0
    best_sel = [0] * (m + 1)
    if m == 0 or target <= 0:
        return 0, best_sel[:0]
    sel = [0] * (m + 1)
    pos = [0] * (m + 1)
    avail = [0] * (m + 2)
    for c in cands:
        avail[0] |= c
    depth = 0
    while depth >= 0:
        a = avail[depth]
        i = pos[depth]
        ub = m - i
        b = popcount(a & r_out)
        if b < ub:
            ub = b
        b = popcount(a & x_in)
        if b < ub:
            ub = b
        b = popcount(a & y_in)
        if b < ub:
            ub = b
        if depth + ub <= best:
            depth -= 1
            continue
        while i < m and cands[i] & ~a:
            i += 1
        if i >= m:
            depth -= 1
            continue
        pos[depth] = i + 1
        sel[depth] = i
        depth += 1
        avail[depth] = a & ~cands[i]
        pos[depth] = i + 1
        if depth > best:
            best = depth
            for k in range(depth):
                best_sel[k] = sel[k]
            if best >= target:
                break
    return best, best_sel[:best]


def _python_twins(namespace):
    """Plain-Python copies of every kernel that also call each other's
    plain-Python copies (a compiled kernel's ``py_func`` would still call
    the compiled helpers)."""
    twins = dict(namespace)
    for name, obj in namespace.items():
        fn = getattr(obj, "py_func", obj)
        if isinstance(fn, types.FunctionType) and fn.__module__ == __name__:
            twins[name] = types.FunctionType(fn.__code__, twins, name, fn.__defaults__, fn.__closure__)
    return types.SimpleNamespace(**{k: v for k, v in twins.items() if isinstance(v, types.FunctionType)})


py = _python_twins(globals())
