"""numba-compiled Bowyer-Watson core for integer inputs.

Mirrors delaunay.triangulate_indices exactly (same ghost conventions, same
symbolic tie rule) on int64 coordinates.  Only safe when coordinate
magnitudes keep the incircle determinant inside int64; the caller checks
INT64_COORD_LIMIT before dispatching here.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is installed in normal envs
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not (args and callable(args[0])) else args[0]


# |incircle det| <= ~10^2 * (1+w) * C^4; keep C^4*(1+w) well under 2^63.
INT64_COORD_LIMIT = 12000
GHOST = -1


@njit(cache=True)
def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


@njit(cache=True)
def _lex_less(ax, ay, bx, by):
    return ax < bx or (ax == bx and ay < by)


@njit(cache=True)
def _incircle_sos(ax, ay, bx, by, cx, cy, dx, dy, w):
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy
    ad = adx * adx + w * ady * ady
    bd = bdx * bdx + w * bdy * bdy
    cd = cdx * cdx + w * cdy * cdy
    det = (
        adx * (bdy * cd - cdy * bd)
        - ady * (bdx * cd - cdx * bd)
        + ad * (bdx * cdy - cdx * bdy)
    )
    if det > 0:
        return True
    if det < 0:
        return False
    # exact cocircularity: perturbation det' = -da*A + db*B - dc*C + dd*O,
    # the largest infinitesimal sitting on the lexicographically least point
    ca = -_orient(dx, dy, bx, by, cx, cy)
    cb = _orient(dx, dy, ax, ay, cx, cy)
    cc = -_orient(dx, dy, ax, ay, bx, by)
    cdd = _orient(ax, ay, bx, by, cx, cy)
    # selection sort of the four points by (x, y)
    for _pass in range(4):
        best = -1
        bx_, by_ = 0, 0
        coeff = 0
        # find remaining lex-least
        if ca != -(1 << 62) and (best == -1 or _lex_less(ax, ay, bx_, by_)):
            best, bx_, by_, coeff = 0, ax, ay, ca
        if cb != -(1 << 62) and (best == -1 or _lex_less(bx, by, bx_, by_)):
            best, bx_, by_, coeff = 1, bx, by, cb
        if cc != -(1 << 62) and (best == -1 or _lex_less(cx, cy, bx_, by_)):
            best, bx_, by_, coeff = 2, cx, cy, cc
        if cdd != -(1 << 62) and (best == -1 or _lex_less(dx, dy, bx_, by_)):
            best, bx_, by_, coeff = 3, dx, dy, cdd
        if best == -1:
            return False
        if coeff > 0:
            return True
        if coeff < 0:
            return False
        if best == 0:
            ca = -(1 << 62)
        elif best == 1:
            cb = -(1 << 62)
        elif best == 2:
            cc = -(1 << 62)
        else:
            cdd = -(1 << 62)
    return False


@njit(cache=True)
def _ghost_contains(xs, ys, a, b, px, py):
    o = _orient(xs[a], ys[a], xs[b], ys[b], px, py)
    if o > 0:
        return True
    if o < 0:
        return False
    ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]
    if _lex_less(bx, by, ax, ay):
        ax, ay, bx, by = bx, by, ax, ay
    return _lex_less(ax, ay, px, py) and _lex_less(px, py, bx, by)


@njit(cache=True)
def _contains(xs, ys, w, tv, t, px, py):
    a = tv[t, 0]
    b = tv[t, 1]
    c = tv[t, 2]
    if c == GHOST:
        return _ghost_contains(xs, ys, a, b, px, py)
    return _incircle_sos(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], px, py, w)


@njit(cache=True)
def _core(xs, ys, w, order):
    n = xs.shape[0]
    cap = 4 * n + 64
    tv = np.empty((cap, 3), np.int64)
    tn = np.empty((cap, 3), np.int64)
    alive = np.zeros(cap, np.uint8)
    mark = np.zeros(cap, np.int64)
    free = np.empty(cap, np.int64)
    free_top = 0
    cav = np.empty(cap, np.int64)
    stack = np.empty(cap, np.int64)
    bu = np.empty(cap, np.int64)
    bv = np.empty(cap, np.int64)
    bt = np.empty(cap, np.int64)
    bnew = np.empty(cap, np.int64)

    i0 = order[0]
    i1 = order[1]
    seed_pos = -1
    for k in range(2, n):
        if _orient(xs[i0], ys[i0], xs[i1], ys[i1], xs[order[k]], ys[order[k]]) != 0:
            seed_pos = k
            break
    if seed_pos == -1:
        return tv[:0], -1  # all collinear
    i2 = order[seed_pos]
    if _orient(xs[i0], ys[i0], xs[i1], ys[i1], xs[i2], ys[i2]) < 0:
        i1, i2 = i2, i1

    tv[0, 0], tv[0, 1], tv[0, 2] = i0, i1, i2
    tv[1, 0], tv[1, 1], tv[1, 2] = i1, i0, GHOST
    tv[2, 0], tv[2, 1], tv[2, 2] = i2, i1, GHOST
    tv[3, 0], tv[3, 1], tv[3, 2] = i0, i2, GHOST
    tn[0, 0], tn[0, 1], tn[0, 2] = 2, 3, 1
    tn[1, 0], tn[1, 1], tn[1, 2] = 3, 2, 0
    tn[2, 0], tn[2, 1], tn[2, 2] = 1, 3, 0
    tn[3, 0], tn[3, 1], tn[3, 2] = 2, 1, 0
    alive[0] = alive[1] = alive[2] = alive[3] = 1
    ntri = 4
    last = 0
    stamp = 0

    for oi in range(2, n):
        p = order[oi]
        if oi == seed_pos:
            continue
        px = xs[p]
        py = ys[p]
        # locate
        if alive[last] == 0:
            for t in range(ntri):
                if alive[t] == 1:
                    last = t
                    break
        t = last
        prev = -1
        found = -1
        for _step in range(4 * n + 64):
            if tv[t, 2] == GHOST:
                if _ghost_contains(xs, ys, tv[t, 0], tv[t, 1], px, py):
                    found = t
                    break
                nxt = tn[t, 2]
                if nxt == prev:
                    nxt = tn[t, 0]
                prev = t
                t = nxt
                continue
            a = tv[t, 0]
            b = tv[t, 1]
            c = tv[t, 2]
            stepped = False
            # edges opposite slots 0,1,2: (b,c), (c,a), (a,b)
            for k in range(3):
                if k == 0:
                    u = b
                    v = c
                elif k == 1:
                    u = c
                    v = a
                else:
                    u = a
                    v = b
                nxt = tn[t, k]
                if nxt == prev:
                    continue
                if _orient(xs[u], ys[u], xs[v], ys[v], px, py) < 0:
                    prev = t
                    t = nxt
                    stepped = True
                    break
            if not stepped:
                found = t
                break
        if found == -1:
            return tv[:0], -2  # walk failed
        seed = found
        if not _contains(xs, ys, w, tv, seed, px, py):
            ok = -1
            for k in range(3):
                t2 = tn[seed, k]
                if t2 >= 0 and alive[t2] == 1 and _contains(xs, ys, w, tv, t2, px, py):
                    ok = t2
                    break
            if ok == -1:
                return tv[:0], -3  # duplicate point?
            seed = ok
        # cavity BFS
        stamp += 1
        cav_n = 0
        stack_n = 0
        cav[cav_n] = seed
        cav_n += 1
        mark[seed] = stamp
        stack[stack_n] = seed
        stack_n += 1
        while stack_n > 0:
            stack_n -= 1
            t = stack[stack_n]
            for k in range(3):
                t2 = tn[t, k]
                if t2 >= 0 and mark[t2] != stamp and alive[t2] == 1:
                    if _contains(xs, ys, w, tv, t2, px, py):
                        mark[t2] = stamp
                        cav[cav_n] = t2
                        cav_n += 1
                        stack[stack_n] = t2
                        stack_n += 1
        # boundary edges
        bn = 0
        for ci in range(cav_n):
            t = cav[ci]
            for k in range(3):
                t2 = tn[t, k]
                if t2 < 0 or mark[t2] != stamp:
                    if k == 0:
                        u = tv[t, 1]
                        v = tv[t, 2]
                    elif k == 1:
                        u = tv[t, 2]
                        v = tv[t, 0]
                    else:
                        u = tv[t, 0]
                        v = tv[t, 1]
                    bu[bn] = u
                    bv[bn] = v
                    bt[bn] = t2
                    bn += 1
        # free cavity triangles
        for ci in range(cav_n):
            t = cav[ci]
            alive[t] = 0
            free[free_top] = t
            free_top += 1
        # create fan
        for e in range(bn):
            u = bu[e]
            v = bv[e]
            if free_top > 0:
                free_top -= 1
                tnew = free[free_top]
            else:
                tnew = ntri
                ntri += 1
            alive[tnew] = 1
            mark[tnew] = 0
            if u == GHOST:
                tv[tnew, 0] = v
                tv[tnew, 1] = p
                tv[tnew, 2] = GHOST
            elif v == GHOST:
                tv[tnew, 0] = p
                tv[tnew, 1] = u
                tv[tnew, 2] = GHOST
            else:
                tv[tnew, 0] = u
                tv[tnew, 1] = v
                tv[tnew, 2] = p
            bnew[e] = tnew
            # neighbor across p's slot is the old outside triangle
            kp = 0
            for k in range(3):
                if tv[tnew, k] == p:
                    kp = k
                    break
            tn[tnew, 0] = -2
            tn[tnew, 1] = -2
            tn[tnew, 2] = -2
            tn[tnew, kp] = bt[e]
            t_out = bt[e]
            if t_out >= 0:
                for k2 in range(3):
                    if k2 == 0:
                        u2 = tv[t_out, 1]
                        v2 = tv[t_out, 2]
                    elif k2 == 1:
                        u2 = tv[t_out, 2]
                        v2 = tv[t_out, 0]
                    else:
                        u2 = tv[t_out, 0]
                        v2 = tv[t_out, 1]
                    if u2 == v and v2 == u:
                        tn[t_out, k2] = tnew
                        break
        # link fan: edge starting at bv[e] continues the cycle
        for e in range(bn):
            v = bv[e]
            nxt = -1
            for e2 in range(bn):
                if bu[e2] == v:
                    nxt = e2
                    break
            tnew = bnew[e]
            tnext = bnew[nxt]
            # in tnew, edge (v, p) is opposite u's slot
            u = bu[e]
            for k in range(3):
                if tv[tnew, k] == u:
                    tn[tnew, k] = tnext
                    break
            v2 = bv[nxt]
            for k in range(3):
                if tv[tnext, k] == v2:
                    tn[tnext, k] = tnew
                    break
        last = bnew[0]

    out = np.empty((ntri, 3), np.int64)
    m = 0
    for t in range(ntri):
        if alive[t] == 1 and tv[t, 2] != GHOST and tv[t, 0] != GHOST and tv[t, 1] != GHOST:
            out[m, 0] = tv[t, 0]
            out[m, 1] = tv[t, 1]
            out[m, 2] = tv[t, 2]
            m += 1
    return out[:m], 0


def triangulate_int64(points, y_weight, order):
    """Run the compiled core; returns list of ccw index triples."""
    xs = np.fromiter((p[0] for p in points), np.int64, len(points))
    ys = np.fromiter((p[1] for p in points), np.int64, len(points))
    tris, status = _core(xs, ys, np.int64(y_weight), np.asarray(order, np.int64))
    if status == -1:
        raise ValueError("all points are collinear")
    if status == -2:
        raise RuntimeError("point location walk failed to terminate")
    if status == -3:
        raise RuntimeError("no cavity seed found (duplicate point?)")
    return [(int(a), int(b), int(c)) for a, b, c in tris]
