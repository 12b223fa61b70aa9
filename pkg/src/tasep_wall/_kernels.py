"""Hot simulation kernels, numba-compiled with a pure-Python/numpy fallback.

Two stream disciplines coexist here, both exact TASEP constructions:

* per-label attempt clocks (each particle attempts a right jump at rate 1):
  used by the replica-batched statistical samplers, where no coupling between
  processes is needed.  Law-equal to the site-clock construction.
* per-site clocks (the graphical construction): used whenever several
  processes must consume the same jump trials (couplings, backwards paths,
  wall/barrier identities, multi-species dynamics).

Every kernel is deterministic given its seed: randomness comes from the
counter-based streams in ``_bits``.  Set ``TASEP_WALL_NUMBA=0`` to run these
as plain Python (slow, bit-identical results).
"""

import math

import numpy as np

from ._bits import (KIND_INIT, KIND_LABEL, KIND_SITE, exp_gap, maybe_njit,
                    split_seed, stream_key, uniform_draw)

# status codes shared by all kernels
OK = 0
ERR_BUFFER = 1
ERR_WINDOW = 2
ERR_DEGENERATE = 3

_SQRT_GUARD = 10.0


@maybe_njit(cache=True)
def label_buffer_len(T):
    """Attempt-count buffer long enough for a rate-1 clock on [0, T] whp."""
    return int(T + 12.0 * math.sqrt(T + 1.0)) + 64


# ---------------------------------------------------------------------------
# per-label-clock samplers (single-process statistics)
# ---------------------------------------------------------------------------

@maybe_njit(cache=True)
def _sweep_labels_final(run_seed, n_labels, start, T, use_wall, wall_cT,
                        wall_v, wall_all, prev_buf, cur_buf):
    """One sweep, label-major, per-label attempt clocks.

    ``start[i]`` is the initial position of the (i+1)-th particle from the
    right (strictly decreasing).  The right wall, when enabled, keeps
    particle 1 at or below floor(wall_cT + wall_v * t); with ``wall_all`` the
    same constraint suppresses jumps of every particle (multi-species wall
    projected to a single species).  Returns (final position of last label,
    jump count of last label written into cur_buf, status).
    """
    prev_n = 0
    prev_start = 0
    nj = 0
    z = start[0]
    for i in range(n_labels):
        key = stream_key(run_seed, KIND_LABEL, i + 1)
        z = start[i]
        t = 0.0
        nj = 0
        pp = 0
        k = 0
        cap = cur_buf.shape[0]
        while True:
            k += 1
            t += exp_gap(key, k)
            if t > T:
                break
            if i > 0:
                while pp < prev_n and prev_buf[pp] <= t:
                    pp += 1
                if prev_start + pp == z + 1:
                    continue
            if use_wall and (i == 0 or wall_all):
                if float(z + 1) > math.floor(wall_cT + wall_v * t):
                    continue
            z += 1
            if nj >= cap:
                return z, nj, ERR_BUFFER
            cur_buf[nj] = t
            nj += 1
        tmp = prev_buf
        prev_buf = cur_buf
        cur_buf = tmp
        prev_n = nj
        prev_start = start[i]
    return z, prev_n, OK


@maybe_njit(cache=True)
def batch_step_final(seed, runs, n_labels, T, use_wall, wall_cT, wall_v):
    """Final position of particle ``n_labels`` from the step IC, per replica."""
    out = np.empty(runs, np.int64)
    blen = label_buffer_len(T)
    prev_buf = np.empty(blen, np.float64)
    cur_buf = np.empty(blen, np.float64)
    start = np.empty(n_labels, np.int64)
    for i in range(n_labels):
        start[i] = -i
    status = OK
    for r in range(runs):
        rs = split_seed(seed, r)
        z, _, st = _sweep_labels_final(rs, n_labels, start, T, use_wall,
                                       wall_cT, wall_v, False, prev_buf,
                                       cur_buf)
        if st != OK:
            status = st
        out[r] = z
    return out, status


@maybe_njit(cache=True)
def batch_tagged_at_times(seed, runs, n_labels, T, times):
    """Positions of particle ``n_labels`` (step IC, no wall) at given times."""
    nt = times.shape[0]
    out = np.empty((runs, nt), np.int64)
    blen = label_buffer_len(T)
    prev_buf = np.empty(blen, np.float64)
    cur_buf = np.empty(blen, np.float64)
    start = np.empty(n_labels, np.int64)
    for i in range(n_labels):
        start[i] = -i
    status = OK
    for r in range(runs):
        rs = split_seed(seed, r)
        z, nj, st = _sweep_labels_final(rs, n_labels, start, T, False, 0.0,
                                        0.0, False, prev_buf, cur_buf)
        if st != OK:
            status = st
        # jump times of the tagged label end up in the buffer that
        # _sweep_labels_final last wrote; it alternates with label count
        jbuf = cur_buf if n_labels % 2 == 1 else prev_buf
        x0 = start[n_labels - 1]
        j = 0
        for q in range(nt):
            while j < nj and jbuf[j] <= times[q]:
                j += 1
            out[r, q] = x0 + j
    return out, status


@maybe_njit(cache=True)
def batch_barrier_minstat(seed, runs, n_labels, T, wall_cT, wall_v):
    """Per replica: ``min_t (x_n(t) + floor(f(T-t)))`` for the free process.

    ``f(0) = 0`` and ``f(u) = wall_cT + wall_v * u`` for u > 0, so the final
    instant contributes ``x_n(T)``.  The statistic equals the wall process
    position ``x^f_n(T)`` in distribution (wall <-> barrier identity).
    """
    out = np.empty(runs, np.int64)
    blen = label_buffer_len(T)
    prev_buf = np.empty(blen, np.float64)
    cur_buf = np.empty(blen, np.float64)
    start = np.empty(n_labels, np.int64)
    for i in range(n_labels):
        start[i] = -i
    status = OK
    for r in range(runs):
        rs = split_seed(seed, r)
        z, nj, st = _sweep_labels_final(rs, n_labels, start, T, False, 0.0,
                                        0.0, False, prev_buf, cur_buf)
        if st != OK:
            status = st
        jbuf = cur_buf if n_labels % 2 == 1 else prev_buf
        x0 = start[n_labels - 1]
        # walk merged breakpoints of x_n (jumps up) and floor(f(T-t))
        # (steps down as t increases); track the running minimum of the sum.
        x = x0
        j = 0
        g = math.floor(wall_cT + wall_v * T)  # value just after t = 0
        best = x + int(g)
        while True:
            tj = jbuf[j] if j < nj else T + 1.0
            # next time floor(f(T-t)) drops below current g: f(T-t) < g
            # <=> T - t < (g - wall_cT)/wall_v
            if wall_v > 0.0:
                tg = T - (g - wall_cT) / wall_v
            else:
                tg = T + 1.0
            if tj <= tg:
                if tj > T:
                    break
                x += 1
                j += 1
            else:
                if tg >= T:
                    break
                g -= 1.0
                v = x + int(g)
                if v < best:
                    best = v
        # final instant: f(0) = 0, so the candidate is x_n(T) itself
        xT = x0 + nj
        if xT < best:
            best = xT
        out[r] = best
    return out, status


@maybe_njit(cache=True)
def batch_stationary_increment(seed, runs, rho, T, left, right):
    """Tagged-particle displacement over [0, T] for the Bernoulli(rho) IC.

    Tagged particle is the first at a site >= 0 (label 0 in the paper's
    stationary labeling).  Sites in [left, right] are occupied independently;
    ``right`` must exceed the influence cone of the horizon.
    """
    out = np.empty(runs, np.int64)
    width = right - left + 1
    pos = np.empty(width, np.int64)
    blen = label_buffer_len(T)
    prev_buf = np.empty(blen, np.float64)
    cur_buf = np.empty(blen, np.float64)
    status = OK
    for r in range(runs):
        rs = split_seed(seed, r)
        ikey = stream_key(rs, KIND_INIT, 0)
        # occupied sites, descending
        n = 0
        tagged_idx = -1
        for z in range(right, left - 1, -1):
            if uniform_draw(ikey, z - left + 1) < rho:
                pos[n] = z
                n += 1
        if n == 0:
            out[r] = 0
            status = ERR_DEGENERATE
            continue
        # tagged = last particle with position >= 0 in descending order
        for i in range(n):
            if pos[i] >= 0:
                tagged_idx = i
        if tagged_idx < 0:
            out[r] = 0
            status = ERR_DEGENERATE
            continue
        m = tagged_idx + 1
        z, _, st = _sweep_labels_final(rs, m, pos[:m], T, False, 0.0, 0.0,
                                       False, prev_buf, cur_buf)
        if st != OK:
            status = st
        out[r] = z - pos[tagged_idx]
    return out, status


# ---------------------------------------------------------------------------
# site-clock single-run sweep with full event logs (coupling workhorse)
# ---------------------------------------------------------------------------

@maybe_njit(cache=True)
def site_sweep_logged(run_seed, start, t0, T, L, R, mode, thr_breaks,
                      thr_vals, jt, jt_off, st_, st_off, wt, wt_off):
    """Label-sequential sweep on shared per-site clocks, logging everything.

    ``start`` holds strictly decreasing initial positions (index i is the
    (i+1)-th particle from the right).  Modes:

    * 0: free TASEP,
    * 1: right wall on particle 1 only (jump from z suppressed iff
      z >= thr(t), i.e. x_1 <= thr),
    * 2: barrier freeze for every particle (jump from z suppressed iff
      z <= thr(t)),
    * 3: wall for every particle (jump from z suppressed iff z >= thr(t)).

    ``thr_breaks / thr_vals`` describe the integer staircase threshold:
    value ``thr_vals[i]`` on ``(thr_breaks[i], thr_breaks[i+1]]``.

    Event logs go to flat arrays with per-label offset vectors:
    ``jt`` jumps, ``st_`` exclusion suppressions, ``wt`` wall/barrier
    suppressions.  Returns (status, min position, max position+1 touched).
    """
    n = start.shape[0]
    width = R - L + 1
    next_t = np.empty(width, np.float64)
    next_i = np.empty(width, np.int64)
    keys = np.empty(width, np.uint64)
    for j in range(width):
        keys[j] = stream_key(run_seed, KIND_SITE, j + L)
        g = exp_gap(keys[j], 1)
        ti = 1
        tt = g
        while tt <= t0:
            ti += 1
            tt += exp_gap(keys[j], ti)
        next_t[j] = tt
        next_i[j] = ti
    njt = 0
    nst = 0
    nwt = 0
    jcap = jt.shape[0]
    scap = st_.shape[0]
    wcap = wt.shape[0]
    prev_n = 0
    prev_off = 0
    prev_start = 0
    lo_touch = start[0]
    hi_touch = start[0]
    nbrk = thr_breaks.shape[0]
    for i in range(n):
        jt_off[i] = njt
        st_off[i] = nst
        wt_off[i] = nwt
        z = start[i]
        if z < lo_touch:
            lo_touch = z
        t = t0
        pp = 0
        wp = 0
        j = z - L
        if j < 0 or j >= width:
            return ERR_WINDOW, lo_touch, hi_touch
        et = next_t[j]
        ei = next_i[j]
        while True:
            while et <= t:
                ei += 1
                et += exp_gap(keys[j], ei)
            if et > T:
                next_t[j] = et
                next_i[j] = ei
                break
            t = et
            ei += 1
            et += exp_gap(keys[j], ei)
            blocked = False
            if i > 0:
                while pp < prev_n and jt[prev_off + pp] <= t:
                    pp += 1
                if prev_start + pp == z + 1:
                    if nst >= scap:
                        return ERR_BUFFER, lo_touch, hi_touch
                    st_[nst] = t
                    nst += 1
                    blocked = True
            if not blocked and mode != 0:
                if mode == 1 or mode == 3:
                    check = (i == 0) or (mode == 3)
                else:
                    check = True
                if check:
                    while wp + 1 < nbrk and t > thr_breaks[wp + 1]:
                        wp += 1
                    thr = thr_vals[wp]
                    hit = False
                    if mode == 2:
                        hit = z <= thr
                    else:
                        hit = z >= thr
                    if hit:
                        if nwt >= wcap:
                            return ERR_BUFFER, lo_touch, hi_touch
                        wt[nwt] = t
                        nwt += 1
                        blocked = True
            if not blocked:
                next_t[j] = et
                next_i[j] = ei
                z += 1
                if z > hi_touch:
                    hi_touch = z
                if njt >= jcap:
                    return ERR_BUFFER, lo_touch, hi_touch
                jt[njt] = t
                njt += 1
                j = z - L
                if j >= width:
                    return ERR_WINDOW, lo_touch, hi_touch
                et = next_t[j]
                ei = next_i[j]
        prev_off = jt_off[i]
        prev_n = njt - prev_off
        prev_start = start[i]
    jt_off[n] = njt
    st_off[n] = nst
    wt_off[n] = nwt
    return OK, lo_touch, hi_touch


# ---------------------------------------------------------------------------
# second-class particle behind a linear wall (site clocks, B-sweep + replay)
# ---------------------------------------------------------------------------

@maybe_njit(cache=True)
def batch_second_class(seed, runs, T, cT, v, n_first, use_wall):
    """Final position of the second-class particle started at the origin.

    First-class particles fill the negative axis (``n_first`` of them
    tracked), the wall sits at ``cT + v t`` and suppresses any swap whose
    origin site is at or beyond its floor.  The second-class particle is
    realized as the discrepancy between the coupled systems
    B = first-class only and A = B + one particle at 0, both driven by the
    same site clocks; only B is simulated, the discrepancy is then replayed
    through the identical clock field.
    """
    out = np.empty(runs, np.int64)
    if use_wall:
        wall_end = int(math.floor(cT + v * T)) + 2
    else:
        wall_end = int(T + _SQRT_GUARD * math.sqrt(T)) + 2
    L = -n_first - 1
    R = wall_end + 4
    width = R - L + 1
    next_t = np.empty(width, np.float64)
    next_i = np.empty(width, np.int64)
    keys = np.empty(width, np.uint64)
    d_next_t = np.empty(width, np.float64)
    d_next_i = np.empty(width, np.int64)
    blen = label_buffer_len(T)
    jt = np.empty(int(T * T) // 3 + 64 * n_first + 8 * blen, np.float64)
    jt_off = np.empty(n_first + 1, np.int64)
    jcap = jt.shape[0]
    status = OK
    for r in range(runs):
        rs = split_seed(seed, r)
        for j in range(width):
            keys[j] = stream_key(rs, KIND_SITE, j + L)
            next_t[j] = exp_gap(keys[j], 1)
            next_i[j] = 1
            d_next_t[j] = next_t[j]
            d_next_i[j] = 1
        # --- B sweep: first-class only, labels start at -1, -2, ...
        njt = 0
        prev_n = 0
        prev_off = 0
        prev_start = 0
        overflow = False
        for i in range(n_first):
            jt_off[i] = njt
            z = -i - 1
            t = 0.0
            pp = 0
            j = z - L
            et = next_t[j]
            ei = next_i[j]
            while True:
                while et <= t:
                    ei += 1
                    et += exp_gap(keys[j], ei)
                if et > T:
                    next_t[j] = et
                    next_i[j] = ei
                    break
                t = et
                ei += 1
                et += exp_gap(keys[j], ei)
                if i > 0:
                    while pp < prev_n and jt[prev_off + pp] <= t:
                        pp += 1
                    if prev_start + pp == z + 1:
                        continue
                if use_wall and float(z) >= math.floor(cT + v * t):
                    continue
                next_t[j] = et
                next_i[j] = ei
                z += 1
                if njt >= jcap or z >= R:
                    overflow = True
                    break
                jt[njt] = t
                njt += 1
                j = z - L
                et = next_t[j]
                ei = next_i[j]
            if overflow:
                break
            prev_off = jt_off[i]
            prev_n = njt - prev_off
            prev_start = -i - 1
        if overflow:
            status = ERR_BUFFER
            out[r] = -(1 << 40)
            continue
        jt_off[n_first] = njt
        # --- discrepancy replay on its own read of the same clock field
        d = 0
        t = 0.0
        stage = 0  # number of completed overtakes; blocker ahead = label stage
        bp = 0     # pointer into blocker's jump list
        wptr = 0   # pointer into watcher's jump list (label stage+1)
        ok_run = True
        while True:
            j = d - L
            et = d_next_t[j]
            ei = d_next_i[j]
            while et <= t:
                ei += 1
                et += exp_gap(keys[j], ei)
            d_next_t[j] = et
            d_next_i[j] = ei
            # next watcher jump onto d (watcher = B label stage+1, 0-based
            # index stage): its jump w lands on (-(stage+1) + (wptr+1))
            tw = T + 1.0
            if stage < n_first:
                o = jt_off[stage]
                nn = jt_off[stage + 1] - o
                while wptr < nn:
                    land = -(stage + 1) + wptr + 1
                    if land > d:
                        # already ahead of d; cannot happen before an attempt
                        break
                    if land == d and jt[o + wptr] > t:
                        tw = jt[o + wptr]
                        break
                    wptr += 1
            if et > T and tw > T:
                break
            if tw < et:
                # overtaken: first-class jumps onto d, discrepancy moves left
                t = tw
                d -= 1
                stage += 1
                wptr = 0
                if stage >= n_first - 2:
                    ok_run = False
                    break
                # blocker becomes previous watcher; reset blocker pointer
                bp = 0
            else:
                t = et
                # attempt right jump of the discrepancy
                if stage > 0:
                    o = jt_off[stage - 1]
                    nn = jt_off[stage] - o
                    while bp < nn and jt[o + bp] <= t:
                        bp += 1
                    if -stage + bp == d + 1:
                        continue
                if use_wall and float(d) >= math.floor(cT + v * t):
                    continue
                d += 1
                if d >= R - 1:
                    ok_run = False
                    break
        if not ok_run:
            status = ERR_WINDOW
            out[r] = -(1 << 40)
        else:
            out[r] = d
    return out, status


# ---------------------------------------------------------------------------
# colored (multi-species) dynamics on a window, site clocks, global order
# ---------------------------------------------------------------------------

@maybe_njit(cache=True)
def colored_evolve_kernel(run_seed, colors, zL, t0, T, use_thr, thr_breaks,
                          thr_vals, ev_t, ev_z, ev_a):
    """Evolve a colored configuration window under totally asymmetric swaps.

    An event of the site-z clock attempts the swap (z, z+1): applied iff
    color(z) < color(z+1) and, when ``use_thr``, z < thr(t) (origin-side wall
    rule; the threshold staircase is precomputed by the caller, one staircase
    per wall variant).  Events are processed in strict global time order with
    float ties broken by site.  Logs (time, site, action) with action 0 =
    swap, 1 = blocked by color order, 2 = wall-suppressed.  Returns
    (status, number of logged events).  ``colors`` is modified in place.
    """
    w = colors.shape[0]
    nb = w - 1  # bonds z = zL .. zL+w-2
    if nb <= 0:
        return OK, 0
    keys = np.empty(nb, np.uint64)
    nt = np.empty(nb, np.float64)
    ni = np.empty(nb, np.int64)
    for j in range(nb):
        keys[j] = stream_key(run_seed, KIND_SITE, j + zL)
        g = exp_gap(keys[j], 1)
        ti = 1
        tt = g
        while tt <= t0:
            ti += 1
            tt += exp_gap(keys[j], ti)
        nt[j] = tt
        ni[j] = ti
    cap = ev_t.shape[0]
    nev = 0
    nbrk = thr_breaks.shape[0]
    wp = 0
    while True:
        # argmin over next event times, ties by site index
        jmin = 0
        tmin = nt[0]
        for j in range(1, nb):
            if nt[j] < tmin:
                tmin = nt[j]
                jmin = j
        if tmin > T:
            break
        t = tmin
        j = jmin
        ni[j] += 1
        nt[j] = t + exp_gap(keys[j], ni[j])
        z = j + zL
        act = 1
        if colors[j] < colors[j + 1]:
            act = 0
            if use_thr:
                while wp + 1 < nbrk and t > thr_breaks[wp + 1]:
                    wp += 1
                if z >= thr_vals[wp]:
                    act = 2
            if act == 0:
                tmp = colors[j]
                colors[j] = colors[j + 1]
                colors[j + 1] = tmp
        if nev >= cap:
            return ERR_BUFFER, nev
        ev_t[nev] = t
        ev_z[nev] = z
        ev_a[nev] = act
        nev += 1
    return OK, nev


# ---------------------------------------------------------------------------
# totally asymmetric swap sequences (color-position symmetry checks)
# ---------------------------------------------------------------------------

@maybe_njit(cache=True)
def backwards_scan(supp_times, supp_labels, N, t, lowest_label):
    """Label-change times of the backwards process anchored at (N, t).

    Scans suppressions backwards; each suppression of the current label hands
    the path to the particle ahead.  Returns (count, changes) with ``changes``
    ascending; count = -1 flags escape below ``lowest_label``.
    """
    n = supp_times.shape[0]
    hi = n
    while hi > 0 and supp_times[hi - 1] >= t:
        hi -= 1
    out = np.empty(hi, np.float64)
    m = 0
    cur = N
    for i in range(hi - 1, -1, -1):
        if supp_labels[i] == cur:
            out[m] = supp_times[i]
            m += 1
            cur -= 1
            if cur < lowest_label:
                return -1, out[:m]
    return m, out[:m][::-1].copy()


@maybe_njit(cache=True)
def apply_swaps_inplace(perm, zs0, reverse):
    """Apply W-swaps at offsets ``zs0`` (0-based bonds) to ``perm`` in place."""
    n = zs0.shape[0]
    if reverse:
        for i in range(n - 1, -1, -1):
            z = zs0[i]
            if perm[z] < perm[z + 1]:
                tmp = perm[z]
                perm[z] = perm[z + 1]
                perm[z + 1] = tmp
    else:
        for i in range(n):
            z = zs0[i]
            if perm[z] < perm[z + 1]:
                tmp = perm[z]
                perm[z] = perm[z + 1]
                perm[z + 1] = tmp


@maybe_njit(cache=True)
def batch_symmetry_random(seed, n_seq, window, maxlen):
    """Randomized color-position symmetry audit; returns violation count.

    For each random swap sequence on a ``window``-site identity permutation,
    checks reverse-order product == inverse of forward-order product, exact.
    """
    violations = 0
    fwd = np.empty(window, np.int64)
    rev = np.empty(window, np.int64)
    inv = np.empty(window, np.int64)
    zs = np.empty(maxlen, np.int64)
    for q in range(n_seq):
        key = stream_key(split_seed(seed, q), KIND_INIT, 0)
        ln = 1 + int(uniform_draw(key, 0) * maxlen)
        if ln > maxlen:
            ln = maxlen
        for i in range(ln):
            zs[i] = int(uniform_draw(key, i + 1) * (window - 1))
        for i in range(window):
            fwd[i] = i
            rev[i] = i
        apply_swaps_inplace(fwd, zs[:ln], False)
        apply_swaps_inplace(rev, zs[:ln], True)
        for i in range(window):
            inv[fwd[i]] = i
        for i in range(window):
            if inv[i] != rev[i]:
                violations += 1
                break
    return violations
