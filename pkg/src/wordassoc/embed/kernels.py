"""Compiled training loops.

Design constraints that shape this file:
 - Matrices are float32; all scalar arithmetic runs in float64 scratch
   buffers so results are reproducible against a plain-numpy reference
   up to the float32 rounding of each stored cell.
 - Randomness is a 64-bit LCG threaded through every kernel by value;
   callers must pass np.uint64 state. No global RNG, so a fixed seed
   plus a single worker is bitwise reproducible.
 - nogil lets multiple workers run one kernel concurrently on disjoint
   sentence shards; concurrent row updates are tolerated (hogwild).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

U64_MULT = np.uint64(6364136223846793005)
U64_INC = np.uint64(1442695040888963407)
_SHIFT = np.uint64(11)
_INV_2_53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True)
def lcg_fill_uniform(out, state):
    """Fill a flat float64 array with uniforms in [0,1); returns new state."""
    for i in range(out.shape[0]):
        state = state * U64_MULT + U64_INC
        out[i] = (state >> _SHIFT) * _INV_2_53
    return state


@njit(cache=True, nogil=True)
def lcg_fill_centered(out, scale, state):
    """Fill a flat array with (u - 0.5) * scale, u uniform in [0,1).

    The store casts to out's dtype, so one kernel initializes both the
    float32 SGD matrices and the float64 AdaGrad ones.
    """
    for i in range(out.shape[0]):
        state = state * U64_MULT + U64_INC
        u = (state >> _SHIFT) * _INV_2_53
        out[i] = (u - 0.5) * scale
    return state


@njit(cache=True, nogil=True)
def _sigmoid(x):
    if x > 30.0:
        return 1.0
    if x < -30.0:
        return 0.0
    return 1.0 / (1.0 + math.exp(-x))


@njit(cache=True, nogil=True)
def _bisect_right(cum, u):
    lo = 0
    hi = cum.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if u < cum[mid]:
            hi = mid
        else:
            lo = mid + 1
    if lo >= cum.shape[0]:
        lo = cum.shape[0] - 1
    return lo


@njit(cache=True, nogil=True)
def _subsample_sentence(ids, lo, hi, keep_prob, kept, state):
    """Copy surviving ids into kept; draws one uniform per downsampled word."""
    n_kept = 0
    for t in range(lo, hi):
        w = ids[t]
        kp = keep_prob[w]
        if kp >= 1.0:
            kept[n_kept] = w
            n_kept += 1
        else:
            state = state * U64_MULT + U64_INC
            u = (state >> _SHIFT) * _INV_2_53
            if u < kp:
                kept[n_kept] = w
                n_kept += 1
    return n_kept, state


@njit(cache=True, nogil=True)
def w2v_epoch(ids, offsets, s_lo, s_hi, syn0, syn1, noise_cum, keep_prob,
              window, negative, alpha0, alpha_floor, processed0, total_span,
              max_sent, state, cbow):
    """One epoch of negative-sampling word2vec over sentences [s_lo, s_hi).

    Returns (state, processed). The learning rate decays linearly in
    tokens processed across the caller's whole schedule (total_span =
    epochs * shard tokens), never below alpha_floor.
    """
    d = syn0.shape[1]
    neu1 = np.zeros(d, np.float64)
    neu1e = np.zeros(d, np.float64)
    kept = np.empty(max_sent, np.int32)
    processed = processed0
    for s in range(s_lo, s_hi):
        lo = offsets[s]
        hi = offsets[s + 1]
        alpha = alpha0 * (1.0 - processed / total_span)
        if alpha < alpha_floor:
            alpha = alpha_floor
        processed += hi - lo
        n_kept, state = _subsample_sentence(ids, lo, hi, keep_prob, kept, state)
        if n_kept < 2:
            continue
        for pos in range(n_kept):
            center = kept[pos]
            left = pos - window
            if left < 0:
                left = 0
            right = pos + window
            if right > n_kept - 1:
                right = n_kept - 1
            if cbow:
                cnt = 0
                for m in range(d):
                    neu1[m] = 0.0
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    c = kept[p2]
                    for m in range(d):
                        neu1[m] += syn0[c, m]
                    cnt += 1
                if cnt == 0:
                    continue
                inv = 1.0 / cnt
                for m in range(d):
                    neu1[m] *= inv
                    neu1e[m] = 0.0
                for k in range(negative + 1):
                    if k == 0:
                        target = center
                        label = 1.0
                    else:
                        state = state * U64_MULT + U64_INC
                        u = (state >> _SHIFT) * _INV_2_53
                        target = _bisect_right(noise_cum, u)
                        if target == center:
                            continue
                        label = 0.0
                    f = 0.0
                    for m in range(d):
                        f += neu1[m] * syn1[target, m]
                    g = (label - _sigmoid(f)) * alpha
                    for m in range(d):
                        neu1e[m] += g * syn1[target, m]
                        syn1[target, m] += g * neu1[m]
                # the averaged-context objective spreads d/d(context) as
                # d/d(mean) / count, applied to every context word
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    c = kept[p2]
                    for m in range(d):
                        syn0[c, m] += neu1e[m] * inv
            else:
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    ctx = kept[p2]
                    for m in range(d):
                        neu1[m] = syn0[center, m]
                        neu1e[m] = 0.0
                    for k in range(negative + 1):
                        if k == 0:
                            target = ctx
                            label = 1.0
                        else:
                            state = state * U64_MULT + U64_INC
                            u = (state >> _SHIFT) * _INV_2_53
                            target = _bisect_right(noise_cum, u)
                            if target == ctx:
                                continue
                            label = 0.0
                        f = 0.0
                        for m in range(d):
                            f += neu1[m] * syn1[target, m]
                        g = (label - _sigmoid(f)) * alpha
                        for m in range(d):
                            neu1e[m] += g * syn1[target, m]
                            syn1[target, m] += g * neu1[m]
                    for m in range(d):
                        syn0[center, m] += neu1e[m]
    return state, processed


@njit(cache=True, nogil=True)
def _compose(word, syn0, syng, gram_ids, gram_offsets, out):
    d = syn0.shape[1]
    for m in range(d):
        out[m] = syn0[word, m]
    for t in range(gram_offsets[word], gram_offsets[word + 1]):
        g = gram_ids[t]
        for m in range(d):
            out[m] += syng[g, m]


@njit(cache=True, nogil=True)
def _apply_composed(word, syn0, syng, gram_ids, gram_offsets, delta, scale):
    d = syn0.shape[1]
    for m in range(d):
        syn0[word, m] += delta[m] * scale
    for t in range(gram_offsets[word], gram_offsets[word + 1]):
        g = gram_ids[t]
        for m in range(d):
            syng[g, m] += delta[m] * scale
    return None


@njit(cache=True, nogil=True)
def ft_epoch(ids, offsets, s_lo, s_hi, syn0, syng, syn1, gram_ids, gram_offsets,
             noise_cum, keep_prob, window, negative, alpha0, alpha_floor,
             processed0, total_span, max_sent, state, cbow):
    """Subword variant of w2v_epoch.

    A token's input vector is its word row plus the sum of its n-gram
    bucket rows; the input-side gradient is applied to every one of
    those rows in full (sum composition, not average).
    """
    d = syn0.shape[1]
    neu1 = np.zeros(d, np.float64)
    neu1e = np.zeros(d, np.float64)
    comp = np.zeros(d, np.float64)
    kept = np.empty(max_sent, np.int32)
    processed = processed0
    for s in range(s_lo, s_hi):
        lo = offsets[s]
        hi = offsets[s + 1]
        alpha = alpha0 * (1.0 - processed / total_span)
        if alpha < alpha_floor:
            alpha = alpha_floor
        processed += hi - lo
        n_kept, state = _subsample_sentence(ids, lo, hi, keep_prob, kept, state)
        if n_kept < 2:
            continue
        for pos in range(n_kept):
            center = kept[pos]
            left = pos - window
            if left < 0:
                left = 0
            right = pos + window
            if right > n_kept - 1:
                right = n_kept - 1
            if cbow:
                cnt = 0
                for m in range(d):
                    neu1[m] = 0.0
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    _compose(kept[p2], syn0, syng, gram_ids, gram_offsets, comp)
                    for m in range(d):
                        neu1[m] += comp[m]
                    cnt += 1
                if cnt == 0:
                    continue
                inv = 1.0 / cnt
                for m in range(d):
                    neu1[m] *= inv
                    neu1e[m] = 0.0
                for k in range(negative + 1):
                    if k == 0:
                        target = center
                        label = 1.0
                    else:
                        state = state * U64_MULT + U64_INC
                        u = (state >> _SHIFT) * _INV_2_53
                        target = _bisect_right(noise_cum, u)
                        if target == center:
                            continue
                        label = 0.0
                    f = 0.0
                    for m in range(d):
                        f += neu1[m] * syn1[target, m]
                    g = (label - _sigmoid(f)) * alpha
                    for m in range(d):
                        neu1e[m] += g * syn1[target, m]
                        syn1[target, m] += g * neu1[m]
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    _apply_composed(kept[p2], syn0, syng, gram_ids, gram_offsets,
                                    neu1e, inv)
            else:
                for p2 in range(left, right + 1):
                    if p2 == pos:
                        continue
                    ctx = kept[p2]
                    _compose(center, syn0, syng, gram_ids, gram_offsets, neu1)
                    for m in range(d):
                        neu1e[m] = 0.0
                    for k in range(negative + 1):
                        if k == 0:
                            target = ctx
                            label = 1.0
                        else:
                            state = state * U64_MULT + U64_INC
                            u = (state >> _SHIFT) * _INV_2_53
                            target = _bisect_right(noise_cum, u)
                            if target == ctx:
                                continue
                            label = 0.0
                        f = 0.0
                        for m in range(d):
                            f += neu1[m] * syn1[target, m]
                        g = (label - _sigmoid(f)) * alpha
                        for m in range(d):
                            neu1e[m] += g * syn1[target, m]
                            syn1[target, m] += g * neu1[m]
                    _apply_composed(center, syn0, syng, gram_ids, gram_offsets,
                                    neu1e, 1.0)
    return state, processed


@njit(cache=True, nogil=True)
def shuffle_indices(order, state):
    """In-place Fisher-Yates; returns new state."""
    for i in range(order.shape[0] - 1, 0, -1):
        state = state * U64_MULT + U64_INC
        u = (state >> _SHIFT) * _INV_2_53
        j = int(u * (i + 1))
        tmp = order[i]
        order[i] = order[j]
        order[j] = tmp
    return state


@njit(cache=True, nogil=True)
def glove_epoch(rows, cols, weights, order, o_lo, o_hi, w_main, w_ctx,
                b_main, b_ctx, g_main, g_ctx, gb_main, gb_ctx, lr, xmax, alpha):
    """AdaGrad pass over co-occurrence cells order[o_lo:o_hi].

    Loss per cell is f(x) * (w.w~ + b + b~ - ln x)^2 with
    f(x) = min((x/xmax)^alpha, 1); gradients accumulate into the squared
    sums first, then the step divides by the updated root (start value
    1.0 bounds the first step by lr). Returns the summed pre-update loss.
    """
    d = w_main.shape[1]
    loss = 0.0
    for t in range(o_lo, o_hi):
        idx = order[t]
        i = rows[idx]
        j = cols[idx]
        x = weights[idx]
        fw = 1.0 if x >= xmax else (x / xmax) ** alpha
        diff = b_main[i] + b_ctx[j] - math.log(x)
        for m in range(d):
            diff += w_main[i, m] * w_ctx[j, m]
        loss += fw * diff * diff
        gscale = 2.0 * fw * diff
        for m in range(d):
            gw = gscale * w_ctx[j, m]
            gc = gscale * w_main[i, m]
            g_main[i, m] += gw * gw
            w_main[i, m] -= lr * gw / math.sqrt(g_main[i, m])
            g_ctx[j, m] += gc * gc
            w_ctx[j, m] -= lr * gc / math.sqrt(g_ctx[j, m])
        gb_main[i] += gscale * gscale
        b_main[i] -= lr * gscale / math.sqrt(gb_main[i])
        gb_ctx[j] += gscale * gscale
        b_ctx[j] -= lr * gscale / math.sqrt(gb_ctx[j])
    return loss
