"""Gradient correctness: finite differences, and the kernels' update
steps traced back to those same analytic gradients."""

import numpy as np
import pytest

from wordassoc.embed import kernels

import reference_impl as ref

N_INSTANCES = 50
V, D = 10, 5
REL_TOL = 1e-4


def central_diff(f, x, eps=1e-6):
    g = np.zeros_like(x, dtype=np.float64)
    flat = x.reshape(-1)
    gf = g.reshape(-1)
    for i in range(flat.shape[0]):
        keep = flat[i]
        flat[i] = keep + eps
        hi = f()
        flat[i] = keep - eps
        lo = f()
        flat[i] = keep
        gf[i] = (hi - lo) / (2 * eps)
    return g


def rel_err(got, want):
    return np.linalg.norm(got - want) / max(np.linalg.norm(want), 1e-12)


def test_negative_sampling_gradients_match_finite_differences(rng):
    for _ in range(N_INSTANCES):
        v = rng.normal(0, 0.5, D)
        rows = rng.normal(0, 0.5, (1 + V // 2, D))
        labels = np.zeros(len(rows))
        labels[0] = 1.0
        gv, grows = ref.ns_grads(v, rows, labels)
        fd_v = central_diff(lambda: ref.ns_loss(v, rows, labels), v)
        fd_rows = central_diff(lambda: ref.ns_loss(v, rows, labels), rows)
        assert rel_err(gv, fd_v) < REL_TOL
        assert rel_err(grows, fd_rows) < REL_TOL


def test_glove_cell_gradients_match_finite_differences(rng):
    xmax, alpha = 100.0, 0.75
    for i in range(N_INSTANCES):
        wi = rng.normal(0, 0.3, D)
        wj = rng.normal(0, 0.3, D)
        b = rng.normal(0, 0.3, 2)
        # cover both weighting branches
        x = float(rng.uniform(0.5, 50.0)) if i % 2 else float(rng.uniform(100.0, 400.0))

        def loss():
            return ref.glove_cell_loss(wi, wj, b[0], b[1], x, xmax, alpha)

        gwi, gwj, gbi, gbj = ref.glove_cell_grads(wi, wj, b[0], b[1], x, xmax, alpha)
        assert rel_err(gwi, central_diff(loss, wi)) < REL_TOL
        assert rel_err(gwj, central_diff(loss, wj)) < REL_TOL
        fd_b = central_diff(loss, b)
        assert rel_err(np.array([gbi, gbj]), fd_b) < REL_TOL


def test_w2v_kernel_step_is_descent_along_analytic_gradient():
    """One skip-gram event with no negatives: the kernel's update must
    equal -alpha times the positive-term gradient, on both sides."""
    d = 6
    alpha = 0.0125
    rng = np.random.default_rng(3)
    syn0 = rng.normal(0, 0.4, (2, d)).astype(np.float32)
    syn1 = rng.normal(0, 0.4, (2, d)).astype(np.float32)
    s0, s1 = syn0.copy(), syn1.copy()

    ids = np.array([0, 1], np.int32)
    offsets = np.array([0, 2], np.int64)
    cum = np.array([0.5, 1.0])
    keep = np.ones(2)
    kernels.w2v_epoch(ids, offsets, 0, 1, syn0, syn1, cum, keep,
                      1, 0, alpha, alpha * 1e-4, 0.0, 2.0, 2,
                      np.uint64(99), False)

    # event 1: center 0 predicts 1; event 2 center 1 predicts 0 with the
    # already-updated matrices
    for center, ctx in ((0, 1), (1, 0)):
        hidden = s0[center].astype(np.float64)
        rows = s1[ctx:ctx + 1].astype(np.float64)
        gv, grows = ref.ns_grads(hidden, rows, np.array([1.0]))
        s1[ctx] += -alpha * grows[0]
        s0[center] += -alpha * gv
    np.testing.assert_allclose(syn0, s0, rtol=1e-6, atol=1e-7)
    np.testing.assert_allclose(syn1, s1, rtol=1e-6, atol=1e-7)


def test_glove_kernel_step_is_adagrad_on_analytic_gradient():
    """Single-cell table: the update must be -lr * g / sqrt(1 + g^2)."""
    d = 5
    lr, xmax, alpha = 0.05, 100.0, 0.75
    rng = np.random.default_rng(8)
    w_main = rng.normal(0, 0.2, (3, d))
    w_ctx = rng.normal(0, 0.2, (3, d))
    b_main = rng.normal(0, 0.2, 3)
    b_ctx = rng.normal(0, 0.2, 3)
    snap = (w_main.copy(), w_ctx.copy(), b_main.copy(), b_ctx.copy())

    x = 7.5
    i, j = 1, 2
    gwi, gwj, gbi, gbj = ref.glove_cell_grads(
        snap[0][i], snap[1][j], snap[2][i], snap[3][j], x, xmax, alpha)
    want_loss = ref.glove_cell_loss(
        snap[0][i], snap[1][j], snap[2][i], snap[3][j], x, xmax, alpha)

    loss = kernels.glove_epoch(
        np.array([i], np.int32), np.array([j], np.int32), np.array([x]),
        np.array([0], np.int64), 0, 1,
        w_main, w_ctx, b_main, b_ctx,
        np.ones((3, d)), np.ones((3, d)), np.ones(3), np.ones(3),
        lr, xmax, alpha)

    assert loss == pytest.approx(want_loss, rel=1e-12)
    np.testing.assert_allclose(
        w_main[i], snap[0][i] - lr * gwi / np.sqrt(1.0 + gwi ** 2), rtol=1e-12)
    np.testing.assert_allclose(
        w_ctx[j], snap[1][j] - lr * gwj / np.sqrt(1.0 + gwj ** 2), rtol=1e-12)
    assert b_main[i] == pytest.approx(snap[2][i] - lr * gbi / np.sqrt(1.0 + gbi ** 2), rel=1e-12)
    assert b_ctx[j] == pytest.approx(snap[3][j] - lr * gbj / np.sqrt(1.0 + gbj ** 2), rel=1e-12)
    # untouched rows stay put
    assert np.array_equal(w_main[0], snap[0][0])
