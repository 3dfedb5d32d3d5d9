# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled training loops: the fast kernel backend.

Mirrors ``_pykernels`` operation for operation; both backends must
produce results that agree to float tolerance.  Keep the two files in
sync.
"""

import math

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log

cnp.import_array()


def logreg_fit(double[:, ::1] X, cnp.int64_t[::1] y_idx, int n_classes,
               double learning_rate, int max_iters, double tolerance,
               double l2):
    """Full-batch gradient descent on softmax cross-entropy + L2.

    Same contract as the numpy version: zero init, max-shifted softmax,
    L2 on weights only, stop when the loss improvement drops below
    tolerance or the loss stops being finite.
    """
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t C = n_classes

    W_arr = np.zeros((C, d))
    b_arr = np.zeros(C)
    losses_arr = np.empty(max_iters)
    cdef double[:, ::1] W = W_arr
    cdef double[::1] b = b_arr
    cdef double[::1] losses = losses_arr
    grad_W_arr = np.empty((C, d))
    cdef double[:, ::1] grad_W = grad_W_arr
    grad_b_arr = np.empty(C)
    cdef double[::1] grad_b = grad_b_arr
    scores_arr = np.empty(C)
    cdef double[::1] scores = scores_arr

    cdef double prev_loss = math.inf
    cdef double loss, data_loss, reg, smax, norm, s, g, p
    cdef Py_ssize_t it, i, c, j, n_losses = 0

    for it in range(max_iters):
        data_loss = 0.0
        for c in range(C):
            grad_b[c] = 0.0
            for j in range(d):
                grad_W[c, j] = 0.0
        for i in range(n):
            smax = -math.inf
            for c in range(C):
                s = b[c]
                for j in range(d):
                    s += W[c, j] * X[i, j]
                scores[c] = s
                if s > smax:
                    smax = s
            norm = 0.0
            for c in range(C):
                scores[c] = exp(scores[c] - smax)
                norm += scores[c]
            data_loss -= log(scores[y_idx[i]] / norm)
            for c in range(C):
                p = scores[c] / norm
                g = p - 1.0 if c == y_idx[i] else p
                grad_b[c] += g
                for j in range(d):
                    grad_W[c, j] += g * X[i, j]
        reg = 0.0
        for c in range(C):
            for j in range(d):
                reg += W[c, j] * W[c, j]
        loss = data_loss / n + 0.5 * l2 * reg
        losses[n_losses] = loss
        n_losses += 1
        if not math.isfinite(loss) or prev_loss - loss < tolerance:
            break
        for c in range(C):
            b[c] -= learning_rate * grad_b[c] / n
            for j in range(d):
                W[c, j] -= learning_rate * (grad_W[c, j] / n + l2 * W[c, j])
        prev_loss = loss

    return W_arr, b_arr, losses_arr[:n_losses].copy()


def svm_fit_binary(double[:, ::1] X, double[::1] y_pm, double lam,
                   cnp.int64_t[:, ::1] perms):
    """Primal subgradient descent for one binary hinge-loss separator.

    Same contract as the numpy version: precomputed per-epoch row
    orders, step 1/(lam*t) with t counting updates across epochs,
    unregularized bias.
    """
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t n_epochs = perms.shape[0]
    cdef Py_ssize_t per_epoch = perms.shape[1]

    w_arr = np.zeros(d)
    cdef double[::1] w = w_arr
    cdef double b = 0.0
    cdef double t = 0.0
    cdef double eta, margin, scale, yi
    cdef Py_ssize_t epoch, k, i, j

    for epoch in range(n_epochs):
        for k in range(per_epoch):
            i = perms[epoch, k]
            t += 1.0
            eta = 1.0 / (lam * t)
            yi = y_pm[i]
            margin = b
            for j in range(d):
                margin += X[i, j] * w[j]
            margin *= yi
            scale = 1.0 - eta * lam
            for j in range(d):
                w[j] *= scale
            if margin < 1.0:
                for j in range(d):
                    w[j] += (eta * yi) * X[i, j]
                b += eta * yi
    return w_arr, b
