"""Pure numpy training loops: the fallback kernel backend.

Semantically identical to the compiled extension in ``_ckernels.pyx``;
either backend satisfies the same contracts, the compiled one is just
faster on the per-row SVM loop.  Keep the two files in sync.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["logreg_forward", "logreg_loss_grad", "logreg_fit", "svm_fit_binary"]


def logreg_forward(X, y_idx, W, b, l2):
    """Softmax probabilities and regularized mean cross-entropy.

    Scores are max-shifted per row before exponentiation so large
    weights cannot overflow.  The L2 term covers weights only, never
    biases.
    """
    scores = X @ W.T + b
    scores -= scores.max(axis=1, keepdims=True)
    exp_scores = np.exp(scores)
    norm = exp_scores.sum(axis=1, keepdims=True)
    probs = exp_scores / norm
    log_likelihood = scores[np.arange(len(y_idx)), y_idx] - np.log(norm[:, 0])
    loss = -float(log_likelihood.mean()) + 0.5 * l2 * float((W * W).sum())
    return probs, loss


def logreg_loss_grad(X, y_idx, W, b, l2):
    """Loss plus analytic gradients of the objective in logreg_fit."""
    n, _ = X.shape
    probs, loss = logreg_forward(X, y_idx, W, b, l2)
    G = probs.copy()
    G[np.arange(n), y_idx] -= 1.0
    G /= n
    grad_W = G.T @ X + l2 * W
    grad_b = G.sum(axis=0)
    return loss, grad_W, grad_b


def logreg_fit(X, y_idx, n_classes, learning_rate, max_iters, tolerance, l2):
    """Full-batch gradient descent on softmax cross-entropy + L2.

    Weights and biases start at zero, so training is deterministic.
    Stops after max_iters or as soon as the loss improvement over the
    previous iteration drops below tolerance (or the loss stops being
    finite).  Returns (W, b, losses); the returned parameters are the
    ones that produced the last recorded loss.
    """
    n, d = X.shape
    W = np.zeros((n_classes, d))
    b = np.zeros(n_classes)
    losses = []
    prev_loss = math.inf
    for _ in range(max_iters):
        loss, grad_W, grad_b = logreg_loss_grad(X, y_idx, W, b, l2)
        losses.append(loss)
        if not math.isfinite(loss) or prev_loss - loss < tolerance:
            break
        W -= learning_rate * grad_W
        b -= learning_rate * grad_b
        prev_loss = loss
    return W, b, np.asarray(losses)


def svm_fit_binary(X, y_pm, lam, perms):
    """Primal subgradient descent for one binary hinge-loss separator.

    Minimizes (lam/2)*||w||^2 + mean hinge loss by visiting rows in the
    precomputed per-epoch orders ``perms`` with step 1/(lam*t), where t
    counts updates across all epochs.  The bias rides along with the
    hinge subgradient and is not regularized.
    """
    _, d = X.shape
    w = np.zeros(d)
    b = 0.0
    t = 0
    for epoch in range(perms.shape[0]):
        for i in perms[epoch]:
            t += 1
            eta = 1.0 / (lam * t)
            margin = y_pm[i] * (X[i] @ w + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += (eta * y_pm[i]) * X[i]
                b += eta * y_pm[i]
    return w, b
