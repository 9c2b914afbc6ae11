"""Batched permutation arithmetic on numpy arrays.

A batch is a ``(k, degree)`` integer array whose rows are image arrays, using
the same right-action conventions as :class:`~nslen.perm.permutation.Permutation`.
"""

from typing import Iterable, List

import numpy as np

from .permutation import Permutation

DTYPE = np.int32


def stack(perms: Iterable[Permutation], degree: int = None) -> np.ndarray:
    rows = [p.images for p in perms]
    if not rows:
        return np.empty((0, degree or 0), dtype=DTYPE)
    return np.asarray(rows, dtype=DTYPE)


def to_perms(batch: np.ndarray) -> List[Permutation]:
    return [Permutation._raw(tuple(row)) for row in batch.tolist()]


def identity_rows(batch: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows that are the identity."""
    return (batch == np.arange(batch.shape[1], dtype=batch.dtype)).all(axis=1)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise products ``a[i] * b[i]``."""
    return np.take_along_axis(b, a, axis=1)


def compose_right(a: np.ndarray, g: Permutation) -> np.ndarray:
    """``a[i] * g`` for every row."""
    return np.asarray(g.images, dtype=a.dtype)[a]


def compose_left(g: Permutation, a: np.ndarray) -> np.ndarray:
    """``g * a[i]`` for every row."""
    return a[:, list(g.images)]


def invert(a: np.ndarray) -> np.ndarray:
    return np.argsort(a, axis=1).astype(a.dtype)


def conjugate(a: np.ndarray, g: Permutation) -> np.ndarray:
    """``g^-1 a[i] g`` for every row."""
    gi = np.asarray(g.images, dtype=a.dtype)
    out = np.empty_like(a)
    out[:, gi] = gi[a]
    return out


def commutator_left(u: Permutation, v: np.ndarray) -> np.ndarray:
    """``[u, v[i]]`` for every row."""
    return compose(compose_right(compose_left(u.inverse(), invert(v)), u), v)


def commutator_right(u: np.ndarray, v: Permutation) -> np.ndarray:
    """``[u[i], v]`` for every row."""
    inv_u = invert(u)
    return compose_right(compose(compose_right(inv_u, v.inverse()), u), v)


def power(a: np.ndarray, k: int) -> np.ndarray:
    result = np.broadcast_to(np.arange(a.shape[1], dtype=a.dtype), a.shape).copy()
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def p_exponents(a: np.ndarray, p: int) -> np.ndarray:
    """For rows of p-power order, the ``f`` with order exactly ``p^f``."""
    exps = np.zeros(a.shape[0], dtype=np.int64)
    current = a
    alive = ~identity_rows(current)
    while alive.any():
        # a p-cycle length never exceeds the degree
        if int(exps.max()) >= a.shape[1]:
            raise ValueError(f"rows of order prime to {p} are not p-elements")
        exps[alive] += 1
        current = power(current, p)
        alive = ~identity_rows(current)
    return exps


def unique(a: np.ndarray) -> np.ndarray:
    if a.shape[0] == 0:
        return a
    return np.unique(a, axis=0)


def row_keys(a: np.ndarray) -> np.ndarray:
    """One hashable, sortable void scalar per row."""
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def conjugation_labels(a: np.ndarray, generators: Iterable[Permutation]) -> np.ndarray:
    """Label each row by the smallest row index in its class under conjugation by ``generators``.

    The rows must be distinct and closed under that conjugation.
    """
    keys = row_keys(a)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    targets = []
    for g in generators:
        conj = conjugate(a, g)
        hits = order[np.searchsorted(sorted_keys, row_keys(conj)).clip(max=len(keys) - 1)]
        if not np.array_equal(a[hits], conj):
            raise ValueError("rows are not closed under conjugation")
        targets.append(hits)
    labels = np.arange(a.shape[0])
    while True:
        new = labels.copy()
        for t in targets:
            np.minimum.at(new, t, labels)
            new = np.minimum(new, new[t])
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def class_representatives(a: np.ndarray, generators: Iterable[Permutation]) -> np.ndarray:
    """The first row of each conjugation class, in row order."""
    if a.shape[0] == 0:
        return a
    labels = conjugation_labels(a, list(generators))
    return a[np.unique(labels)]
