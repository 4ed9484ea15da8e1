"""Numpy implementations of the hot set kernels.

Every function here operates on a full multiplication table `table`
(C-contiguous int32, table[i, j] = index of element i * element j) and on
sorted int32 index arrays. `grouplab._kernels` is the compiled drop-in
replacement; `grouplab.kernels` picks one at import time. Keep the two
implementations behaviorally identical: the test suite diffs them.
"""

import numpy as np

BACKEND = "python"


def close_under_product(table, seed, identity):
    """Smallest subset containing `seed` and `identity` closed under products.

    Inside a finite group closure under the product alone yields a subgroup.
    Returns a sorted int32 array.
    """
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[identity] = True
    if seed.size:
        mask[seed] = True
    members = np.flatnonzero(mask).astype(np.int32)
    fresh = members
    while True:
        prods = np.concatenate(
            [
                table[np.ix_(fresh, members)].ravel(),
                table[np.ix_(members, fresh)].ravel(),
            ]
        )
        newly = np.unique(prods[~mask[prods]]).astype(np.int32)
        if newly.size == 0:
            return members
        mask[newly] = True
        members = np.flatnonzero(mask).astype(np.int32)
        fresh = newly


def product_set(table, a, b):
    """Sorted indices of {x*y : x in a, y in b}."""
    if a.size == 0 or b.size == 0:
        return np.empty(0, dtype=np.int32)
    return np.unique(table[np.ix_(a, b)]).astype(np.int32)


def conjugate_set(table, inv, members, x):
    """Sorted indices of {x^-1 * h * x : h in members}."""
    if members.size == 0:
        return np.empty(0, dtype=np.int32)
    conj = table[table[inv[x], members], x]
    conj.sort()
    return conj.astype(np.int32, copy=False)


def normalizer_members(table, inv, members):
    """All x with members^x == members, as a sorted int32 array."""
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    out = [
        x
        for x in range(n)
        if mask[table[table[inv[x], members], x]].all()
    ]
    return np.asarray(out, dtype=np.int32)


def centralizer_members(table, members):
    """All x commuting with every element of `members`, sorted."""
    n = table.shape[0]
    if members.size == 0:
        return np.arange(n, dtype=np.int32)
    left = table[:, members]
    right = table[members, :].T
    return np.flatnonzero((left == right).all(axis=1)).astype(np.int32)


def is_closed_subset(table, members):
    """True iff `members` is closed under the product."""
    if members.size == 0:
        return True
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    return bool(mask[table[np.ix_(members, members)]].all())
