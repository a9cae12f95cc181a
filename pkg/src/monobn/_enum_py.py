"""Pure-Python (numpy) enumeration kernel.

Builds the full joint table by broadcast-multiplying the CPTs, applies the
evidence by slicing, and sums out everything but the target.  Used when the
compiled extension is unavailable or explicitly disabled.
"""

from __future__ import annotations

import numpy as np

#: Refuse to materialize joints larger than this many cells.
MAX_JOINT_CELLS = 1 << 26


def accumulate_target(cards, cpt_data, cpt_offsets, parent_data, parent_offsets, evidence, target):
    """Unnormalized posterior mass per target value, summed over free variables.

    All index arrays use the packed layout produced by
    :func:`monobn.inference._pack_network`.
    """
    n = len(cards)
    if int(np.prod(cards, dtype=np.int64)) > MAX_JOINT_CELLS:
        raise ValueError("network too large for full-joint enumeration")
    joint = np.ones(tuple(int(c) for c in cards))
    for v in range(n):
        pars = [int(p) for p in parent_data[parent_offsets[v] : parent_offsets[v + 1]]]
        axes = pars + [v]
        table_shape = tuple(int(cards[a]) for a in axes)
        size = int(np.prod(table_shape, dtype=np.int64))
        table = np.asarray(cpt_data[cpt_offsets[v] : cpt_offsets[v] + size]).reshape(table_shape)
        order = sorted(range(len(axes)), key=lambda i: axes[i])
        table = table.transpose(order)
        shape = [1] * n
        for i in order:
            shape[axes[i]] = int(cards[axes[i]])
        joint = joint * table.reshape(shape)
    index = tuple(
        slice(None) if (v == target or evidence[v] < 0) else int(evidence[v]) for v in range(n)
    )
    sub = joint[index]
    kept = [v for v in range(n) if v == target or evidence[v] < 0]
    target_axis = kept.index(target)
    other = tuple(a for a in range(sub.ndim) if a != target_axis)
    return sub.sum(axis=other) if other else np.asarray(sub, dtype=np.float64)
