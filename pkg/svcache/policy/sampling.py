# Copyright (c) SVCache Authors. Licensed under the MIT License.

import numpy as np


def sample_cache_contents(placement,
                          tier,
                          rng,
                          num_nodes=None,
                          truncate=False,
                          library=None,
                          capacity=None):
    """
    Sample the layers stored by nodes of a tier. Each node stores layer
    ``(f, l)`` independently with probability ``placement[tier][f, l]``, so
    a single node may exceed its cache size. With ``truncate=True`` the
    lowest-probability stored layers are dropped until every node fits.

    Args:
        placement (:obj:`Placement`): The placement.
        tier (str): The cache tier id.
        rng (:obj:`np.random.Generator`): The random generator.
        num_nodes (int | None, optional): Number of nodes to sample. If not
            specified, a single ``(F, L)`` mask is returned. Default:
            ``None``.
        truncate (bool, optional): Whether to enforce the cache size on
            every node. Default: ``False``.
        library (:obj:`VideoLibrary` | None, optional): The library providing
            layer sizes. Required when ``truncate=True``. Default: ``None``.
        capacity (float | None, optional): The cache size in bits. If not
            specified, the capacity of the placement is used. Default:
            ``None``.

    Returns:
        :obj:`np.ndarray`: Boolean masks of shape ``(F, L)`` or \
            ``(num_nodes, F, L)``.
    """
    prob = placement[tier]
    shape = prob.shape if num_nodes is None else (num_nodes, ) + prob.shape
    masks = rng.random(shape) < prob

    if truncate:
        if library is None:
            raise ValueError('truncation requires the library')
        if capacity is None:
            capacity = (placement.capacities or dict()).get(tier)
        if capacity is None:
            raise ValueError('truncation requires a capacity for tier '
                             "'{}'".format(tier))

        sizes = library.layer_sizes.ravel()
        # least likely first, ties dropped from the tail of the catalog
        flat = np.arange(sizes.size)
        order = np.lexsort((-flat, prob.ravel()))

        nodes = masks.reshape(-1, sizes.size)
        for node in nodes:
            excess = np.dot(sizes, node) - capacity
            for idx in order:
                if excess <= 0:
                    break
                if node[idx]:
                    node[idx] = False
                    excess -= sizes[idx]

        masks = nodes.reshape(shape)

    return masks
