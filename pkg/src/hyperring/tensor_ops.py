"""Dense tensor-ring algebra: unfoldings, mode products, sub-chains.

Two matricization conventions are used throughout. ``unfold`` orders the
column modes in ascending natural order; ``unfold_ring`` orders them
cyclically starting after the unfolded mode. In both, the first listed
column mode varies slowest. The cyclic convention is the one under which
a tensor ring factors as ``unfold_ring(X, n) = G2(cores[n]) @ unfold_ring(
subchain(cores, n), 1).T``, which the solver relies on.

Modes are 0-based everywhere.
"""

import numpy as np

from ._validation import as_tensor, check_mode


def unfold(x, mode):
    """Matricize ``x`` along ``mode`` with remaining modes in ascending order.

    Returns an array of shape ``(x.shape[mode], prod of the rest)``. The
    column index runs over the remaining modes in their natural order,
    first listed slowest.
    """
    x = as_tensor(x)
    check_mode(mode, x.ndim)
    return np.moveaxis(x, mode, 0).reshape(x.shape[mode], -1)


def fold(m, mode, shape):
    """Inverse of :func:`unfold` back to a tensor of ``shape``."""
    m = np.asarray(m, dtype=np.float64)
    check_mode(mode, len(shape))
    rest = [s for i, s in enumerate(shape) if i != mode]
    if m.shape != (shape[mode], int(np.prod(rest, dtype=np.int64))):
        raise ValueError(
            f"matrix of shape {m.shape} does not fold to {tuple(shape)} at mode {mode}"
        )
    return np.moveaxis(m.reshape([shape[mode]] + rest), 0, mode)


def _ring_order(mode, ndim):
    return [(mode + i) % ndim for i in range(ndim)]


def unfold_ring(x, mode):
    """Matricize ``x`` along ``mode`` with columns ordered cyclically.

    The column modes start at ``mode + 1`` and wrap around, first listed
    slowest, e.g. mode 1 of a 4-way tensor gives columns over modes
    (2, 3, 0).
    """
    x = as_tensor(x)
    check_mode(mode, x.ndim)
    return np.transpose(x, _ring_order(mode, x.ndim)).reshape(x.shape[mode], -1)


def fold_ring(m, mode, shape):
    """Inverse of :func:`unfold_ring` back to a tensor of ``shape``."""
    m = np.asarray(m, dtype=np.float64)
    ndim = len(shape)
    check_mode(mode, ndim)
    order = _ring_order(mode, ndim)
    cyc_shape = [shape[i] for i in order]
    if m.shape != (shape[mode], int(np.prod(cyc_shape[1:], dtype=np.int64))):
        raise ValueError(
            f"matrix of shape {m.shape} does not fold to {tuple(shape)} at mode {mode}"
        )
    return np.transpose(m.reshape(cyc_shape), np.argsort(order))


def mode_product(x, u, mode):
    """Contract matrix ``u`` with ``x`` along ``mode``.

    ``u`` has shape ``(j, x.shape[mode])``; the result replaces extent
    ``mode`` with ``j``.
    """
    x = as_tensor(x)
    u = np.asarray(u, dtype=np.float64)
    check_mode(mode, x.ndim)
    if u.ndim != 2 or u.shape[1] != x.shape[mode]:
        raise ValueError(
            f"matrix of shape {u.shape} cannot contract mode {mode} of extent {x.shape[mode]}"
        )
    shape = list(x.shape)
    shape[mode] = u.shape[0]
    return fold(u @ unfold(x, mode), mode, shape)


def merge_cores(a, b):
    """Contract two 3-way cores over their shared bond.

    ``a`` of shape (r0, i, r1) and ``b`` of shape (r1, j, r2) merge into
    (r0, i * j, r2); in the combined middle index, ``i`` varies slowest.
    """
    a = as_tensor(a)
    b = as_tensor(b)
    if a.ndim != 3 or b.ndim != 3:
        raise ValueError("cores must be 3-way")
    if a.shape[2] != b.shape[0]:
        raise ValueError(f"bond mismatch: {a.shape} against {b.shape}")
    out = np.einsum("aib,bjc->aijc", a, b)
    return out.reshape(a.shape[0], a.shape[1] * b.shape[1], b.shape[2])


def merge_chain(cores):
    """Left-fold :func:`merge_cores` over a sequence of cores."""
    if not cores:
        raise ValueError("empty chain")
    out = as_tensor(cores[0])
    for c in cores[1:]:
        out = merge_cores(out, c)
    return out


def check_ring(cores):
    """Validate that ``cores`` form a closed ring of 3-way tensors."""
    if not cores:
        raise ValueError("no cores")
    cores = [as_tensor(c) for c in cores]
    n = len(cores)
    for i, c in enumerate(cores):
        if c.ndim != 3:
            raise ValueError(f"core {i} is {c.ndim}-way, expected 3-way")
        nxt = cores[(i + 1) % n]
        if c.shape[2] != nxt.shape[0]:
            raise ValueError(
                f"rank chain broken between cores {i} and {(i + 1) % n}: "
                f"{c.shape} -> {nxt.shape}"
            )
    return cores


def subchain(cores, skip):
    """Merge all cores except ``cores[skip]``, in cyclic order.

    The result has shape ``(r_{skip+1}, prod of the other extents in
    cyclic order, r_skip)``.
    """
    cores = check_ring(cores)
    n = len(cores)
    if n < 2:
        raise ValueError("subchain needs at least two cores")
    check_mode(skip, n)
    return merge_chain([cores[(skip + 1 + i) % n] for i in range(n - 1)])


def core_matrix(core):
    """Sample-by-feature view of a core: its middle-mode unfolding.

    Shape ``(i, r0 * r1)`` with the left bond index slowest.
    """
    return unfold(core, 1)


def ring_reconstruct(cores):
    """Evaluate the full tensor represented by a ring of cores.

    Element ``(i_0, ..., i_{N-1})`` is the trace of the product of the
    matching lateral slices. Computed via the sub-chain identity rather
    than per-element traces.
    """
    cores = check_ring(cores)
    if len(cores) == 1:
        return np.einsum("aia->i", cores[0])
    m = core_matrix(cores[0]) @ unfold_ring(subchain(cores, 0), 1).T
    shape = [c.shape[1] for c in cores]
    return fold_ring(m, 0, shape)


def subchain_gram(cores, skip):
    """Gram matrix of the skipped-core sub-chain, without materializing it.

    Equals ``B.T @ B`` for ``B = unfold_ring(subchain(cores, skip), 1)``,
    computed by contracting each remaining core with itself over its
    middle mode and chaining the small results. Output is
    ``(r_skip * r_{skip+1})`` square, symmetric PSD.
    """
    cores = check_ring(cores)
    n = len(cores)
    check_mode(skip, n)
    acc = None
    for i in range(n - 1):
        c = cores[(skip + 1 + i) % n]
        # (r, r', s, s') pair contraction over the middle extent
        t = np.einsum("ris,pit->rpst", c, c)
        r, s = c.shape[0], c.shape[2]
        t = t.reshape(r * r, s * s)
        acc = t if acc is None else acc @ t
    r1 = cores[skip].shape[2]  # bond entering the sub-chain
    r0 = cores[skip].shape[0]  # bond leaving it
    acc = acc.reshape(r1, r1, r0, r0)
    gram = np.transpose(acc, (2, 0, 3, 1)).reshape(r0 * r1, r0 * r1)
    # exact symmetry, cheap insurance against gemm round-off
    return 0.5 * (gram + gram.T)
