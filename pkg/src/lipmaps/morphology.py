"""Grey-level Minkowski dilation and erosion with a structuring function.

Windows are clipped to the raster domain: the supremum/infimum at ``x``
runs over the probe offsets that land inside the raster, so no padding
value is ever invented.  On the extended reals this makes both operators
total: a cell whose clipped window is empty yields ``-inf`` (dilation,
empty supremum) or ``+inf`` (erosion, empty infimum).

The implementation is the naive per-offset scan, vectorised one probe
offset at a time; max/min accumulation is order-independent, so this is
bit-identical to the doubly-nested reference loop.
"""

from __future__ import annotations

import numpy as np

from .rasters import Probe

__all__ = ["dilate", "erode", "reflect", "full_overlap_mask", "covered_mask"]


def offset_slices(shape, dy, dx):
    """Destination/source slice pair realising ``out[x] op= f[x + (dy, dx)]``.

    Returns ``None`` when no cell of ``out`` has its offset partner inside
    the raster.
    """
    h, w = shape
    r0, r1 = max(0, -dy), min(h, h - dy)
    c0, c1 = max(0, -dx), min(w, w - dx)
    if r0 >= r1 or c0 >= c1:
        return None
    dst = (slice(r0, r1), slice(c0, c1))
    src = (slice(r0 + dy, r1 + dy), slice(c0 + dx, c1 + dx))
    return dst, src


def dilate(f: np.ndarray, b: Probe) -> np.ndarray:
    """Grey-level dilation ``(f (+) b)(x) = sup { f(x-h) + b(h) : h in D_b }``."""
    f = np.asarray(f, dtype=np.float64)
    out = np.full(f.shape, -np.inf)
    dys, dxs, vals = b.offsets()
    for dy, dx, v in zip(dys, dxs, vals):
        sl = offset_slices(f.shape, -int(dy), -int(dx))
        if sl is None:
            continue
        dst, src = sl
        np.maximum(out[dst], f[src] + v, out=out[dst])
    return out


def erode(f: np.ndarray, b: Probe) -> np.ndarray:
    """Grey-level erosion ``(f (-) b)(x) = inf { f(x+h) - b(h) : h in D_b }``."""
    f = np.asarray(f, dtype=np.float64)
    out = np.full(f.shape, np.inf)
    dys, dxs, vals = b.offsets()
    for dy, dx, v in zip(dys, dxs, vals):
        sl = offset_slices(f.shape, int(dy), int(dx))
        if sl is None:
            continue
        dst, src = sl
        np.minimum(out[dst], f[src] - v, out=out[dst])
    return out


def reflect(b: Probe) -> Probe:
    """Reflected structuring function ``b~(h) = b(-h)``; an involution."""
    h, w = b.shape
    return Probe(
        values=b.values[::-1, ::-1],
        mask=b.mask[::-1, ::-1],
        anchor=(h - 1 - b.anchor[0], w - 1 - b.anchor[1]),
        m=b.m,
    )


def full_overlap_mask(shape, b: Probe) -> np.ndarray:
    """Cells whose probe window lies entirely inside a raster of ``shape``."""
    h, w = shape
    dys, dxs, _ = b.offsets()
    r0, r1 = max(0, -int(dys.min())), min(h - 1, h - 1 - int(dys.max()))
    c0, c1 = max(0, -int(dxs.min())), min(w - 1, w - 1 - int(dxs.max()))
    out = np.zeros(shape, dtype=bool)
    if r0 <= r1 and c0 <= c1:
        out[r0 : r1 + 1, c0 : c1 + 1] = True
    return out


def covered_mask(shape, b: Probe) -> np.ndarray:
    """Cells where at least one probe offset lands inside the raster."""
    out = np.zeros(shape, dtype=bool)
    dys, dxs, _ = b.offsets()
    for dy, dx in zip(dys, dxs):
        sl = offset_slices(shape, int(dy), int(dx))
        if sl is not None:
            out[sl[0]] = True
    return out
