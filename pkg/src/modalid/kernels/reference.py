"""Pure-Python integration kernels.

Fallback used when the compiled extension is unavailable. Every arithmetic
expression here is kept operation-for-operation identical to _core.pyx so
both backends produce bit-identical curves; change them in lockstep.
"""

from math import cos, sin

BACKEND = "python"


def _series(coeffs, x):
    # Chebyshev series summed lowest degree first (matches a left-to-right sum).
    u = 0.0
    t_prev = 1.0
    u += coeffs[0] * t_prev
    n = len(coeffs)
    if n > 1:
        t_cur = x
        u += coeffs[1] * t_cur
        for k in range(2, n):
            t_next = 2.0 * x * t_cur - t_prev
            u += coeffs[k] * t_next
            t_prev = t_cur
            t_cur = t_next
    return u


def integrate_chord(cx, cy, s, length, scale, out_points, out_rotations):
    """Cumulative-rotation integration applied to the straight chord.

    Per step i: theta = u(s_i) * ds per axis, T <- T * Rx * Ry, and the
    sample point is T applied to (0, 0, s_i), scaled per coordinate.
    """
    cxl = [float(v) for v in cx]
    cyl = [float(v) for v in cy]
    sl = [float(v) for v in s]
    length = float(length)
    scale = float(scale)

    r00 = 1.0; r01 = 0.0; r02 = 0.0
    r10 = 0.0; r11 = 1.0; r12 = 0.0
    r20 = 0.0; r21 = 0.0; r22 = 1.0

    out_points[0, 0] = 0.0
    out_points[0, 1] = 0.0
    out_points[0, 2] = 0.0
    _store_rotation(out_rotations, 0, r00, r01, r02, r10, r11, r12, r20, r21, r22)

    s_prev = sl[0]
    for i in range(1, len(sl)):
        si = sl[i]
        ds = si - s_prev
        x = 2.0 * si / length - 1.0
        tx = _series(cxl, x) * ds
        ty = _series(cyl, x) * ds
        cxr = cos(tx)
        sxr = sin(tx)
        cyr = cos(ty)
        syr = sin(ty)

        # T = T * Rx(tx): only columns 1 and 2 mix.
        m01 = r01 * cxr + r02 * sxr
        m02 = r02 * cxr - r01 * sxr
        m11 = r11 * cxr + r12 * sxr
        m12 = r12 * cxr - r11 * sxr
        m21 = r21 * cxr + r22 * sxr
        m22 = r22 * cxr - r21 * sxr
        # T = T * Ry(ty): only columns 0 and 2 mix.
        r02 = r00 * syr + m02 * cyr
        r00 = r00 * cyr - m02 * syr
        r12 = r10 * syr + m12 * cyr
        r10 = r10 * cyr - m12 * syr
        r22 = r20 * syr + m22 * cyr
        r20 = r20 * cyr - m22 * syr
        r01 = m01
        r11 = m11
        r21 = m21

        out_points[i, 0] = r02 * si * scale
        out_points[i, 1] = r12 * si * scale
        out_points[i, 2] = r22 * si * scale
        _store_rotation(out_rotations, i, r00, r01, r02, r10, r11, r12, r20, r21, r22)
        s_prev = si


def integrate_chained(cx, cy, s, length, scale, out_points, out_rotations):
    """Frame-chaining integration (product-of-exponentials style).

    Per step i: p_i = p_{i-1} + R_{i-1} (0, 0, ds*scale), then
    R_i = R_{i-1} * Rx * Ry with the same per-step angles as chord mode.
    """
    cxl = [float(v) for v in cx]
    cyl = [float(v) for v in cy]
    sl = [float(v) for v in s]
    length = float(length)
    scale = float(scale)

    r00 = 1.0; r01 = 0.0; r02 = 0.0
    r10 = 0.0; r11 = 1.0; r12 = 0.0
    r20 = 0.0; r21 = 0.0; r22 = 1.0
    px = 0.0; py = 0.0; pz = 0.0

    out_points[0, 0] = 0.0
    out_points[0, 1] = 0.0
    out_points[0, 2] = 0.0
    _store_rotation(out_rotations, 0, r00, r01, r02, r10, r11, r12, r20, r21, r22)

    s_prev = sl[0]
    for i in range(1, len(sl)):
        si = sl[i]
        ds = si - s_prev
        x = 2.0 * si / length - 1.0
        tx = _series(cxl, x) * ds
        ty = _series(cyl, x) * ds

        # Translate along the previous frame's local z axis first.
        dz = ds * scale
        px = px + r02 * dz
        py = py + r12 * dz
        pz = pz + r22 * dz

        cxr = cos(tx)
        sxr = sin(tx)
        cyr = cos(ty)
        syr = sin(ty)
        m01 = r01 * cxr + r02 * sxr
        m02 = r02 * cxr - r01 * sxr
        m11 = r11 * cxr + r12 * sxr
        m12 = r12 * cxr - r11 * sxr
        m21 = r21 * cxr + r22 * sxr
        m22 = r22 * cxr - r21 * sxr
        r02 = r00 * syr + m02 * cyr
        r00 = r00 * cyr - m02 * syr
        r12 = r10 * syr + m12 * cyr
        r10 = r10 * cyr - m12 * syr
        r22 = r20 * syr + m22 * cyr
        r20 = r20 * cyr - m22 * syr
        r01 = m01
        r11 = m11
        r21 = m21

        out_points[i, 0] = px
        out_points[i, 1] = py
        out_points[i, 2] = pz
        _store_rotation(out_rotations, i, r00, r01, r02, r10, r11, r12, r20, r21, r22)
        s_prev = si


def _store_rotation(out, i, r00, r01, r02, r10, r11, r12, r20, r21, r22):
    out[i, 0, 0] = r00
    out[i, 0, 1] = r01
    out[i, 0, 2] = r02
    out[i, 1, 0] = r10
    out[i, 1, 1] = r11
    out[i, 1, 2] = r12
    out[i, 2, 0] = r20
    out[i, 2, 1] = r21
    out[i, 2, 2] = r22
