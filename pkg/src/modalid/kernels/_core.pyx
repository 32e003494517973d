"""Compiled integration kernels.

Arithmetic mirrors kernels/reference.py operation for operation (and the
build pins -ffp-contract=off), so both backends produce bit-identical
curves; change them in lockstep.
"""

from libc.math cimport cos, sin

BACKEND = "compiled"


cdef inline double _series(const double[::1] coeffs, double x) noexcept nogil:
    cdef double u = 0.0
    cdef double t_prev = 1.0
    cdef double t_cur
    cdef double t_next
    cdef Py_ssize_t k
    cdef Py_ssize_t n = coeffs.shape[0]
    u += coeffs[0] * t_prev
    if n > 1:
        t_cur = x
        u += coeffs[1] * t_cur
        for k in range(2, n):
            t_next = 2.0 * x * t_cur - t_prev
            u += coeffs[k] * t_next
            t_prev = t_cur
            t_cur = t_next
    return u


def integrate_chord(const double[::1] cx, const double[::1] cy, const double[::1] s,
                    double length, double scale,
                    double[:, ::1] out_points, double[:, :, ::1] out_rotations):
    """Cumulative-rotation integration applied to the straight chord."""
    cdef Py_ssize_t i
    cdef Py_ssize_t n = s.shape[0]
    cdef double r00 = 1.0, r01 = 0.0, r02 = 0.0
    cdef double r10 = 0.0, r11 = 1.0, r12 = 0.0
    cdef double r20 = 0.0, r21 = 0.0, r22 = 1.0
    cdef double m01, m02, m11, m12, m21, m22
    cdef double si, s_prev, ds, x, tx, ty, cxr, sxr, cyr, syr

    with nogil:
        out_points[0, 0] = 0.0
        out_points[0, 1] = 0.0
        out_points[0, 2] = 0.0
        _store_rotation(out_rotations, 0, r00, r01, r02, r10, r11, r12, r20, r21, r22)

        s_prev = s[0]
        for i in range(1, n):
            si = s[i]
            ds = si - s_prev
            x = 2.0 * si / length - 1.0
            tx = _series(cx, x) * ds
            ty = _series(cy, x) * ds
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


def integrate_chained(const double[::1] cx, const double[::1] cy, const double[::1] s,
                      double length, double scale,
                      double[:, ::1] out_points, double[:, :, ::1] out_rotations):
    """Frame-chaining integration (product-of-exponentials style)."""
    cdef Py_ssize_t i
    cdef Py_ssize_t n = s.shape[0]
    cdef double r00 = 1.0, r01 = 0.0, r02 = 0.0
    cdef double r10 = 0.0, r11 = 1.0, r12 = 0.0
    cdef double r20 = 0.0, r21 = 0.0, r22 = 1.0
    cdef double px = 0.0, py = 0.0, pz = 0.0
    cdef double m01, m02, m11, m12, m21, m22
    cdef double si, s_prev, ds, x, tx, ty, cxr, sxr, cyr, syr, dz

    with nogil:
        out_points[0, 0] = 0.0
        out_points[0, 1] = 0.0
        out_points[0, 2] = 0.0
        _store_rotation(out_rotations, 0, r00, r01, r02, r10, r11, r12, r20, r21, r22)

        s_prev = s[0]
        for i in range(1, n):
            si = s[i]
            ds = si - s_prev
            x = 2.0 * si / length - 1.0
            tx = _series(cx, x) * ds
            ty = _series(cy, x) * ds

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


cdef inline void _store_rotation(double[:, :, ::1] out, Py_ssize_t i,
                                 double r00, double r01, double r02,
                                 double r10, double r11, double r12,
                                 double r20, double r21, double r22) noexcept nogil:
    out[i, 0, 0] = r00
    out[i, 0, 1] = r01
    out[i, 0, 2] = r02
    out[i, 1, 0] = r10
    out[i, 1, 1] = r11
    out[i, 1, 2] = r12
    out[i, 2, 0] = r20
    out[i, 2, 1] = r21
    out[i, 2, 2] = r22
