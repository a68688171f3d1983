# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log2, cos, sin

cnp.import_array()

ctypedef double complex cplx


cdef inline cplx _conj(cplx z) noexcept nogil:
    return z.real - 1j * z.imag


DEF MAXOPS = 8


cdef struct Jump:
    int monomial
    int perm[4]
    cplx phase[4]
    cplx dense[16]


cdef void _rhs(const cplx* r, const Jump* ops, int nops, double rate,
               cplx* tmp, cplx* out) noexcept nogil:
    cdef int k, i, j, l
    cdef cplx acc
    cdef const Jump* o
    for i in range(16):
        out[i] = -nops * r[i]
    for k in range(nops):
        o = &ops[k]
        if o.monomial:
            # O has a single entry per row: (O r O^+)_ij = a_i conj(a_j) r_{p(i) p(j)}
            for i in range(4):
                for j in range(4):
                    out[4 * i + j] = out[4 * i + j] + o.phase[i] * _conj(o.phase[j]) * r[4 * o.perm[i] + o.perm[j]]
            continue
        for i in range(4):
            for j in range(4):
                acc = 0
                for l in range(4):
                    acc = acc + o.dense[4 * i + l] * r[4 * l + j]
                tmp[4 * i + j] = acc
        for i in range(4):
            for j in range(4):
                acc = 0
                for l in range(4):
                    acc = acc + tmp[4 * i + l] * _conj(o.dense[4 * j + l])
                out[4 * i + j] = out[4 * i + j] + acc
    for i in range(16):
        out[i] = rate * out[i]


cdef void _load_jump(Jump* jump, const cplx[:, ::1] op) noexcept nogil:
    cdef int i, j, count
    jump.monomial = 1
    for i in range(4):
        count = 0
        jump.perm[i] = 0
        jump.phase[i] = 0
        for j in range(4):
            jump.dense[4 * i + j] = op[i, j]
            if op[i, j].real != 0.0 or op[i, j].imag != 0.0:
                count += 1
                jump.perm[i] = j
                jump.phase[i] = op[i, j]
        if count > 1:
            jump.monomial = 0


cdef void _step(cplx* r, const Jump* ops, int nops, double rate, double h) noexcept nogil:
    cdef cplx k1[16]
    cdef cplx k2[16]
    cdef cplx k3[16]
    cdef cplx k4[16]
    cdef cplx y[16]
    cdef cplx tmp[16]
    cdef int i
    _rhs(r, ops, nops, rate, tmp, k1)
    for i in range(16):
        y[i] = r[i] + 0.5 * h * k1[i]
    _rhs(y, ops, nops, rate, tmp, k2)
    for i in range(16):
        y[i] = r[i] + 0.5 * h * k2[i]
    _rhs(y, ops, nops, rate, tmp, k3)
    for i in range(16):
        y[i] = r[i] + h * k3[i]
    _rhs(y, ops, nops, rate, tmp, k4)
    for i in range(16):
        r[i] = r[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])


def rk4_dissipator(rho0, ops, double rate, double dt, long nsteps, double h_last=0.0):
    arr = np.array(rho0, dtype=np.complex128, copy=True)
    single = arr.ndim == 2
    stack = np.ascontiguousarray(arr.reshape(-1, 4, 4))
    op_arr = np.ascontiguousarray(ops, dtype=np.complex128).reshape(-1, 4, 4)
    if op_arr.shape[0] > MAXOPS:
        raise ValueError("too many jump operators")
    cdef cplx[:, :, ::1] rs = stack
    cdef const cplx[:, :, ::1] o = op_arr
    cdef int nops = op_arr.shape[0]
    cdef Jump jumps[MAXOPS]
    cdef cplx r[16]
    cdef Py_ssize_t n, m, i, nmat = rs.shape[0]
    with nogil:
        for i in range(nops):
            _load_jump(&jumps[i], o[i])
        for m in range(nmat):
            for i in range(16):
                r[i] = rs[m, i // 4, i % 4]
            for n in range(nsteps):
                _step(r, jumps, nops, rate, dt)
            if h_last > 0.0:
                _step(r, jumps, nops, rate, h_last)
            for i in range(16):
                rs[m, i // 4, i % 4] = r[i]
    return stack[0] if single else stack.reshape(arr.shape)


cdef inline double _h2(double r) noexcept nogil:
    cdef double p, out = 0.0
    if r > 1.0:
        r = 1.0
    if r < 0.0:
        r = 0.0
    p = 0.5 * (1.0 + r)
    if p > 0.0:
        out -= p * log2(p)
    p = 0.5 * (1.0 - r)
    if p > 0.0:
        out -= p * log2(p)
    return out


def conditional_entropy_grid(rho, thetas, phis):
    cdef const cplx[:, :] R = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const double[:] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef const double[:] ph = np.ascontiguousarray(phis, dtype=np.float64)
    result = np.empty((th.shape[0], ph.shape[0]), dtype=np.float64)
    cdef double[:, :] res = result
    cdef Py_ssize_t i, j, k, a, c, b, d
    cdef cplx v[2]
    cdef cplx m[2][2]
    cdef cplx e
    cdef double ct, st, p, diff, total
    with nogil:
        for i in range(th.shape[0]):
            ct = cos(th[i])
            st = sin(th[i])
            for j in range(ph.shape[0]):
                e = cos(ph[j]) + 1j * sin(ph[j])
                total = 0.0
                for k in range(2):
                    if k == 0:
                        v[0] = ct
                        v[1] = e * st
                    else:
                        v[0] = _conj(e) * st
                        v[1] = -ct
                    for a in range(2):
                        for c in range(2):
                            m[a][c] = 0
                            for b in range(2):
                                for d in range(2):
                                    m[a][c] = m[a][c] + _conj(v[b]) * R[2 * a + b, 2 * c + d] * v[d]
                    p = m[0][0].real + m[1][1].real
                    if p > 0.0:
                        diff = m[0][0].real - m[1][1].real
                        total += p * _h2(sqrt(diff * diff + 4.0 * (m[0][1].real * m[0][1].real
                                                                    + m[0][1].imag * m[0][1].imag)) / p)
                res[i, j] = total
    return result
