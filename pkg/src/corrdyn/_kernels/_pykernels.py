"""Pure numpy implementations of the hot kernels.

Signatures match the compiled module ``_ckernels`` one for one.
"""

import numpy as np


def _dissipator(rho, ops, rate):
    out = np.zeros_like(rho)
    for op in ops:
        out += op @ rho @ op.conj().T - rho
    return rate * out


def rk4_dissipator(rho0, ops, rate, dt, nsteps, h_last=0.0):
    """Fixed-step RK4 for ``d rho/dt = rate * sum_k (O_k rho O_k^+ - rho)``.

    ``rho0`` is a single 4x4 matrix or a stack of shape ``(n, 4, 4)``; every
    matrix in the stack is advanced by ``nsteps`` steps of ``dt`` followed by
    one step of ``h_last`` when it is positive.
    """
    rho = np.array(rho0, dtype=complex, copy=True)
    ops = np.asarray(ops, dtype=complex)

    def step(r, h):
        k1 = _dissipator(r, ops, rate)
        k2 = _dissipator(r + 0.5 * h * k1, ops, rate)
        k3 = _dissipator(r + 0.5 * h * k2, ops, rate)
        k4 = _dissipator(r + h * k3, ops, rate)
        return r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    for _ in range(int(nsteps)):
        rho = step(rho, dt)
    if h_last > 0.0:
        rho = step(rho, h_last)
    return rho


def _binary_entropy_from_radius(r):
    # eigenvalues (1 +- r)/2 of a qubit state with Bloch radius r
    r = np.clip(r, 0.0, 1.0)
    out = np.zeros_like(r)
    for sign in (1.0, -1.0):
        p = 0.5 * (1.0 + sign * r)
        mask = p > 0.0
        out[mask] -= p[mask] * np.log2(p[mask])
    return out


def conditional_entropy_grid(rho, thetas, phis):
    """``sum_k p_k S(rho_A|k)`` for a von Neumann measurement on qubit B.

    Evaluated on the outer grid ``thetas x phis``; returns shape
    ``(len(thetas), len(phis))``.
    """
    rho = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    ct = np.cos(th) * np.ones_like(ph)
    st = np.sin(th) * np.ones_like(ph)
    e = np.exp(1j * ph) * np.ones_like(th)
    vecs = (
        np.stack([ct + 0j, e * st], axis=-1),
        np.stack([np.conj(e) * st, -ct + 0j], axis=-1),
    )
    total = np.zeros(ct.shape)
    for v in vecs:
        m = np.einsum("...b,abcd,...d->...ac", v.conj(), rho, v)
        p = np.real(m[..., 0, 0] + m[..., 1, 1])
        safe = np.where(p > 0.0, p, 1.0)
        diff = np.real(m[..., 0, 0] - m[..., 1, 1])
        radius = np.sqrt(diff**2 + 4.0 * np.abs(m[..., 0, 1]) ** 2) / safe
        total += np.where(p > 0.0, p * _binary_entropy_from_radius(radius), 0.0)
    return total
