"""Closed-form amplitudes of squeezed coherent states (one mode, real
squeeze parameter r).

Conventions used everywhere in this package: the squeezed coherent state
|beta, r> is the eigenstate of b = cosh(r) a + sinh(r) a^dag with
eigenvalue beta, obtained by squeezing the coherent state |beta>.  For
r > 0 the position-like quadrature q = (a + a^dag)/sqrt(2) is compressed,
Var q = e^{-2r}/2, and the momentum-like quadrature is stretched,
Var p = e^{2r}/2.  These amplitudes are the generating functions from
which every squeezed-number-state quantity in the package is extracted.
"""

from __future__ import annotations

import cmath
import math

from .special import hermite_complex, log_factorial

__all__ = [
    "overlap_coherent",
    "fock_amplitude_scs",
    "position_wf_scs",
    "momentum_wf_scs",
    "position_variance",
    "momentum_variance",
    "wave_packet_center",
]

R_EPS = 1e-12  # |r| below this is treated as no squeezing at all


def _real_displacement(beta) -> float:
    if isinstance(beta, complex):
        if beta.imag != 0.0:
            raise ValueError(
                "quadrature wave functions are defined for real displacement only; "
                f"got beta = {beta!r}")
        return beta.real
    return float(beta)


def position_variance(r: float) -> float:
    """Var q of any |beta, r>: e^{-2r}/2."""
    return 0.5 * math.exp(-2.0 * r)


def momentum_variance(r: float) -> float:
    """Var p of any |beta, r>: e^{2r}/2."""
    return 0.5 * math.exp(2.0 * r)


def wave_packet_center(beta: float, r: float) -> float:
    """Mean position of |beta, r> for real beta: sqrt(2) e^{-r} beta.

    The center scales with the same e^{-r} factor as the spread, since
    squeezing acts on the quadrature operator as a whole.
    """
    return math.sqrt(2.0) * math.exp(-r) * beta


def overlap_coherent(alpha: complex, beta: complex, r: float) -> complex:
    """<alpha | beta, r>: coherent bra against squeezed coherent ket.

    cosh^{-1/2}(r) exp(-|alpha|^2/2 - |beta|^2/2
                       - tanh(r) alpha*^2 / 2 + tanh(r) beta^2 / 2
                       + alpha* beta / cosh(r))
    """
    alpha = complex(alpha)
    beta = complex(beta)
    t = math.tanh(r)
    ch = math.cosh(r)
    expo = (-0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2
            - 0.5 * t * alpha.conjugate() ** 2 + 0.5 * t * beta ** 2
            + alpha.conjugate() * beta / ch)
    return cmath.exp(expo) / math.sqrt(ch)


def fock_amplitude_scs(n: int, beta: complex, r: float) -> complex:
    """<n | beta, r>: photon amplitude of a squeezed coherent state.

    Evaluated as

        tanh^{n/2}(r) / sqrt(2^n n! cosh r)
            * H_n(beta / sqrt(2 sinh r cosh r))
            * exp(-|beta|^2/2 + tanh(r) beta^2/2)

    with the Hermite factor computed by the rescaled complex recurrence,
    because H_n at small argument still grows like sqrt(n!) and overflows
    a plain float near n ~ 300.  At r = 0 the Hermite argument diverges
    while the product stays finite, so that case dispatches to the plain
    coherent-state expansion beta^n / sqrt(n!) e^{-|beta|^2/2}.  Negative
    r works through the principal complex branches: the i^n from
    tanh^{n/2} cancels against the i^{-(n-2k)} from the Hermite argument
    term by term.
    """
    if n < 0:
        raise ValueError("photon index must be nonnegative")
    beta = complex(beta)
    if abs(r) < R_EPS:
        if beta == 0:
            return 1.0 + 0j if n == 0 else 0.0j
        logmag = n * math.log(abs(beta)) - 0.5 * log_factorial(n) - 0.5 * abs(beta) ** 2
        return cmath.exp(complex(logmag, n * cmath.phase(beta)))
    sh, ch, th = math.sinh(r), math.cosh(r), math.tanh(r)
    w = beta / cmath.sqrt(complex(2.0 * sh * ch))
    mant, log_scale = hermite_complex(n, w)
    if mant == 0:
        return 0.0j
    log_amp = (log_scale
               + 0.5 * n * cmath.log(complex(th))
               - 0.5 * (n * math.log(2.0) + log_factorial(n))
               - 0.5 * math.log(ch)
               - 0.5 * abs(beta) ** 2 + 0.5 * th * beta ** 2)
    return mant * cmath.exp(log_amp)


def position_wf_scs(q: float, beta: float, r: float) -> float:
    """<q | beta, r> for real beta: a displaced squeezed Gaussian.

    (2 pi Var q)^{-1/4} exp(-(q - q0)^2 / (4 Var q)) with
    q0 = sqrt(2) e^{-r} beta and Var q = e^{-2r}/2.
    """
    b = _real_displacement(beta)
    var_q = position_variance(r)
    q0 = wave_packet_center(b, r)
    return (2.0 * math.pi * var_q) ** -0.25 * math.exp(-((q - q0) ** 2) / (4.0 * var_q))


def momentum_wf_scs(p: float, beta: float, r: float) -> complex:
    """<p | beta, r> for real beta.

    (2 Var q / pi)^{1/4} exp(-p^2 Var q - i p q0); the Fourier transform
    of :func:`position_wf_scs` with kernel e^{-ipq}/sqrt(2 pi).
    """
    b = _real_displacement(beta)
    var_q = position_variance(r)
    q0 = wave_packet_center(b, r)
    return (2.0 * var_q / math.pi) ** 0.25 * cmath.exp(complex(-p * p * var_q, -p * q0))
