"""Reference values computed independently of the library, in mpmath."""
import mpmath as mp
import numpy as np

mp.mp.dps = 30


def j_chi(chi, x):
    """Gamma(chi+1) (2/x)^chi J_chi(x) from the hypergeometric series."""
    return float(mp.hyp0f1(chi + 1, -(mp.mpf(x) / 2) ** 2))


def hermite_gram_schmidt(nmax, chi, x):
    """h_n by Cholesky of the exact moment Gram matrix of x^k e^(-x^2/2).

    <x^i, x^j> = Gamma((i+j)/2 + chi + 1) for i+j even, else 0, against
    |x|^(2chi+1) e^(-x^2) dx.  The n-th row of L^(-1) gives h_n with a
    positive leading coefficient.
    """
    n = nmax + 1
    G = mp.matrix(n, n)
    for i in range(n):
        for j in range(n):
            G[i, j] = mp.gamma(mp.mpf(i + j) / 2 + chi + 1) if (i + j) % 2 == 0 else 0
    L = mp.cholesky(G)
    C = mp.inverse(L)
    out = np.zeros((n, len(x)))
    for k, xv in enumerate(x):
        xm = mp.mpf(float(xv))
        powers = [xm ** i for i in range(n)]
        g = mp.exp(-xm * xm / 2)
        for r in range(n):
            out[r, k] = float(g * mp.fsum(C[r, i] * powers[i] for i in range(r + 1)))
    return out


def frac_dunkl_integral(chi, theta, f, y):
    """Complex value of the 1-D fractional Dunkl transform of real f at y by adaptive quadrature."""
    s, c = mp.sin(theta), mp.cos(theta)
    cot = c / s
    alpha = 1 / (2 ** (chi + 1) * mp.gamma(chi + 1))
    const = mp.expj((chi + 1) * (mp.sign(s) * mp.pi / 2 - theta)) * alpha / abs(s) ** (chi + 1)

    def kern(x):
        z = x * y / s
        jc = mp.hyp0f1(chi + 1, -(z / 2) ** 2)
        jc1 = mp.hyp0f1(chi + 2, -(z / 2) ** 2)
        E = jc + 1j * z / (2 * chi + 2) * jc1
        return mp.expj(-cot * (x * x + y * y) / 2) * E * f(x) * abs(x) ** (2 * chi + 1)

    return complex(const * mp.quad(kern, [-mp.inf, -3, 0, 3, mp.inf]))


def hankel_integral(nu, theta, psi, y):
    """Fractional Hankel transform on the half line by adaptive quadrature."""
    s, c = mp.sin(theta), mp.cos(theta)
    cot = c / s
    alpha = 1 / (2 ** (nu + 1) * mp.gamma(nu + 1))
    const = mp.expj((nu + 1) * (mp.sign(s) * mp.pi / 2 - theta)) * alpha / abs(s) ** (nu + 1)

    def kern(x):
        z = x * y / s
        return mp.expj(-cot * (x * x + y * y) / 2) * mp.hyp0f1(nu + 1, -(z / 2) ** 2) * psi(x) * x ** (2 * nu + 1)

    return complex(2 * const * mp.quad(kern, [0, 3, mp.inf]))
