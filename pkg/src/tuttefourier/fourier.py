"""Functions on Z_q: products, convolution, cross-correlation, DFT, subgroups.

A function on Z_q is a length-q complex numpy array indexed by residue.
Characters use zeta = exp(2 pi i / q) and the transform is
fhat(b) = sum_a f(a) zeta^(-ab).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TAU = 1e-9


def zqfun(values) -> np.ndarray:
    f = np.asarray(values, dtype=complex).ravel()
    if f.size == 0:
        raise ValueError("a function on Z_q needs q >= 1 values")
    return f


def _same_q(f, g):
    f, g = zqfun(f), zqfun(g)
    if f.size != g.size:
        raise ValueError(f"modulus mismatch: {f.size} != {g.size}")
    return f, g


def residues(q: int, S) -> list[int]:
    out = sorted({int(a) % q for a in S})
    return out


def indicator(q: int, S) -> np.ndarray:
    f = np.zeros(q, dtype=complex)
    for a in S:
        f[int(a) % q] += 1
    return f


def delta(q: int, a: int) -> np.ndarray:
    return indicator(q, [a])


def character(q: int, c: int) -> np.ndarray:
    return np.exp(2j * np.pi * ((c * np.arange(q)) % q) / q)


def pointwise(f, g) -> np.ndarray:
    f, g = _same_q(f, g)
    return f * g


def convolve(f, g) -> np.ndarray:
    """(f * g)(a) = sum_b f(b) g(a - b), so delta_a * delta_b = delta_(a+b)."""
    f, g = _same_q(f, g)
    q = f.size
    idx = (np.arange(q)[:, None] - np.arange(q)[None, :]) % q
    return (f[None, :] * g[idx]).sum(axis=1)


def crosscorr(f, g) -> np.ndarray:
    """(f star g)(a) = sum_b conj(f(b)) g(b + a), so delta_a star delta_b = delta_(b-a)."""
    f, g = _same_q(f, g)
    q = f.size
    idx = (np.arange(q)[:, None] + np.arange(q)[None, :]) % q
    return (np.conj(f)[None, :] * g[idx]).sum(axis=1)


def dft_matrix(q: int, sign: int = -1) -> np.ndarray:
    a = np.arange(q)
    return np.exp(sign * 2j * np.pi * (np.outer(a, a) % q) / q)


def dft(f) -> np.ndarray:
    """Direct O(q^2) transform, fhat(b) = <f, chi_b>."""
    f = zqfun(f)
    return dft_matrix(f.size) @ f


def idft(fhat) -> np.ndarray:
    fhat = zqfun(fhat)
    return dft_matrix(fhat.size, sign=1) @ fhat / fhat.size


def inner(f, g) -> complex:
    f, g = _same_q(f, g)
    return complex(np.sum(f * np.conj(g)))


def norm_sq(f) -> float:
    f = zqfun(f)
    return float(np.sum(np.abs(f) ** 2))


# -- subgroups ----------------------------------------------------------------

def is_subgroup(q: int, P) -> bool:
    P = set(residues(q, P))
    if 0 not in P:
        return False
    return all((a + b) % q in P for a in P for b in P)


def annihilator(q: int, P) -> list[int]:
    """Residues b with zeta^(ab) = 1 for every a in the subgroup P."""
    if not is_subgroup(q, P):
        raise ValueError(f"{sorted(P)} is not a subgroup of Z_{q}")
    P = residues(q, P)
    return [b for b in range(q) if all((a * b) % q == 0 for a in P)]


def poisson_check(f, P, b: int) -> tuple[complex, complex]:
    """Both sides of Poisson summation over the subgroup P shifted by b."""
    f = zqfun(f)
    q = f.size
    Pa = annihilator(q, P)
    P = residues(q, P)
    fhat = dft(f)
    lhs = sum(f[(a + b) % q] for a in P)
    chi_b = character(q, b)
    rhs = sum(fhat[a] * chi_b[a] for a in Pa) / len(Pa)
    return complex(lhs), complex(rhs)


# -- difference sets ----------------------------------------------------------

@dataclass(frozen=True)
class DiffsetProfile:
    kind: str  # "difference set", "partial difference set" or "neither"
    params: tuple

    def __str__(self):
        return f"{self.kind} {self.params}" if self.params else self.kind


def diffset_profile(q: int, P, tol: float = TAU) -> DiffsetProfile:
    """Classify P by its autocorrelation delta_P star delta_P."""
    P = residues(q, P)
    k = len(P)
    corr = crosscorr(indicator(q, P), indicator(q, P))
    if abs(corr[0] - k) > tol:
        return DiffsetProfile("neither", ())
    nonzero = corr[1:]
    if q == 1:
        return DiffsetProfile("difference set", (q, k, 0))
    if np.all(np.abs(nonzero - nonzero[0]) <= tol):
        return DiffsetProfile("difference set", (q, k, int(round(nonzero[0].real))))
    inside = [corr[c] for c in range(1, q) if c in P]
    outside = [corr[c] for c in range(1, q) if c not in P]
    if inside and outside:
        ell, m = inside[0], outside[0]
        if all(abs(v - ell) <= tol for v in inside) and all(abs(v - m) <= tol for v in outside):
            return DiffsetProfile(
                "partial difference set", (q, k, int(round(ell.real)), int(round(m.real)))
            )
    return DiffsetProfile("neither", ())


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _odd_prime(q):
    if q % 2 == 0 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")


def paley_set(q: int) -> list[int]:
    """Non-zero squares mod an odd prime q."""
    _odd_prime(q)
    return sorted({a * a % q for a in range(1, q)})


def legendre_char(q: int) -> np.ndarray:
    """Quadratic-residue character as a function on Z_q, zero at 0."""
    squares = set(paley_set(q))
    return np.array([0] + [1 if a in squares else -1 for a in range(1, q)], dtype=complex)


def parse_zqfun(text: str) -> np.ndarray:
    """Parse comma-separated complex literals: ``re``, ``re+imi`` or ``re-imi``."""
    out = []
    for tok in text.split(","):
        if not tok or any(ch.isspace() for ch in tok):
            raise ValueError(f"bad complex literal {tok!r}")
        literal = tok[:-1] + "j" if tok.endswith("i") else tok
        if "j" in tok:
            raise ValueError(f"bad complex literal {tok!r}")
        try:
            out.append(complex(literal))
        except ValueError:
            raise ValueError(f"bad complex literal {tok!r}") from None
    return np.array(out, dtype=complex)
