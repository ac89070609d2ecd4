"""Difference sets, Paley sets and the score kernel, printed as a small table."""

import numpy as np

from tuttefourier.fourier import diffset_profile, dft, is_prime, legendre_char, paley_set
from tuttefourier.graph import complete, cycle, multiedge, plane_embedding
from tuttefourier.graphpoly import (
    RestrictedKernel,
    expand_dense,
    l0_unreduced,
    l2_norm_sq,
    l2_tg_predicate,
    score_kernel,
)
from tuttefourier.tutte import tutte_dc


def main():
    print("difference sets")
    print(f"  {{1,2,4}} mod 7: {diffset_profile(7, [1, 2, 4])}")
    for q in (5, 8, 12):
        print(f"  Z_{q} minus 0:   {diffset_profile(q, range(1, q))}")

    print("Paley sets")
    for q in (p for p in range(3, 14) if is_prime(p)):
        power = np.abs(dft(legendre_char(q))) ** 2
        ok, Y, W = l2_tg_predicate(RestrictedKernel(tuple(legendre_char(q)), 1, 0))
        print(f"  q={q:2d} {diffset_profile(q, paley_set(q))}; |dft|^2 off zero = "
              f"{power[1:].real.round(9).min():g}..{power[1:].real.round(9).max():g}; "
              f"autocorrelation Y={Y.real:g} W={W.real:g}")

    print("score kernel x_u + x_v")
    graphs = {"K3": complete(3), "C4": cycle(4), "X_3": multiedge(3), "K4": complete(4),
              "prism": plane_embedding("prism", 3)[0]}
    for name, G in graphs.items():
        T = tutte_dc(G)
        top = max(G.degree(v) for v in range(G.vertex_count))
        l0 = l0_unreduced(G, score_kernel(top + 1))
        l2 = l2_norm_sq(expand_dense(G, score_kernel(3)))
        print(f"  {name:6s} l0={l0:4d} T(2,1)={T(2, 1):4d}   l2^2 mod x^3-1={l2:8.1f} T(2,4)={T(2, 4):6d}")


if __name__ == "__main__":
    main()
