"""Which edge kernels give Tutte-Grothendieck invariants?

Runs the family probe on a few q x q kernels: constant-diagonal (Potts),
the root-of-unity kernel zeta^(ab), an asymmetric 2 x 2 kernel, and a
random symmetric one.  Only the first kind should come out consistent.
"""

import argparse

import numpy as np

from tuttefourier.tutte import hamming_kernel, root_of_unity_kernel, tg_family_probe


def kernels(q, rng):
    A = rng.normal(size=(q, q))
    return {
        f"potts q={q} w=1 y=3": hamming_kernel(q, 1, 3),
        f"potts q={q} w=0.5+1i y=-2": hamming_kernel(q, 0.5 + 1j, -2),
        f"zeta^(ab), q={q}": root_of_unity_kernel(q),
        "asymmetric [[1,2],[3,1]]": np.array([[1, 2], [3, 1]]),
        f"random symmetric q={q}": A + A.T,
    }


def main():
    p = argparse.ArgumentParser(description="TG family probe on sample kernels")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    a = p.parse_args()
    for name, W in kernels(a.q, np.random.default_rng(a.seed)).items():
        rep = tg_family_probe(W, a.m_max)
        verdict = "consistent" if rep.consistent else f"fails at {rep.first_violation}"
        print(f"{name:32s} {verdict}")
        if rep.consistent:
            pars = ", ".join(f"{k}={complex(v):.4g}" for k, v in rep.params.items())
            print(f"{'':32s} {pars}")


if __name__ == "__main__":
    main()
