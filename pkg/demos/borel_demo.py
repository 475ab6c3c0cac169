"""The Borel backend: quasi-hereditary evidence and Betti convolution.

Standard modules of the degree-d polynomial category over
k[X_1..X_r]/(X_i^p) are directed with scalar endomorphisms, and minimal
resolutions of outer tensor products convolve the factors' Betti
sequences.
"""

from grquiver import constructions as C
from grquiver import homological as H
from grquiver import polynomial as PY
from grquiver.grmod import character_module

P = 3


def main() -> None:
    for d in (2, 4):
        print(f"degree {d} standard modules (r = 1):")
        for rep in PY.quasi_hereditary_check(P, 1, d):
            print(f"  lambda={rep.weight} dim={rep.dim} "
                  f"passed={rep.passed}")

    a1 = C.borel_algebra(P, 1)
    a2 = C.borel_algebra(P, 1, offset=2)
    m = character_module(a1, (0, 0))
    n = character_module(a2, (0, 0))
    t = C.outer_tensor(m, n)
    bm = H.betti(m, 6).dims
    bn = H.betti(n, 6).dims
    bt = H.betti(t, 6).dims
    conv = [sum(bm[i] * bn[k - i] for i in range(k + 1)) for k in range(6)]
    print("\nBetti(k boxtimes k) =", bt)
    print("convolution        =", conv)


if __name__ == "__main__":
    main()
