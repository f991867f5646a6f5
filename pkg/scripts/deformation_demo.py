"""Integrate an infinitesimal deformation of (T_2)_lambda, normalize it, twist it.

    python3 scripts/deformation_demo.py [--lambda 2] [--order 3]

Starts from the degree-two cocycle with mu_1(1 (x) 1) = 1 + g, extends it
through the obstruction witnesses, gauges it into a unital and counital
deformation, and transports it along the twist by alpha.
"""

import argparse
from fractions import Fraction

from hombialg.cohomology import CochainVector, apply_total_delta, coboundary_witness
from hombialg.deformations import (TruncatedDeformation, are_equivalent_via, check_unit_counit,
                                   extend_by_witness, normalize_unit, obstruction, residuals,
                                   twist_deformation)
from hombialg.io import format_map
from hombialg.linalg import LinMap
from hombialg.structures import build_taft


def initial_cocycle(B):
    """The cocycle (Delta_1, mu_1) = total coboundary of a fixed h in C^{1,1}."""
    h = LinMap(4, 1, 1, [((0, 0), 1), ((1, 0), 1), ((0, 1), -1), ((1, 1), 1), ((2, 2), -1)])
    return apply_total_delta(B, CochainVector.from_maps(1, [h]))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambda", dest="lam", default="2")
    ap.add_argument("--order", type=int, default=3)
    args = ap.parse_args()

    lam = Fraction(args.lam)
    B = build_taft(lam)
    v = initial_cocycle(B)
    D = TruncatedDeformation.from_terms(B, [v.component(1, 2)], [v.component(2, 1)])
    print(f"order-1 term of (T_2)_{args.lam}:")
    for line in format_map(D.mu_terms[1], B.basis, "mu1"):
        print("   ", line)
    print("infinitesimal is a coboundary:", coboundary_witness(B, D.infinitesimal()) is not None)

    for s in range(2, args.order + 1):
        obs = obstruction(D, s)
        print(f"order {s} obstruction zero={obs.cochain.is_zero()} extendable={obs.extendable}")
        D = extend_by_witness(D, obs)
    print("residuals vanish to order", residuals(D).valid_to)
    print("unit/counit preserved per order:", check_unit_counit(D))

    N, phi = normalize_unit(D)
    print("after normalization:", check_unit_counit(N), "valid:", residuals(N).all_ok,
          "equivalent:", are_equivalent_via(D, N, phi))
    for line in format_map(phi.term(1), B.basis, "Phi1"):
        print("   ", line)

    T = twist_deformation(N, B.alpha)
    print("twist by alpha: residuals vanish:", residuals(T).all_ok,
          "unit/counit:", check_unit_counit(T))


if __name__ == "__main__":
    main()
