#!/usr/bin/env python3
"""Numeric check of the tau -> -1/tau laws for delta/eps at sample points.

delta_2(-1/tau) = tau^2 delta_1(tau) and eps_2(-1/tau) = tau^4 eps_1(tau),
evaluated at q = e^(2 pi i tau) from the truncated exact expansions, with
the crude geometric tail bounds printed alongside the residuals.
"""

import argparse

from ellgen import delta1, delta2, eps1, eps2, numeric_eval


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--uorder", type=int, default=60)
    args = parser.parse_args()

    order = args.uorder
    d1, d2 = delta1(order), delta2(order)
    e1, e2 = eps1(order), eps2(order)

    print(f"truncation order u^{order}")
    print(f"{'tau':>8} {'|d2(-1/t) - t^2 d1(t)|':>24} {'|e2(-1/t) - t^4 e1(t)|':>24} {'tail':>10}")
    for tau in (1j, 2j, 0.5j, 3j, 0.25 + 1j):
        d2v, d2t = numeric_eval(d2, -1 / tau)
        d1v, d1t = numeric_eval(d1, tau)
        e2v, e2t = numeric_eval(e2, -1 / tau)
        e1v, e1t = numeric_eval(e1, tau)
        rd = abs(d2v - tau**2 * d1v)
        re = abs(e2v - tau**4 * e1v)
        tail = max(d2t, d1t, e2t, e1t)
        print(f"{str(tau):>8} {rd:>24.3e} {re:>24.3e} {tail:>10.1e}")


if __name__ == "__main__":
    main()
