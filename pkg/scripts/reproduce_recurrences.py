"""Evolve the three builtin recurrences and print their factor structure.

    python3 scripts/reproduce_recurrences.py --horizon 12
"""

import argparse
import time

from coprimality_lab.analysis import (
    confinement_table,
    coprime_pairs,
    degree_growth,
    irreducible_certify,
    laurent_units,
)
from coprimality_lab.recurrence import evolve, nonqrt3, qrt2, somos4
from coprimality_lab.ring import UnitSpec, is_laurent


def somos(horizon, seed):
    y = evolve(somos4(), horizon)
    u = UnitSpec(monomial_vars=set(y.vars.names), name="R")
    free = [n for n in y.indices() if n >= 5]
    print("somos4")
    print("  Laurent in R:", all(is_laurent(y[n], u) for n in free))
    pairs = coprime_pairs([(n, y[n]) for n in free], u)
    print(f"  co-prime pairs: {sum(map(bool, pairs.values()))}/{len(pairs)}")
    for n in free[:5]:
        v = irreducible_certify(y.rational(n).num, u, seed=seed)
        print(f"  y{n} numerator: {v.kind}")


def confinement(name, spec, horizon):
    x = evolve(spec, horizon + 1)
    u = laurent_units(x.vars)
    print(name)
    for d, prof in confinement_table(x, u):
        ords = ",".join(str(prof.window[n]) for n in sorted(prof.window) if n >= d.entry)
        print(f"  enters at {d.entry:2d}  {prof.label:22s} {d.poly.to_text():30.30s}  ords {ords}")
    later = [n for n in x.indices() if n >= 2]
    pairs = coprime_pairs([(n, x[n]) for n in later], u)
    print(f"  co-prime pairs: {sum(map(bool, pairs.values()))}/{len(pairs)}")
    print("  degrees:", degree_growth(x).degrees)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    somos(max(args.horizon, 9), args.seed)
    confinement("qrt2", qrt2(), args.horizon)
    confinement("nonqrt3", nonqrt3(), min(args.horizon, 9))
    print(f"done in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
