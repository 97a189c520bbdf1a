"""Print gr*N(M) for every catalog manifold, with timings.

    python3 scripts/catalog_report.py            # all entries
    python3 scripts/catalog_report.py cp2 t4     # selected entries
"""

import argparse
import time

from immersion_cobordism import catalog, clear_caches
from immersion_cobordism.fourgroup import n_group_order
from immersion_cobordism.graded import compute_graded


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help="catalog names (default: all)")
    args = ap.parse_args()

    print(f"{'name':10} {'n':>2} {'f-vector':34} {'or':3} {'EH2 branch':24} {'order':>9} {'|N| (seq)':>10} {'s':>6}")
    for name in args.names or catalog.names():
        clear_caches()
        t0 = time.perf_counter()
        K = catalog.get(name)
        r = compute_graded(K)
        seq = n_group_order(K) if K.dim == 4 and r.orientable else ""
        dt = time.perf_counter() - t0
        branch = r.eh2.branch if r.eh2 else "-"
        order = r.total_order if r.total_order is not None else "undet."
        fv = ",".join(map(str, K.f_vector))
        print(f"{name:10} {K.dim:>2} {fv:34} {'y' if r.orientable else 'n':3} {branch:24} "
              f"{order!s:>9} {seq!s:>10} {dt:6.2f}")
        print("    " + " x ".join(str(f.group) if f.group is not None else "?" for f in r.factors))


if __name__ == "__main__":
    main()
