"""
A walk through NC(B2, s0 s1): sortable elements, noncrossing partitions,
their noncrossing inversions and positive clusters, and the Betti numbers
read off from cluster sizes.

    python3 demos/b2_catalan_tour.py
"""

from coxcat import build_nc, coxeter_element, root_system
from coxcat.gkm import betti, betti_full
from coxcat.sortable import c_sorting_word, nc_c, sortable_elements


def word(x):
    return "".join(f"s{i}" for i in x.word) or "e"


def main():
    rs = root_system("B", 2)
    c = coxeter_element(rs, [0, 1])
    nc = build_nc(c)
    print(f"|NC(B2, s0s1)| = {len(nc.elements)}, fully supported: {len(nc.positive_subset)}")
    print(f"{'sortable':>10} {'nc_c':>8}  Inv_NC            Clust+")
    for x in sortable_elements(c):
        u = nc_c(x, c)
        sw = "".join(f"s{i}" for i in c_sorting_word(x, c).letters) or "e"
        invs = ", ".join(sorted(word(t) for t in nc.inv_nc[u]))
        clust = ", ".join(str(r.coords) for r in sorted(nc.clust_plus[u], key=lambda r: r.coords))
        print(f"{sw:>10} {word(u):>8}  {invs:<17} {clust}")
    # the cluster sizes give Betti numbers of the noncrossing piece of G/B
    print("Betti numbers (clusters):", betti(c))
    print("Betti numbers (all of G/B):", betti_full(rs))


if __name__ == "__main__":
    main()
