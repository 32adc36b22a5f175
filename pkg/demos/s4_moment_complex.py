"""
Translated Bruhat intervals w^-1 [w, wc] for S4 and c = s1 s3 s2, and the
polytopal complex their moment polytopes glue into.

For each length-additive w this prints the top of the translate, the
f-vector of its polytope and its volume, then checks that the untranslated
pieces tile the permutahedron.

    python3 demos/s4_moment_complex.py
"""

from coxcat import build_nc, coxeter_element, root_system
from coxcat.intervals import length_additive_elements, translated_interval
from coxcat.polytope import build_moment_complex, hhmp_tiling_check, moment_polytope


def main():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [1, 3, 2])
    for w in length_additive_elements(c):
        I = translated_interval(w, c)
        P = moment_polytope(I.elements)
        fv = [len(P.faces_of_dim(k)) for k in range(P.dimension)]
        print(f"w = {''.join(map(str, w.one_line))}: top {''.join(map(str, I.bruhat_max.one_line))}, "
              f"f-vector {fv}, volume {P.volume()}")
    mc = build_moment_complex(c)
    nc = build_nc(c)
    print(f"complex f-vector {mc.f_vector()}, Euler characteristic {mc.euler_characteristic()}")
    print(f"1-skeleton has {len(mc.one_skeleton())} edges; Kreweras covers: {len(nc.kreweras_hasse)}")
    rep = hhmp_tiling_check(c)
    print(f"tiling: pieces sum to {rep.total}, permutahedron volume {rep.permutahedron_volume}")


if __name__ == "__main__":
    main()
