"""
Charts for Coxeter Schubert cells over a prime field.

Shows the full Schubert chart and the noncrossing cell chart of a B3
element (x marks entries solved from isotropy, 0 a star set to zero),
samples a point, and lists which extremal Plücker coordinates survive.

    python3 demos/plucker_cells.py
"""

from coxcat import build_nc, coxeter_element, root_system
from coxcat.charts import nc_cell_chart, plucker_vector, sample_point, schubert_chart, verify_plucker_vanishing


def main():
    rs = root_system("B", 3)
    c = coxeter_element(rs, [2, 1, 0])
    nc = build_nc(c)
    u = max(nc.positive_subset, key=lambda x: x.length)
    print("cell", u.one_line, "length", u.length)
    print("Schubert chart:")
    print(schubert_chart(u).render_labelled())
    pat = nc_cell_chart(u, c)
    print("noncrossing cell chart:")
    print(pat.render_labelled())
    pt = sample_point(pat, 10007, seed=1)
    alive = sorted(w.one_line for w, v in plucker_vector(pt).items() if v)
    print(f"nonzero Plücker coordinates at a sample: {len(alive)}, all in NC: "
          f"{all(rs.from_one_line(w) in nc for w in alive)}")
    rep = verify_plucker_vanishing(c, trials=20)
    print(f"sweep over {rep.cells} cells: {len(rep.failures)} failures, "
          f"Pl_u nonzero rate {rep.min_nonvanishing_rate:.2f}")


if __name__ == "__main__":
    main()
