# Lower bounds on cobordisms from the shape of UpsilonTor(t)/t.
#
# Two forms are reported.  "difference" is the sup of the gap between the
# two quotients; "dominance" is the sup of f/t over where f beats g.  The
# headline value is the larger ceiling.

from upsilontor import (crossing_bound, genus_bound, maxima_bound, minima_bound,
                        torus_knot_staircase, upsilon_tor_function)

T = {pq: upsilon_tor_function(torus_knot_staircase(*pq))
     for pq in [(9, 11), (9, 13), (7, 8), (5, 12)]}


def show(name, r):
    forms = ", ".join(f"{k}: sup {v.supremum} at {v.witness_t}" for k, v in r.forms.items())
    print(f"{name:>8}: {r.value}   ({forms})" if forms else
          f"{name:>8}: {r.value}   (sup {r.supremum} at {r.witness_t})")


show("maxima", maxima_bound(T[9, 11], T[9, 13]))
show("minima", minima_bound(T[9, 11], T[9, 13]))
show("genus", genus_bound(T[7, 8], T[5, 12]))
show("crossing", crossing_bound(T[7, 8], T[5, 12]))

# a cobordism from T(9,11) to T(9,13) needs 6 local maxima and 4 minima,
# though both knots have the same Ord_v
