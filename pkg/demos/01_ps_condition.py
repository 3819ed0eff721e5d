"""Search symmetric and wreath-action groups for PS witnesses and steering
elements, and show where small groups fail."""

from wreathmgs.errors import NotSatisfied
from wreathmgs.perm import alternating, cyclic, dihedral, symmetric, wreath_action
from wreathmgs.pscert import find_ps_witness, find_steering

groups = {
    "S4": symmetric(4),
    "S5": symmetric(5),
    "A5": alternating(5),
    "C5": cyclic(5),
    "D5": dihedral(5),
    "C2 wr C3": wreath_action(cyclic(2), cyclic(3)),
    "C2 wr C2 wr C2": wreath_action(wreath_action(cyclic(2), cyclic(2)), cyclic(2)),
}

for name, G in groups.items():
    try:
        w = find_ps_witness(G)
    except NotSatisfied as exc:
        print(f"{name:16s} order {G.order:4d}  fails at {exc.criterion}")
        continue
    st = find_steering(G, w)
    print(f"{name:16s} order {G.order:4d}  X1={sorted(w.x1)} X2={sorted(w.x2)} "
          f"steering {st.case} d={st.d.cycles()}")
