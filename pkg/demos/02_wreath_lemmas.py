"""Build the generating set S for S5 wr C2 and S5 wr S3, then replay the
lemma products and compare with their closed forms."""

from wreathmgs.acceptance import branch_b_instance, c2_instance, s3_instance
from wreathmgs.construct import (
    build_S,
    replay_commutator,
    replay_power_k,
    replay_t,
    replay_u,
    validate_lcondition_finite,
)
from wreathmgs.wreath import check_irredundant, closure_order

data = c2_instance()
S = build_S(data)
print("S5 wr C2: |S| =", len(S), " |<S>| =", closure_order(S), " irredundant:", check_irredundant(S))

data = s3_instance()
for e in validate_lcondition_finite(data).entries:
    print(f"  {e.lemma_id:22s} {'ok' if e.all_passed else 'FAILED'} {e.note or ''}")

word = [(0, 1), (2, -1), (1, 1)]
print("t_1 =", replay_t(data, 1, word))
u2, u1 = replay_u(data, word)
print("u_{n-2} =", u2)
print("u_{n-1} =", u1)

h1, h2 = data.F[0], data.F[1]
print(f"[{data.H.element(h1)}, {data.H.element(h2)}] at the last coordinate:",
      replay_commutator(data, h1, h2))

bb = branch_b_instance()
print("branch", bb.branch, "power replays:")
for h in range(bb.H.order):
    print("  ", bb.H.element(h), "->", replay_power_k(bb, h))
