"""Family E: capacity floor((q - alpha)/(m + 1)) for power t = 2m + alpha.

Builds the repetition scheme for a grid of (t, q), checks each pair through
the channel and decodes every word the terminal can receive.

Run: python3 demos/family_e.py
"""

from oneshot.channel import check_unambiguous, fanout
from oneshot.constructions import family_e_capacity, family_e_construct, family_e_formula
from oneshot.netmodel import family_e

print(" t  q  formula  size  ok")
for t in range(1, 6):
    for q in (2, 3, 5, 9):
        plan = family_e_construct(t, q)
        ok = check_unambiguous(family_e(t, q), plan.code, plan.outer) is True
        print(f"{t:2d} {q:2d} {family_e_formula(t, q):8d} {family_e_capacity(t, q):5d}  {ok}")

t, q = 2, 5
plan = family_e_construct(t, q)
net = family_e(t, q)
for w in plan.outer:
    got = fanout(net, plan.code, w, "T")
    assert all(plan.decode_word(r) == w for r in got)
    print(f"E_{t} q={q}: {w} reaches {len(got)} terminal words, all decode back")
