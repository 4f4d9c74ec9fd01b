"""The Diamond network: cut-set bound 1, but only q-1 codewords fit.

Run: python3 demos/diamond.py
"""

from oneshot.channel import NetworkCode, OuterCode, check_unambiguous, fanout
from oneshot.constructions import family_e_construct
from oneshot.netmodel import diamond, singleton_bound
from oneshot.search import joint_search

for q in (2, 3):
    net = diamond(q)
    print(f"q={q}: cut-set bound allows {q}^{singleton_bound(net).value} codewords")
    for M in (q - 1, q):
        res = joint_search(net, M, q)
        print(f"  size {M}: {res.status} ({res.seconds:.2f}s)")

# why forwarding fails: one changed symbol on e1 or e2 moves the terminal word
net = diamond(2)
fwd = NetworkCode.from_functions(net, 2, {"V2": lambda a, b: a})
print("forwarding fanout of 000:", sorted(fanout(net, fwd, (0, 0, 0), "T")))
print("forwarding fanout of 111:", sorted(fanout(net, fwd, (1, 1, 1), "T")))
wit = check_unambiguous(net, fwd, OuterCode(((0, 0, 0), (1, 1, 1)), 2))
print("{000,111} under forwarding: both can reach", wit.received, "at", wit.terminal)

# the q-1 scheme over three symbols
plan = family_e_construct(1, 3)
print("q=3 outer code:", plan.outer.words)
print("unambiguous:", check_unambiguous(diamond(3), plan.code, plan.outer))
