"""Separability: can one network code serve every good outer code at once?

Run: python3 demos/separability.py
"""

from oneshot.netmodel import bottleneck_network, figure5_network
from oneshot.separability import Metric, check_separable

# three vulnerable parallel edges into one vertex, one edge out, t = 1
res = check_separable(bottleneck_network(2), 2, 2, Metric.hamming(2))
print("bottleneck q=2:", res.verdict, f"after {res.enumerated} tables")
print("failures by code:", res.failing_counts())
ci, wit = res.failure(0, 0, 0)
print("table 0 fails code", res.codes[ci], "with", wit.as_dict())

res = check_separable(bottleneck_network(3), 3, 3, Metric.hamming(3))
print("bottleneck q=3:", res.verdict, "certificate:", res.certificate.as_dict())

res = check_separable(figure5_network(2), 2, 2, Metric.hamming(2))
print("figure 5 q=2:", res.verdict)
if res.witness is not None:
    for v, tab in res.witness.tables.items():
        print(f"  {v}:", tab.tolist())
