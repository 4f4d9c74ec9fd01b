"""Re-verify the four embedded (outer, inner) pairs and show the one collision.

Run: python3 demos/embedded_pairs.py
"""

from oneshot.channel import check_unambiguous
from oneshot.constructions import EMBEDDED_IDS, embedded_code

for cid in EMBEDDED_IDS:
    net, outer, code = embedded_code(cid)
    verdict = check_unambiguous(net, code, outer)
    if verdict is True:
        print(f"{cid}: {len(outer)} codewords, unambiguous")
        continue
    print(f"{cid}: {len(outer)} codewords, AMBIGUOUS")
    for k, v in verdict.as_dict().items():
        print(f"    {k} = {v}")
    print("    replays through the channel:", verdict.replay(net, code))
