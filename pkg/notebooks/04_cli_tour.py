"""
A tour of the command line
==========================

Every step below is the same as running ``pmod ...`` in a shell; the
script calls ``pmod.cli.main`` so it also works without the console entry
point. Files go to a temporary directory.

Run with ``python notebooks/04_cli_tour.py``.
"""

import json
import tempfile
from pathlib import Path

from pmod.cli import main

work = Path(tempfile.mkdtemp(prefix="pmod-tour-"))


def pmod(*args):
    print("$ pmod", " ".join(map(str, args)))
    code = main([str(a) for a in args])
    print(f"(exit {code})\n")
    return code


# %% a hand-written barcode file
stag = work / "stag.json"
stag.write_text(json.dumps({
    "version": 1, "dim": 2,
    "modules": [
        {"name": "A", "intervals": [{"rect": [[0, 0], [3, 3]]}]},
        {"name": "B", "intervals": [{"rect": [[1, 1], [4, 4]]}]},
    ],
}))
pmod("check", stag)
pmod("dist", f"{stag}#A", f"{stag}#B")
pmod("dist", "--metric", "interleaving", f"{stag}#A", f"{stag}#B")

# %% an invalid interval is rejected with exit code 1
bad = work / "bad.json"
bad.write_text(json.dumps({"version": 1, "dim": 2, "modules": [{"name": "M", "intervals": [{"points": [[0, 0], [1, 1]]}]}]}))
pmod("check", bad)

# %% the two named examples
pmod("example", "instability", "--a", "4", "--out", work / "inst.json")
pmod("example", "tightness", "--delta", "1/2", "--scale", "4", "--out", work / "tight.json")

# %% a tiny oracle budget leaves only a bracket (exit code 2)
pmod("verify-stability", "--budget", "1", f"{work / 'inst.json'}#M", f"{work / 'inst.json'}#N")

# %% pictures
pmod("render", work / "inst.json", "--svg", work / "inst.svg")
pmod("render", work / "tight.json", "--svg", work / "tight.svg", "--module", "M")
print("files in", work, ":", sorted(p.name for p in work.iterdir()))
