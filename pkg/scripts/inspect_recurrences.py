#!/usr/bin/env python3
"""Hunt for topology-one recurrences and print their full traces.

The reduction argument claims the second blue-yellow inversion always
leaves an interleaving-free state that one more chain inversion finishes;
this script sweeps the exhaustive corpus for counterexamples and prints
each witness's map, pentagon, deleted edge, and event log.
"""

import argparse

from tetracolor.harness import corpus, reduction_instances
from tetracolor.kempe import Inverted, Pattern, Topology, run_procedure


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--limit", type=int, default=5, help="witnesses to print")
    args = ap.parse_args()

    maps = corpus(args.n_max)
    found = 0
    swept = 0
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=True):
        swept += 1
        tr = run_procedure(m, pentagon, deleted_edge=edge)
        if tr.anomaly != "topology-one-recurrence":
            continue
        found += 1
        if found <= args.limit:
            u, v = tr.deleted_edge
            print(f"=== witness {found}: pentagon {pentagon}, "
                  f"deleted edge {u}-{v} ===")
            print(tr.map_text.rstrip())
            for ev in tr.events:
                if isinstance(ev, Pattern):
                    print(f"  pattern  {ev.word}  tbci={ev.tbci}")
                elif isinstance(ev, Topology):
                    print(f"  topology {ev.label}")
                elif isinstance(ev, Inverted):
                    print(f"  invert   {ev.inversion} pair={ev.pair} "
                          f"-> {ev.word_after}")
            print()
    print(f"{found} recurrence witnesses in {swept} instances "
          f"(n <= {args.n_max}, both orientations)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
