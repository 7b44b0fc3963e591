"""Synchronizing words for automata whose transition monoid lies in DS.

Run: python demos/synchronizing_ds.py
"""

from rhodes import corpus
from rhodes.automata import cerny_automaton, ds_sync_word, shortest_sync_word, transition_monoid
from rhodes.errors import NotInDS


def report(acts):
    n = len(next(iter(acts.values())))
    res = ds_sync_word(acts)
    best = shortest_sync_word(acts)
    print(f"  {n} states, letters {dict(acts)}")
    print(f"    blocks {res.block_sizes}, killing letters {''.join(res.chosen)}")
    print(f"    word {''.join(res.word)!r} (length {len(res.word)}, bound {res.bound}, "
          f"refined bound {res.refined_bound}); shortest has length {len(best)}")


if __name__ == "__main__":
    print("A three-state example:")
    report({"a": (0, 0, 2), "b": (0, 1, 1)})
    print("Some generated automata:")
    for acts in corpus.random_ds_automata(4, seed=1):
        report(acts)
    for n in (3, 4):
        M, _ = transition_monoid(cerny_automaton(n))
        try:
            ds_sync_word(cerny_automaton(n))
        except NotInDS as exc:
            print(f"Cerny C{n} (monoid of order {M.order}) is outside DS: {exc.witness}; "
                  f"its shortest word has length {len(shortest_sync_word(cerny_automaton(n)))}")
