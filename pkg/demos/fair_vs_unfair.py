"""Same surplus, two pay schemes: the Shapley split has equilibria, a hand-made split cycles."""

import numpy as np

from fairgame import CustomTable, build_game, find_deviation_cycle, load_corpus, pure_nash, shapley_table

doc = load_corpus("table1")
e = doc.economy
print("surplus:\n", e.surplus)
print("Shapley payoffs (agent A, agent B):\n", shapley_table(e))

fair = build_game(e)
print("equilibria under Shapley:", [e.labels(x) for x in pure_nash(fair)])

ad_hoc = CustomTable(np.array([[(0, 0), (2, 3), (3, 2)], [(1, 1), (3, 1), (2, 2)]], float))
unfair = build_game(e, ad_hoc)
print("equilibria under the ad hoc split:", pure_nash(unfair))
cyc = find_deviation_cycle(unfair)
print("improvement cycle:", [e.labels(x) for x in cyc.profiles], "total gain", cyc.excess_sum)
