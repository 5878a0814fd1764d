"""Blend Shapley and equal shares, as a flat tax does, and watch where equilibria land."""

from fairgame import Egalitarian, alpha_sweep, build_game, find_alpha0, load_corpus, pure_nash

tax = load_corpus("tax").economy
for alpha in (1.0, 0.8, 0.5):
    g = build_game(tax, Egalitarian(alpha))
    for x in pure_nash(g):
        print(f"alpha={alpha:.2f}  {tax.labels(x)}  payoffs", ", ".join(f"{v:.1f}" for v in g.payoff[x]))

table4 = load_corpus("table4").economy
for row in alpha_sweep(table4, [0.0, 0.5, 0.9, 0.95, 1.0]):
    print(f"alpha={row.alpha:.2f}  equilibria={[table4.labels(x) for x in row.equilibria]}  "
          f"efficient={row.any_efficient}")
print("largest grid alpha with an efficient equilibrium:", find_alpha0(table4))
