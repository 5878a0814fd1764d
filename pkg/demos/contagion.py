"""Three banks choose links; stable networks thin out as contagion costs rise."""

from fairgame.applications import ContagionParams, lambda_regime_sweep, network_payoffs
from fairgame.applications.contagion import Network, locate_regime_boundaries

for lam, classes in lambda_regime_sweep([0.5, 1.0, 2.0, 2.7, 4.0, 5.0]):
    print(f"lambda={lam:.1f}  stable link counts {classes}")

print("regime changes near:", [round(m, 3) for m, _, _ in locate_regime_boundaries(step=0.01)])

star = Network(3, frozenset({(0, 1), (0, 2)}))
print("star payoffs at lambda=1:", network_payoffs(star, ContagionParams(1.0)).round(3))
