"""Show how the Gamma pairing and the PV pairing differ by (-1)^N.

With three variables, as in the Fermat system (7; 1, 1, 1), the plain comparison
is off by a sign on every entry, while two variables (E7) agree outright.

Run with: python3 demos/odd_variable_sign.py
"""

import mpmath as mp

from lgverify.classes import chern_pairing_integer, gamma_class, nonsym_pairing
from lgverify.weights import WeightSystem

PREC = 128

for ws in (WeightSystem(9, (2, 3)), WeightSystem(7, (1, 1, 1)), WeightSystem(5, (1,))):
    print(f"{ws.label} with N = {ws.n}")
    for i, j in ((0, 0), (0, ws.d - 1), (1, 0)):
        left = nonsym_pairing(gamma_class(ws, i, PREC), gamma_class(ws, j, PREC)).value
        right = chern_pairing_integer(ws, i, j)
        print(f"  [G ch C({i}), G ch C({j})) = {mp.nstr(left.real, 12):>16}    (ch, ch)^PV = {right:>3}")
    print()
