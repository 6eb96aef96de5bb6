"""Characters of the non-connected unitary L-group, evaluated by fixed-point sums.

Run with ``python demos/01_weyl_characters.py``.
"""

# %% A generic point of the twisted torus of U_3 at an inert place
from satake_verify.lgroup import INERT, SPLIT, classify_weight, unitary
from satake_verify.wcf import char_fixed_point_sum, generic_element, verify_parabolic_d_sum, ParabolicSpec

table, S = generic_element(unitary(3, INERT))
print("coordinates:", S.coords)

# %% Twisted characters: only Galois-invariant weights contribute
for weight in [(0, 0, 0), (1, 0, -1), (2, 0, -2)]:
    print(weight, "->", char_fixed_point_sum(weight, S))

# %% Singular weights give zero, regular ones move to a dominant weight with a sign
g = unitary(2, SPLIT)
for weight in [(-1, 0), (-2, 0), (2, -1)]:
    print(weight, "->", classify_weight(weight, g))

# %% The parabolic D-sum collapses to one
print(verify_parabolic_d_sum(unitary(3, SPLIT), ParabolicSpec((2, 1))))
