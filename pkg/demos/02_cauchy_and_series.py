"""The Cauchy identity as a truncated series, and why Z = Q^-2 X^2 at inert places."""

# %% Both sides at rank one, inert place, up to Z^4
from satake_verify.bessel import cauchy_sides, generic_linear_pair, verify_cauchy
from satake_verify.lgroup import INERT, SPLIT

S1, S2, Q, X = generic_linear_pair(1, INERT)
lhs, rhs = cauchy_sides(S1, S2, 4, Q, X)
for k in range(5):
    print(f"Z^{k}:", lhs[k], "|", rhs[k])

# %% The report records that the alternative convention X = Q Z fails here
rep = verify_cauchy(1, INERT, 4)
print(rep.status, rep.details["convention"])

# %% Rank two, split place
print(verify_cauchy(2, SPLIT, 4).status)
