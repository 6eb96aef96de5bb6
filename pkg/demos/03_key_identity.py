"""The key identity behind the local zeta computation, three ways.

The symbolic mode compares both sides as rational functions in generic
Satake coordinates. The specialised mode pins the U_{n+1} parameter to a
point where most terms of the Weyl sum vanish. The numeric mode evaluates
both sides at random rational points.
"""

# %% Both sides at (r, m) = (1, 0), inert
from satake_verify.bessel import key_lhs, key_rhs, verify_key_identity
from satake_verify.lfactors import SatakeData
from satake_verify.lgroup import INERT

data = SatakeData.generic(1, 0, INERT)
print("lhs:", key_lhs(data))
print("rhs:", key_rhs(data))

# %% All three modes
for mode in ("symbolic", "specialized", "numeric"):
    rep = verify_key_identity(1, 1, INERT, mode, trials=5, seed=0)
    print(mode, rep.status, rep.checked)

# %% Numeric spot checks reach ranks where the symbolic sum is too large
print(verify_key_identity(2, 1, INERT, "numeric", trials=10, seed=0).status)
