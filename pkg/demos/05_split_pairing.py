"""At split places with m >= 1 the tau x sigma_m factor needs the conjugate pairing.

Taken literally, the factor L(1+s, tau x sigma_m) pairs the first component of
tau with sigma_m. The identities then fail at split places once m >= 1. They
hold exactly when the two components of tau are exchanged in that one factor.
The reports carry this as ``conjugate_pairing_matches``.
"""

# %% The literal reading fails, the conjugate one matches
from satake_verify.bessel import key_lhs, key_rhs, verify_key_identity, verify_lquotient_factorization
from satake_verify.lfactors import SatakeData
from satake_verify.lgroup import SPLIT

data = SatakeData.generic(1, 1, SPLIT)
print("literal:", key_lhs(data) == key_rhs(data))
print("conjugate:", key_lhs(data, "conjugate") == key_rhs(data))

# %% The reports say the same
for rep in (verify_key_identity(1, 1, SPLIT), verify_lquotient_factorization(1, 1, SPLIT)):
    print(rep.identity_id, rep.status, rep.details.get("conjugate_pairing_matches"))

# %% With m = 0 there is nothing to pair and the split place agrees literally
print(verify_key_identity(1, 0, SPLIT).status)
