"""The local zeta sum as a series in Z against its closed form in L-factors."""

# %% Coefficients of both series, (r, m) = (1, 1) at an inert place
from satake_verify.bessel import closed_form_series, verify_unramified_proposition, zeta_series
from satake_verify.lfactors import SatakeData
from satake_verify.lgroup import INERT

data = SatakeData.generic(1, 1, INERT, extra_names=("Z",))
zs = zeta_series(data, 2)
cs = closed_form_series(data, 2)
for k in range(3):
    print(f"Z^{k} agree:", zs[k] == cs[k])

# %% The same comparison as a report
print(verify_unramified_proposition(1, 0, INERT, 4))
