import numpy as np

from nlstar import gk, pk, star
from nlstar.spectrum import FockSpace, SpectrumParams
from nlstar.states import Family

harm = SpectrumParams(0.0, 1.0)
space = FockSpace(64)

# both families collapse onto the canonical coherent state
z = 0.6 - 0.3j
print(np.allclose(gk.gk_state(harm, space, z).coeffs, pk.pk_state(harm, space, z).coeffs))

_, _, f = pk.modified_ladder(harm, space)
print("f(N) = I:", np.array_equal(f.entries, np.eye(64)))
print("D(N) = I:", np.array_equal(pk.d_operator(harm, space).entries, np.eye(64)))

# small a approaches the a = 0 branch smoothly
near = SpectrumParams(1e-6, 1.0)
for z in [0.25, 0.5, 1.0]:
    gap_gk = np.abs(gk.gk_state(near, space, z).coeffs - gk.gk_state(harm, space, z).coeffs).max()
    gap_pk = np.abs(pk.pk_state(near, space, pk.zeta_map(near, z)).coeffs - pk.pk_state(harm, space, z).coeffs).max()
    print(f"|z| = {z}: GK {gap_gk:.1e}  PK {gap_pk:.1e}")

for fam in Family:
    print(fam.value, star.run_identity_suite(fam, harm, space).counts())
