import numpy as np

from nlstar import pk
from nlstar.spectrum import FockSpace, SpectrumParams, commutator

params = SpectrumParams(1.0, 4.0)
space = FockSpace(64)

# displacing the ground state lands on the disc state at zeta = tanh(|z| sqrt a) z/|z|
z = 0.6 + 0.5j
disp = pk.displacement_state(params, space, z)
zeta = pk.zeta_map(params, z)
print("zeta =", zeta.zeta)
print("max coefficient gap:", np.abs(disp.coeffs - pk.pk_state(params, space, zeta).coeffs).max())

# without a guard band the truncated exponential leaks into the top levels
bad = pk.displacement_state(params, space, 1.1, guard=0)
good = pk.pk_state(params, space, pk.zeta_map(params, 1.1))
print("unguarded gap at |z| = 1.1:", np.abs(bad.coeffs - good.coeffs).max())

# a- does not diagonalise disc states, but A- = f(N) a- does
A, Ap, f = pk.modified_ladder(params, space)
s = pk.pk_state(params, space, 0.5j)
print("<A->:", s.expect(A), " <A+>:", s.expect(Ap))
print("[A-, A+] = D(N):", np.allclose(commutator(A, Ap).block(), pk.d_operator(params, space).block()))

# truncation matters near the rim of the disc
print("tail mass at |zeta| = 0.8, D = 64:", pk.pk_state(params, space, 0.8).tail_mass)
print("dimension needed for 1e-12:", pk.suggest_pk_dim(params, 0.8))
