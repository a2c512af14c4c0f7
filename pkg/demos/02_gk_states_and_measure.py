import numpy as np

from nlstar import gk
from nlstar.spectrum import FockSpace, SpectrumParams

params = SpectrumParams(1.0, 4.0)
space = FockSpace(64)

# the GK state is an eigenvector of the lowering operator
for z in [0.5, 1 + 1j, 2.0]:
    print(f"z = {z}: ||(a- - z)c|| = {gk.gk_eigen_residual(params, space, z):.2e}")

# overlaps come in closed form through 0F1
z1, z2 = 0.8 - 0.3j, -0.4 + 1.2j
v1, v2 = gk.gk_state(params, space, z1), gk.gk_state(params, space, z2)
print("kernel:", gk.gk_kernel(params, z1, z2), "inner product:", np.vdot(v1.coeffs, v2.coeffs))

# the Bessel-K weight reproduces the moments rho_n = e_1 ... e_n
for n in range(5):
    print(n, gk.gk_moment(params, n), gk.gk_moment_closed(params, n))

# and resolves the identity; the literal I_r K_{r/2} weight does not
print("resolution residual:", gk.gk_resolution_check(params, space, n_max=10).max())
print("literal weight residuals:", np.round(gk.gk_printed_measure_residuals(params, 5), 3))
