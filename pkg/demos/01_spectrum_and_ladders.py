import numpy as np

from nlstar.presets import Preset, resolve_preset
from nlstar.spectrum import FockSpace, commutator, diagonal_operators, ladder_operators

# Poschl-Teller with k = k' = 2 gives e_n = n^2 + 4n
params = resolve_preset(Preset("poschl-teller", k=2, kp=2))
print(params, "r =", params.r)
print("first levels:", params.energy(np.arange(6)))

space = FockSpace(8)
R, L = ladder_operators(params, space)
N, H, G = diagonal_operators(params, space)
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("raising operator:\n", R.entries.real)

# [a-, a+] = G holds away from the truncation edge; the last row is polluted
C = commutator(L, R)
print("diag [a-, a+]:", np.diag(C.entries).real)
print("diag G       :", G.diagonal().real)
print("edge-free block agrees:", np.allclose(C.block(), G.block()))

# [a+-, G] = +-2a a+-
print(np.allclose(commutator(R, G).block(), -2 * params.a * R.block()))
