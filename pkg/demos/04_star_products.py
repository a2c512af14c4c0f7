import numpy as np

from nlstar import star
from nlstar.spectrum import FockSpace, OperatorExpr, SpectrumParams, compile_expr, diagonal_operators, ladder_operators
from nlstar.states import Family

params = SpectrumParams(1.0, 4.0)
space = FockSpace(64)
R, L = ladder_operators(params, space)
_, _, G = diagonal_operators(params, space)
z = 0.7 + 0.4j

# z * zbar picks up the G symbol, zbar * z does not
print("zbar * z :", star.star(R, L, Family.GK, params, z), "|z|^2 =", abs(z) ** 2)
print("z * zbar :", star.star(L, R, Family.GK, params, z))
print("G symbol :", star.g_symbol_closed_form(params, z))

# the Moyal bracket reproduces [a-, a+] = G
print("{z, zbar}:", star.moyal(L, R, Family.GK, params, z))

# three routes to the same star product
A = compile_expr(OperatorExpr.parse("RL + 0.5*L"), params, FockSpace(40))
B = compile_expr(OperatorExpr.parse("LL - R + I"), params, FockSpace(40))
for fam, pt in [(Family.GK, z), (Family.PK, 0.4 - 0.2j)]:
    print(fam.value,
          star.star(A, B, fam, params, pt),
          star.star_basis_sum(A, B, fam, params, pt),
          star.star_integral(A, B, fam, params, pt))

# the full identity report
rep = star.run_identity_suite(Family.GK, params, space)
print(rep.counts())
for name in ["gk_z_star_zbar", "gk_mixed_z_star_g", "gk_example_moyal_a_b"]:
    print(f"{name:24s} printed {rep.worst(name, 'paper'):.2e}  corrected {rep.worst(name):.2e}")
