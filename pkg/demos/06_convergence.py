from nlstar import star
from nlstar.spectrum import SpectrumParams
from nlstar.states import Family

params = SpectrumParams(1.0, 4.0)

# worst corrected residual per identity as the Fock space doubles
for fam in Family:
    sweep = star.convergence_sweep(fam, params, dims=(16, 32, 64))
    print(fam.value)
    for name, (r16, r32, r64) in sorted(sweep.items(), key=lambda kv: -kv[1][0])[:6]:
        print(f"  {name:26s} {r16:9.2e} {r32:9.2e} {r64:9.2e}")
