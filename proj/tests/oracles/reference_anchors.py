"""Hand-arithmetic oracle for the model and scenario anchor values.

Plain float arithmetic, written independently of the C++ implementation.
"""

k1, k2, k3, k4, k5 = 5.01, 0.16, 0.04, 0.95, 83.08

# R740 base: 56 cores, 1000 GB HDD, 64 GB memory, 2017, Dell.
terms = [k1 * 56, k2 * 0, k3 * 1000, k4 * 64, k5 * 17]
print("r740 terms        =", [round(t, 10) for t in terms])
print("r740 eq3 total    =", sum(terms) + (-1100 - 400))
print("r740 R740 total   =", sum(terms) + 200)

cpu_chip = 26.71
gpu_chip = 15.69
per_mm2_14 = cpu_chip / 694
per_mm2_12 = gpu_chip / 815
print("chip 14nm/mm2     =", per_mm2_14, " 12nm/mm2 =", per_mm2_12)
print("14nm 347mm2       =", per_mm2_14 * 347)
k6 = (k1 * 56) / cpu_chip
print("k6                =", k6, " gpu pair =", 164.80 / gpu_chip)
v100 = k6 * per_mm2_12 * 815
print("v100 part         =", v100)
print("system total      =", sum(terms) + 200 + v100)
print("system 2x v100    =", sum(terms) + 200 + 2 * v100)

hours = 8760.0
util2 = 1.84 / 2.96
e1 = (1.0 * 250 + 0.0 * 39 + 20) * hours / 1000
e2 = (util2 * 175 + (1 - util2) * 53 + 20) * hours / 1000
print("util2             =", util2)
print("energy sys1       =", e1)
print("energy sys2       =", e2)
ci = {"AZ": 0.395, "CA": 0.234, "TX": 0.438, "NY": 0.188}
for r, c in ci.items():
    print(f"breakeven {r}      =", 2542 / ((e1 - e2) * c))
print("breakeven TX dk=1061 =", 2542 / (1061 * 0.438))
print("NY/TX ratio       =", 0.438 / 0.188, " published", 9.8 / 4.2)
print("2365.2 TX         =", 2365.2 * 0.438)
