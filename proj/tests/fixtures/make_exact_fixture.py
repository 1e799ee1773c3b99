# Regenerates exact_gp_fixture.h: dense exact GP posterior for 16 uniform
# inputs on [0, 2pi] with noise-free sin targets, sigma_f=1.5, l=1, sigma_n=0.1,
# queried on a 100-point grid. Uses numpy only.
import numpy as np

sf, l, sn = 1.5, 1.0, 0.1
x = np.linspace(0.0, 2.0 * np.pi, 16)
y = np.sin(x)
q = np.linspace(0.0, 2.0 * np.pi, 100)

def k(a, b):
    return sf**2 * np.exp(-0.5 * (a[:, None] - b[None, :]) ** 2 / l**2)

A = k(x, x) + sn**2 * np.eye(16)
ks = k(x, q)
mean = ks.T @ np.linalg.solve(A, y)
var = sf**2 - np.einsum("ij,ij->j", ks, np.linalg.solve(A, ks))

print("// Generated by make_exact_fixture.py. Do not edit.")
print("#ifndef QRFF_TESTS_FIXTURES_EXACT_GP_FIXTURE_H_")
print("#define QRFF_TESTS_FIXTURES_EXACT_GP_FIXTURE_H_")
print()
print("namespace qrff::testing {")
print()
print("inline constexpr int kExactFixtureSize = 100;")
print("// {x, mean, variance}")
print("inline constexpr double kExactFixture[kExactFixtureSize][3] = {")
for a, m, v in zip(q, mean, var):
    print(f"    {{{float(a)!r}, {float(m)!r}, {float(v)!r}}},")
print("};")
print()
print("}  // namespace qrff::testing")
print()
print("#endif  // QRFF_TESTS_FIXTURES_EXACT_GP_FIXTURE_H_")
