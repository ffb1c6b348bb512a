"""The three-qubit all-versus-nothing argument, for comparison with the
bipartite trace contradiction.

The GHZ state is a simultaneous eigenstate of xxx, xyy, yxy, yyx with
eigenvalues +1, -1, -1, -1. Assigning definite +/-1 values to the six
local observables forces the product of all four constraints to be +1,
while the targets multiply to -1, so no assignment can satisfy them."""

from steerkit import ghz_lhv_bruteforce, ghz_operator_expectations, ghz_state

exp = ghz_operator_expectations(ghz_state())
names = ("xxx", "xyy", "yxy", "yyx")
for name, value, residual in zip(names, exp.values, exp.eigenstate_residuals):
    print(f"<{name}> = {value:+.12f} (eigenstate residual {residual:.1e})")

count, witness = ghz_lhv_bruteforce()
print(f"\nassignments of +/-1 to (v1x, v2x, v3x, v1y, v2y, v3y): 64")
print(f"assignments satisfying all four constraints: {count}")
print(f"product of the four constraint targets: {witness} (local values force +1)")
