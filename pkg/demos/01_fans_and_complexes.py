"""Walkthrough: fans, their validation, and the attached combinatorics.

Builds the rank-one ruled surface fans and a projective space fan, checks
the global predicates, and reads off primitive collections and r_min.
"""

from toricstab import (
    builtin_fan,
    degree_is_null,
    fan_from_max_cones,
    find_degree_vector,
    is_complete,
    is_smooth,
    primitive_collections,
    r_min,
    spans_lattice,
    underlying_complex,
    validate_fan,
)

for k in (1, 2, 3):
    fan = builtin_fan(f"hirzebruch({k})")
    print(f"hirzebruch({k}): rays {fan.rays}")
    report = validate_fan(fan)
    print(f"  valid={report.ok} smooth={is_smooth(fan)} complete={is_complete(fan)} "
          f"spans_lattice={spans_lattice(fan)}")
    prims = sorted(sorted(p) for p in primitive_collections(fan))
    print(f"  primitive collections {prims}, r_min = {r_min(fan)}")
    d = find_degree_vector(fan)
    print(f"  degree vector {d}, kernel check: {degree_is_null(fan, d)}")

print()
cp2 = builtin_fan("cp(2)")
k2 = underlying_complex(cp2)
print("cp(2) faces:", sorted(sorted(f) for f in k2.all_faces()))
print("cp(2) r_min:", r_min(cp2))

print()
print("a broken fan: two overlapping full-dimensional cones")
bad = fan_from_max_cones(2, [(1, 0), (0, 1), (1, 1), (1, -1)], [(0, 1), (2, 3)])
for violation in validate_fan(bad).violations:
    print(" ", violation.kind, "-", violation.detail)
