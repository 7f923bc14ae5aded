"""Operator quotients as a second, independent route to validity.

For operators U and V on the same space, the quotient [U/V] is the map
V f -> U f.  It exists exactly when null(V) is contained in null(U), and
its norm is the best c with ||U f|| <= c ||V f||.  Validity of a biframe
system is such a statement in disguise:

    system valid against K   <=>   [K* / H^(1/2)] exists
                                   (H = Hermitian part of the frame operator)

and when it exists,  optimal_lower * norm([K*/H^(1/2)])^2 = 1.

The eigenvalue pencil answers the same question by a completely different
computation, which makes the pair a useful cross-check on both.
"""

import numpy as np

from biframekit import app, optimal_bounds, quotient_norm, validity_cross_check
from biframekit.quotient import transform_equivalences

# --- quotient basics -------------------------------------------------------

u = np.diag([3.0, 1.0, 0.5])
v = np.eye(3)
res = quotient_norm(u, v)
print(f"[diag(3,1,.5) / I]: exists={res.exists}, norm={res.norm}")

# V with a kernel that U does not share: no finite c can work along e_2.
v_singular = np.diag([1.0, 0.0, 1.0])
res = quotient_norm(u, v_singular)
print(f"[diag(3,1,.5) / diag(1,0,1)]: exists={res.exists}, "
      f"violation witness={None if res.violation_witness is None else np.round(res.violation_witness, 6)}")

# --- validity, two ways ----------------------------------------------------

print()
for name in ("example-3-11", "example-3-3", "example-3-5"):
    system = app.fixture(name)
    check = validity_cross_check(system)
    report = optimal_bounds(system)
    product = report.lower_opt * check.quotient_norm**2
    print(f"{name}: pencil={check.pencil_valid}, quotient={check.quotient_bounded}, "
          f"A * norm^2 = {product:.12f}")

# --- pushing a system through a transform ----------------------------------
#
# Applying T to everything gives three equivalent validity predicates: the
# pushed pencil, the plain quotient, and the quotient against the pushed
# form root.  They agree whether T is invertible or rank-deficient.

print()
system = app.fixture("example-3-11")
for label, t in (
    ("invertible T", np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 3.0]])),
    ("rank-1 T", np.outer([1.0, 1.0, 0.0], [0.0, 2.0, 1.0])),
):
    eq = transform_equivalences(system, t)
    print(f"push by {label}: pencil={eq.pushed_valid}, plain quotient="
          f"{eq.quotient_plain}, pushed quotient={eq.quotient_pushed} "
          f"-> all agree: {eq.all_agree}")
