"""The exponential-measure side: unconditional convex bodies vs strips.

Under the n-fold symmetric exponential measure the comparison set is the
strip {|x_1| <= p}.  Calibrate p so the strip matches the body's measure;
then the body's |x|_1 mass must not exceed the strip's, the dilation curve
dominates for t >= 1 and is dominated for t <= 1, and the whole statement
rewrites as an entropy inequality for the complement indicator.

Run:  python demos/04_exponential_unconditional.py
"""

from sineq import (
    Engine,
    box_body,
    calibrate_strip,
    check_moment_criterion_exponential,
    cross_polytope,
    cube_body,
    exp_strip_first_moment,
    strip_body,
    unconditional_lp_ball,
)
from sineq.verify import body_statistics, dilation_curve

MC = Engine(method="mc", samples=300_000, seed=13)

print("Moment criterion: integral of |x|_1 over K vs the calibrated strip")
print("-------------------------------------------------------------------")
bodies = [
    ("strip p=0.8, n=2 (self-comparison)", strip_body(0.8, 2), Engine(method="exact")),
    ("cube  [-1,1]^2", cube_body(1.0, 2), Engine(method="exact")),
    ("box   [-0.5,0.5]x[-1.5,1.5]", box_body([0.5, 1.5]), Engine(method="exact")),
    ("l1 ball, scale 2, n=2", cross_polytope(2.0, 2), MC),
    ("l3 ball, scale 1.5, n=3", unconditional_lp_ball(3.0, 3, 1.5), MC),
]
for label, body, engine in bodies:
    rep = check_moment_criterion_exponential(body, engine)
    se = f" ± {rep.std_error:.5f}" if rep.std_error else ""
    print(f"{label:38s} slack {rep.slack:+.6f}{se}  -> {rep.verdict}")

print()
print("The entropy reformulation rides along with the criterion:")
rep = check_moment_criterion_exponential(cube_body(1.0, 2), Engine(method="exact"))
ef = rep.entropy_form
print(f"  Ent(1_complement) = {ef.lhs:.6f} <= {ef.rhs:.6f} = int g (|x|_1 - n)")

print()
print("Calibration bookkeeping for the cube [-1,1]^2")
stats = body_statistics(cube_body(1.0, 2), engine=Engine(method="exact"))
p = calibrate_strip(stats.m)
print(f"  measure(K) = {stats.m:.6f} -> strip half-width p = {p:.6f}")
print(f"  strip |x|_1 mass at that p: {exp_strip_first_moment(p, 2):.6f} "
      f"vs body's {stats.moment:.6f}")

print()
print("Dilation curve of the cube, both directions")
print("-------------------------------------------")
rep = dilation_curve(cube_body(1.0, 2), t_grid=(0.5, 0.8, 1.0, 1.5, 2.0, 3.0))
print(f"{'t':>5} {'measure(tK)':>12} {'strip ref':>12} {'margin':>11} dir")
for pt in rep.points:
    print(f"{pt.t:5.2f} {pt.value:12.6f} {pt.reference:12.6f} "
          f"{pt.margin:+11.2e}  {pt.direction}")
print(f"overall: {rep.verdict}")
