"""
The Honda formal group law at p = 2
===================================

Build F(x, y) over the rationals from its logarithm, reduce mod 2 and look
at a few n-series.
"""
from morava.fgl import check_approximation, fgl_series, honda_log, n_series, series_reverse

s, D = 2, 32

# the logarithm has the three terms x, x^4/2, x^16/4 below degree 32
print("log:", honda_log(s, D).to_text(ascending=True))
print("exp:", series_reverse(honda_log(s, 20), 20).to_text(ascending=True))

ctx = fgl_series(s, D)
print("F  :", ctx.F.to_text(ascending=True))

for n in (2, 3, -1):
    print(f"[{n}](x) =", n_series(ctx, n).to_text(ascending=True))

# F - x - y is a square, and its root starts xy + (xy)^2 (x + y)
res = check_approximation(ctx)
print("F - x - y = Phi^2 with Phi =", res.phi.to_text(ascending=True))
print("approximation holds modulo (xy)^2 (x+y)^2:", res.passed)

# at height 3 the law is much sparser
print("s=3:", fgl_series(3, 64).F.to_text(ascending=True))
