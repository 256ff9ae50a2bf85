# %% [markdown]
# # 4F3 past the unit circle when upper parameters collide
#
# For |z| > 1 the usual continuation of 4F3 is a sum of four power series in
# 1/z, one per upper parameter.  When two upper parameters differ by an
# integer their gamma factors blow up and the sum is undefined.  The
# expansions in `hyp43` replace the colliding terms by series in
# `log(-z)`.

# %%
import mpmath

from hyp43 import (
    EpsilonSchedule,
    IntegerDifference,
    ParameterSet,
    SeriesControl,
    classify_pattern,
    epsilon_limit,
    evaluate,
    generic_continuation,
    mellin_barnes,
)

ctl = SeriesControl.for_digits(30)
params = ParameterSet(("0.5", "1.5", "0.3", "0.8"), ("2.7", "1.3", "1.9"))
print(classify_pattern(params.a).describe())

# %% [markdown]
# The generic continuation refuses this parameter set.

# %%
try:
    generic_continuation(params, "-5", ctl)
except IntegerDifference as exc:
    print("generic continuation:", exc)

# %% [markdown]
# `evaluate` recognises the pair and uses the first expansion.  Two
# independent oracles confirm the value: Mellin-Barnes quadrature and the
# confluent limit of the generic continuation.

# %%
res = evaluate(params, "-5", ctl)
mb = mellin_barnes(params, "-5", ctx=ctl.ctx)
eps = epsilon_limit(params, None, "-5", EpsilonSchedule((1e-8, 1e-10)), SeriesControl.for_digits(60))
for r in (res, mb, eps):
    print(f"{r.method.value:>14}  {mpmath.nstr(r.value.real, 28)}  err~{float(r.abs_err_estimate):.1e}")

# %% [markdown]
# ## Along a ray
#
# The same function inside the disc (defining series) and outside (expansion)
# joins smoothly across |z| = 1, where Mellin-Barnes quadrature fills the gap.

# %%
for t in ("0.5", "0.9", "1", "1.1", "2", "10", "100"):
    z = "-" + t
    r = mellin_barnes(params, z, ctx=ctl.ctx) if t == "1" else evaluate(params, z, ctl)
    print(f"z = {z:>5}  F = {mpmath.nstr(r.value.real, 20):>24}  via {r.method.value}")
