"""Wallis's product three ways: a truncated product, the certified value, and its closed form.

Run with ``python3 demos/wallis_tour.py``.
"""

from wallis import PrecCtx, closed_form, eval_closed_form, eval_product, print_closed_form
from wallis.catalog import GOLDEN, WALLIS
from wallis.identities import gen_radical, gen_rational

ctx = PrecCtx(128, 1e-30)

# a truncated product converges like 1/K, so 10^4 factors give only five correct digits
for K in (10, 100, 10_000):
    r = eval_product(WALLIS, PrecCtx(128, 1.0), terms=K, tail=False)
    print(f"K = {K:>6}  partial product {float(r.value):.12f}")

r = eval_product(WALLIS, ctx)
print(f"with tail, K = {r.K_used}: {r.value.to_str()}")
cf = closed_form(WALLIS)
print(f"closed form {print_closed_form(cf)} = {eval_closed_form(cf, ctx).to_str()}")
print()

# shifting the constants changes the Gamma ratio and so the limit
print("golden ratio:", print_closed_form(closed_form(GOLDEN)), eval_product(GOLDEN, ctx).value.to_str())
for k in (1, 2, 3):
    spec, cf = gen_radical(k)
    print(f"radical k={k}: a={list(map(str, spec.a))} b={list(map(str, spec.b))}  {eval_product(spec, ctx).value.to_str()}")
spec, _ = gen_rational(7, 3)
print("7/3:", eval_product(spec, ctx).value.to_str())
