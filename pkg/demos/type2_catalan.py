"""Raising the factor to the power k: Barnes G closed forms and the double-product test.

Run with ``python3 demos/type2_catalan.py``.
"""

from wallis import PrecCtx, closed_form, double_product_reduce, eval_product, print_closed_form
from wallis.catalog import EXP_CATALAN, ROOT_TWO_II
from wallis.identities import eval_double_product
from wallis.products import check_moments

ctx = PrecCtx(128, 1e-30)

for name, spec in [("exp(2K/pi)", EXP_CATALAN), ("sqrt 2", ROOT_TWO_II)]:
    print(f"== {name}")
    for row in check_moments(spec, 2).rows:
        print(f"   order {row.order}: {row.sum_a} vs {row.sum_b}")
    print("   closed form:", print_closed_form(closed_form(spec)))
    print("   product:    ", eval_product(spec, ctx).value.to_str())
    print("   row by row: ", eval_double_product(spec, ctx).to_str())
    res = double_product_reduce(spec)
    print("   residual:   ", res.template())
    if res.reducible:
        print("   reduces to the Type-I spec a =", [str(x) for x in res.reduced.a], "b =", [str(x) for x in res.reduced.b])
    else:
        print("   no Type-I form: the residual does not telescope")
