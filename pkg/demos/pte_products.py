"""Equal power sums as a source of convergent higher-order products.

Run with ``python3 demos/pte_products.py``.
"""

from fractions import Fraction

from wallis import PTEQuery, PrecCtx, closed_form, eval_closed_form, eval_product, print_closed_form, pte_search, pte_to_spec

ctx = PrecCtx(128, 1e-25)

for order, size, height in [(1, 2, 5), (2, 3, 9), (3, 4, 11)]:
    sols = pte_search(PTEQuery(order, size, height))
    print(f"order {order}, size {size}, height {height}: " + ", ".join(s.text() for s in sols))

# the order-3 solution makes the exponent binom(k+1, 2) = k(k+1)/2 converge
sol = pte_search(PTEQuery(3, 4, 11))[0]
spec = pte_to_spec(sol, 3, scale=Fraction(1, 3))
cf = closed_form(spec)
print("spec a =", [str(x) for x in spec.a], "b =", [str(x) for x in spec.b], "E = k(k+1)/2")
print("closed form:", print_closed_form(cf))
print("product:    ", eval_product(spec, ctx).value.to_str())
print("closed form:", eval_closed_form(cf, ctx).to_str())
