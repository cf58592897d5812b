"""
Searching for products on small effect algebras
================================================

Enumerate every sequential product on a handful of finite effect algebras.
Only the Boolean ones admit a product, and there it is the meet.
"""
from seqeffect.core import boolean_table, chain, diamond
from seqeffect.search import (SearchProblem, naive_search, search_products,
                              verify_finite_boolean_corollary)

tables = [("MV2", chain(2)), ("MV3", chain(3)), ("MV4", chain(4)),
          ("2^1", boolean_table(1)), ("2^2", boolean_table(2)), ("2^3", boolean_table(3)),
          ("MO2", diamond())]

for name, t in tables:
    res = search_products(SearchProblem(t))
    meet = " (meet)" if res.count and res.is_meet(res.solutions[0]) else ""
    print(f"{name:4} size {t.size}: {res.count} product(s){meet}, "
          f"Boolean={res.boolean_verdict}, {res.node_count} nodes")

# the brute-force enumerator agrees on the small tables
t = boolean_table(2)
print("naive search on 2^2 finds", len(naive_search(t)), "product(s)")

# the same check, packaged as a report
report = verify_finite_boolean_corollary(tables)
print("every table consistent:", report.ok)
