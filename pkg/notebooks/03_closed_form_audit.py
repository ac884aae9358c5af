# %% [markdown]
# # Auditing the printed closed forms
#
# The closed-form expressions are evaluated exactly as printed and compared
# to the numeric pipeline.  Nothing is patched: a mismatch shows up as a
# FLAGGED comparison with its deviation table.

# %%
from sqconc import SweepGrid, compare_closed_vs_numeric, verify_paper_anchors
from sqconc.analysis import FIXED_VALUE

# %%
for fam, ham in [("werner", "h1"), ("mems", "h1"), ("werner", "h2"), ("mems", "h2")]:
    for grid in (
        SweepGrid("gamma", 0, 1, steps=51),
        SweepGrid("jt", 0, 2, steps=51, gamma=FIXED_VALUE, alpha=FIXED_VALUE),
    ):
        for c in compare_closed_vs_numeric(fam, ham, grid).comparisons:
            print(f"{c.status:<8} {c.label:<22} {c.measure:<15} max|dev|={c.max_abs_deviation:.2e} scale={c.scale:.6f}")

# %% [markdown]
# The numeric anchors quoted for the model, checked one by one.

# %%
report = verify_paper_anchors(grid_steps=21)
for a in report.anchors:
    computed = "-" if a.computed is None else f"{a.computed:.6f}"
    print(f"{a.status:<15} {a.anchor:<30} quoted={a.quoted_value:<10g} computed={computed}")
    if a.note:
        print(f"{'':16}{a.note}")
