"""Zeta-value forms for s = 8: parity, denominators and growth rate."""
from hyperforms import ball
from hyperforms.zetaforms import ZetaFormSpec, asymptotics, direct_value, integrality_check, zeta_form

S = 8

for variant in ("R", "WT"):
    for deriv in (False, True):
        spec = ZetaFormSpec(S, 2, variant, deriv)
        print(f"{variant}{' derivative' if deriv else ''}, n=2:\n  {zeta_form(spec)}")

for n in range(5):
    print(f"integrality at n={n}: {integrality_check(S, n).passed}")

res = asymptotics(S, 30)
print(f"\nln g at the two roots: {res.ln_g_x0.mid_str(12)}, {res.ln_g_x0p.mid_str(12)}")
for n in range(2, 11, 2):
    v = direct_value(ZetaFormSpec(S, n), 30)
    print(f"  n={n:2d}  ln|r_n|/n = {float(ball.ln(abs(v)).mid) / n:.5f}")

for s in (40, 42):
    res = asymptotics(s, 40)
    print(f"s={s}: ln g = {res.ln_g_x0.mid_str(14)} and {res.ln_g_x0p.mid_str(14)}; "
          f"strictly ordered: {res.separated}")
