"""Walk through the three approximation families: exact forms, how fast they
shrink, the fitted recurrences and the denominators."""
from hyperforms.ball import evaluate_form
from hyperforms.sequences import FAMILIES, build_form, certify_integrality, cross_check, fit_recurrence


def show_forms(name, upto=4):
    print(f"\n{name}: {FAMILIES[name].description}")
    for n in range(upto + 1):
        form = build_form(name, n)
        print(f"  n={n}  {form}  ~ {evaluate_form(form, 30).mid_str(12)}")


for name in ("CATALAN_WT", "LOG2_R", "PI2_R"):
    show_forms(name)

# the two Catalan constructions are different sums with the same value
for n in range(4):
    rep = cross_check("CATALAN_R", "CATALAN_WT", n, 40)
    print(f"CATALAN_R vs CATALAN_WT at n={n}: {'agree' if rep.passed else 'DIFFER'}")

print("\nrecurrences")
print("  LOG2_R :", fit_recurrence("LOG2_R", 2, 1).pretty())
rec = fit_recurrence("PI2_R", 2, 6)      # lower degrees have no solution
print("  PI2_R  : characteristic polynomial", [str(c) for c in rec.characteristic_polynomial()])

print("\ndenominators of CATALAN_WT")
for n in range(1, 7):
    cert = certify_integrality("CATALAN_WT", n)
    print(f"  n={n}  {cert.scaling} clears: {cert.passed}; smallest power of 2 needed: {cert.minimal_power_of_two}")
