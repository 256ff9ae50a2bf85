# %% [markdown]
# # Printed versus derived coefficient forms
#
# Several published expansion terms disagree with the residues of the
# Mellin-Barnes integrand.  Each disagreement is an entry in the erratum
# table; the selectable ones can be switched back to the printed form.

# %%
import mpmath

from hyp43 import NotConverged, ParameterSet, SeriesControl, errata, expansion_two, mellin_barnes

print(errata.format_errata())

# %% [markdown]
# A triple cluster (m=1, n=2) at z = -2.5.  The derived form matches the
# quadrature oracle; the printed tail forms do not.

# %%
ctl = SeriesControl.for_digits(30)
params = ParameterSet(("0.3", "1.3", "3.3", "0.95"), ("1.4", "2.2", "0.85"))
ref = mellin_barnes(params, "-2.5", ctx=ctl.ctx).value

variants = [(), (errata.TRIPLE_TAIL_HALF,), (errata.TRIPLE_SPECTATOR_SIGN,), (errata.TRIPLE_TAIL_POWER,)]
for variant in variants:
    label = ",".join(variant) or "derived"
    try:
        value = expansion_two(params, None, "-2.5", ctl, use_printed=variant).value
        note = ""
    except NotConverged as exc:
        value, note = exc.partial, "  (diverges; partial sum)"
    print(f"{label:>22}: rel diff {mpmath.nstr(abs(value - ref) / abs(ref), 3)}{note}")
