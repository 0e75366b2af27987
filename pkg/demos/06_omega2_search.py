# # What happens at omega = 2?
#
# The pair trick needs a zero of the kernel pattern that omega = 2 cannot
# provide, and the question is open. Here we sample even candidates u with
# no cos 2t term, keep those whose forcing u'' + 4u is certified positive,
# and record the best achievable minimum over kernel shifts.

from forcedosc import explore_omega2

report = explore_omega2(seed=42, trials=200, degree=8)
print("accepted %d of %d" % (report["accepted"], len(report["candidates"])))
print("smallest margin among accepted:", report["most_negative_margin"])

# A negative margin here would be a counterexample at omega = 2.
margins = sorted(c["margin"] for c in report["candidates"] if c["accepted"])
print("five smallest:", [round(x, 4) for x in margins[:5]])
