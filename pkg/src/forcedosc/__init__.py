"""Periodic solutions of the forced linear oscillator u'' + omega^2 u = h.

Spectral solving on the circle, certified positivity of solutions through
supporting linear forms of degree-one homogeneous functions, and explicit
positive forcings without positive solutions for omega >= 3.
"""

from .counterexample import (CounterexampleBundle, build_counterexample, explore_omega2,
                             symmetry_and_open_question_report, u_star_piecewise, u_star_trigpoly)
from .homogeneous import (HomogeneousLift, SupportingForm, antipodal_gap, convexity_gap, lift,
                          lift_eval, radial_hessian, supporting_form_lemma3)
from .oscillator import (Frequency, KernelCoeffs, ResonanceReport, attach_kernel,
                         particular_solution, residual_sup, resonance_check, voc_oracle)
from .positivity import (MarginReport, NonexistenceCertificate, PositiveSolutionResult,
                         nonexistence_search, positive_solution, positivity_margin)
from .trig import (BoundCertificate, CircleGrid, HarmonicSeries, MollifierSpec, analyze,
                   certified_lower_bound, circular_convolve, differentiate, synthesize)

__version__ = "0.1.0"
