"""Iterated function systems on discretely valued rings and fields, with exact
decision procedures for the topological shrinking conditions (SC) and (SC*)."""

from .balls import Ball, ClopenSet, coset_decompose, normalize, refine_to_uniform_radius, unit_ball
from .dvr import (EQUAL, MIXED, BelowResolution, DvrContext, Element, Unresolved, add, distance,
                  minus_part, shift, sub, valuation)
from .errors import BudgetExceededError, NotACoveringError, PrecisionError
from .maps import (DigitPrepend, Ifs, TailFixing, WindowPrepend, compose_image, system_image,
                   tail_preservation, verify_composition_identity)
from .report import VerificationReport
from .verify import Covering, minimal_k, verify_local_fractality, verify_sc, verify_weak_contraction

__version__ = "0.1.0"
