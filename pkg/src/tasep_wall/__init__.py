"""Simulation and verification laboratory for TASEP with a deterministic
moving wall: couplings, backwards paths, color-position symmetry,
second-class particle dynamics, exact small-system oracles, and the
Tracy-Widom reference laws they converge to.
"""

from ._bits import NUMBA_ENABLED
from .clockfield import ClockField, WindowViolation
from .core import (DegenerateSample, ParticleConfig, Trajectory,
                   TruncationError, clock_window_for, evolve,
                   evolve_reference, init_bernoulli, init_step, tagged)
from .wall import (BarrierProfile, WallProfile, barrier_survival,
                   classify_linear, evolve_left_frozen, evolve_right_wall,
                   extract_gT, f0_threshold, scaling_constants,
                   wall_clock_window, wall_from_csv)
from .multispecies import (HOLE, ColoredConfig, MixtureLaw, apply_sequence,
                           evolve_colored, invert, project,
                           sample_second_class_final, second_class_track,
                           secondclass_limit_law, swap_W)
from .backpath import (BackwardsPath, build_backwards, crossing_event,
                       event_inclusion_check, min_decomposition,
                       reset_and_replay, sandwich_check,
                       stationary_companion_indices)
from .oracle import (CTMCModel, CapacityError, ColoredCTMC,
                     survival_probability, transient_distribution,
                     verify_prop31, verify_prop33)
from .refdist import (airy_ai, airy_ai_prime, f21_bounds, tw1_cdf, tw2_cdf,
                      tw_moments)
from .stats import (EmpiricalDistribution, dkw_band, ks_distance, ks_pvalue,
                    mixture_test, modulus_of_continuity, rescale_tagged)

__version__ = "0.1.0"
