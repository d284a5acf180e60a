"""Substring complexity profiles S_T(k) and delta under explicit working-space budgets."""
from .analysis import (DeltaResult, MeasuresReport, Mismatch, absent_word_lengths, delta_of, lcs_length,
                       repetition_index, verify_profiles)
from .profilers import (ALGORITHMS, Profile, auto_budget, delta_constant_space, profile_blocked,
                        profile_bruteforce, profile_cubic, profile_fast, profile_lce, profile_linear,
                        run_profile)
from .text import (SpaceLedger, TextSource, from_spec, gen_ed_string, gen_fibonacci, gen_random,
                   gen_thue_morse, load_text)

__all__ = [
    "ALGORITHMS", "DeltaResult", "MeasuresReport", "Mismatch", "Profile", "SpaceLedger", "TextSource",
    "absent_word_lengths", "auto_budget", "delta_constant_space", "delta_of", "from_spec", "gen_ed_string",
    "gen_fibonacci", "gen_random", "gen_thue_morse", "lcs_length", "load_text", "profile_blocked",
    "profile_bruteforce", "profile_cubic", "profile_fast", "profile_lce", "profile_linear",
    "repetition_index", "run_profile", "verify_profiles",
]
