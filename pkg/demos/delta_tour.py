"""Profiles and delta for the classic corpora, plus the space each algorithm used."""
from deltameter.analysis import absent_word_lengths, delta_of, timed_profile
from deltameter.profilers import auto_budget
from deltameter.text import gen_fibonacci, gen_random, gen_thue_morse

corpora = {
    "fibonacci F(18)": gen_fibonacci(18),
    "thue-morse 2^11": gen_thue_morse(11),
    "random sigma=4": gen_random(2584, 4, 7),
}

for name, text in corpora.items():
    b = auto_budget(text.n)
    print(f"{name}: n={text.n}, b={b}")
    for algo in ("oracle", "blocked", "lce", "fast"):
        prof, ms = timed_profile(text, algo, b)
        d = delta_of(prof, ms)
        print(f"  {algo:8s} delta={d.value} at k={d.k_arg:<4d} peak={prof.peak_words:>7d} words  {ms:8.1f} ms")
    m = absent_word_lengths(prof, text.distinct_letters())
    print(f"  repetition index {m.r}, longest minimal absent word {m.maw_max}, shortest absent word {m.saw_min}")
