"""Two applications: longest common substring and element distinctness from profiles."""
from deltameter.analysis import delta_of, lcs_length
from deltameter.profilers import profile_linear
from deltameter.text import gen_ed_string

x, y = "the quick brown fox jumps", "a quick brown dog jumps"
for algo, b in (("oracle", None), ("fast", 8)):
    print(f"lcs({x!r}, {y!r}) via {algo}: {lcs_length(x, y, algo, b)}")

for arr in ([4, 8, 15, 16, 23, 42], [4, 8, 15, 16, 8, 42]):
    d = delta_of(profile_linear(gen_ed_string(arr))).value
    verdict = "has a duplicate" if d < 2 * len(arr) else "all distinct"
    print(f"{arr}: delta={d} vs 2m={2 * len(arr)} -> {verdict}")
