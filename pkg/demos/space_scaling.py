"""Ledger peaks as n grows: fast at b = ceil(n^(2/3)), blocked and lce at a fixed b."""
from deltameter.profilers import auto_budget, profile_blocked, profile_fast, profile_lce
from deltameter.text import SpaceLedger, gen_random

print(f"{'n':>6} {'algo':>8} {'b':>5} {'peak':>8} {'peak/b':>7}")
for e in (10, 12, 14):
    n = 2 ** e
    text = gen_random(n, 4, e)
    for name, fn, b in (("fast", profile_fast, auto_budget(n)), ("lce", profile_lce, 256),
                        ("blocked", profile_blocked, 256)):
        led = SpaceLedger()
        fn(text, b, led)
        print(f"{n:>6} {name:>8} {b:>5} {led.peak:>8} {led.peak / b:>7.2f}")
