import itertools
import random

from hypothesis import HealthCheck, settings

from ramsey_automata.words import FINITE, make

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def words_upto(sigma, n):
    out = [()]
    for k in range(1, n + 1):
        out.extend(itertools.product(sigma, repeat=k))
    return out


def nfa_from_seed(seed: int, n_states: int = 3, sigma=("a", "b"), density: float = 0.4):
    rng = random.Random(seed)
    trans = {(p, (a,), rng.randrange(n_states))
             for p in range(n_states) for a in sigma for _ in range(2) if rng.random() < density}
    final = {q for q in range(n_states) if rng.random() < 0.5}
    return make(trans, 0, final, FINITE, 1, range(n_states))


# acceptance lines by criterion number, filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
