import itertools

import pytest
from hypothesis import settings

from findyn.generators import runex

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def runex_system():
    return runex().system()


def brute_states(p, n):
    """GF(p)^n in little-endian order, independent of the package's helpers."""
    return [rev[::-1] for rev in itertools.product(range(p), repeat=n)]


def brute_step_word(S, word, c):
    c = list(c)
    for i in word:
        c[i - 1] = S.locals[i - 1](*c)
    return tuple(c)


def brute_step_parallel(S, c):
    return tuple(f(*c) for f in S.locals)


def brute_periodic(succ):
    """Periodic points of a finite map given as a dict, by iterating |X| times."""
    cur = {x: x for x in succ}
    for _ in range(len(succ)):
        cur = {x: succ[y] for x, y in cur.items()}
    # after |X| steps every orbit sits on its cycle
    image = set(cur.values())
    return {x for x in image}


def random_system(rng, p, n, density=1.0):
    """System with random truth tables; each local ignores each variable with prob 1 - density."""
    from findyn.multipoly import mp_interpolate
    from findyn.system import build_system

    locals_ = []
    for _ in range(n):
        keep = [i for i in range(n) if rng.random() < density]
        vals = {}
        for c in brute_states(p, n):
            key = tuple(c[i] for i in keep)
            if key not in vals:
                vals[key] = rng.randrange(p)
        locals_.append(mp_interpolate(p, n, [vals[tuple(c[i] for i in keep)] for c in brute_states(p, n)]))
    return build_system(p, locals_)
