import itertools
import random
import typing

from src.backend import Label
from src.category import FinCategory
from src.context import Context
from src.copresheaf import Copresheaf

trials = 8
seeds = [0, 1, 7]


def rng_fn(seed: int = 0) -> random.Random:
    return random.Random(seed)


def small_context(config: typing.Optional[typing.Dict[str, typing.Any]] = None) -> Context:
    ctx = Context(config)
    ctx.universe.truncation = 4
    return ctx


def brute_force_homs(pattern: Copresheaf, data: Copresheaf) -> int:
    """Counts natural transformations by trying every objectwise function."""
    c = pattern.base
    choices = [list(itertools.product(data.rows[a].labels, repeat=len(pattern.rows[a]))) for a in c.objects]
    count = 0
    for choice in itertools.product(*choices):
        component = {a: dict(zip(pattern.rows[a], values)) for a, values in zip(c.objects, choice)}
        if all(component[c.cod[f]][pattern.act(f, x)] == data.act(f, component[c.dom[f]][x])
               for f in c.morphisms for x in pattern.rows[c.dom[f]]):
            count += 1
    return count


def composable_triples(c: FinCategory) -> typing.Iterator[typing.Tuple[Label, Label, Label]]:
    for f, g in c.composable_pairs():
        for h in c.outfacing(c.cod[g]):
            yield f, g, h
