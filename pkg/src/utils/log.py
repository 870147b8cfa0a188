import collections
import datetime
import time
from typing import Dict, Optional

from src.context import Context


def log(arg: str, verbose: bool):
    if verbose:
        print(datetime.datetime.now(), arg)


def timeit(text: str, fn, *args, pad=50, verbose: bool = True, **kwargs):
    start_time = time.time()
    if not verbose:
        return fn(*args, **kwargs)
    print(f'{text}..', end='', flush=True)
    out = fn(*args, **kwargs)
    print(f"{' ' * (pad - len(text))}Took:{time.time() - start_time:9.2f}s", flush=True)
    return out


class SuiteLog:
    """Per-suite case, failure and timing counters, mirrored to Weights & Biases when enabled."""

    def __init__(self, ctx: Context, run=None):
        self.ctx = ctx
        self.run = run
        self.scalars: Dict[str, Dict[str, float]] = collections.defaultdict(dict)

    @classmethod
    def from_context(cls, ctx: Context) -> 'SuiteLog':
        if not ctx.wandb.use_wandb:
            return cls(ctx)
        import wandb
        run = wandb.init(project=ctx.wandb.project, entity=ctx.wandb.entity, config=ctx.config(),
                         name=ctx.wandb.name, group=ctx.wandb.group)
        return cls(ctx, run)

    def __call__(self, suite: str, cases: int, failures: int, elapsed: float, step: Optional[int] = None):
        items = {f"{suite}/Cases": cases, f"{suite}/Failures": failures, f"{suite}/Seconds": elapsed,
                 f"{suite}/Cases per Second": cases / max(elapsed, 1e-9)}
        self.scalars[suite].update(items)
        log(f"{suite}: {cases} cases, {failures} failures, {elapsed:.2f}s", self.ctx.log.verbose)
        if self.run is not None:
            self.run.log(items, step=step)

    def finish(self):
        if self.run is not None:
            self.run.finish()
