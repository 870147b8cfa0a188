import os
from typing import Any, Callable, Union, Dict, Optional

import yaml

from src.errors import ParseError

SEED_VARIABLE = "POLYAGG_SEED"


class DataClass:
    def serialize(self):
        return serialize(self)


def fn_if_dataclass(instance: Any, fn: Callable):
    return fn(instance) if isinstance(instance, (DataClass, list, tuple, dict)) else instance


def serialize(instance: Union[DataClass, Dict[str, Any]]):
    if isinstance(instance, DataClass):
        attributes = {key: getattr(instance, key) for key in dir(instance) if
                      not key.startswith('_') and not key.endswith('_')}
        return serialize({key: value for key, value in attributes.items() if not isinstance(value, Callable)})
    if isinstance(instance, (list, tuple)):
        return [fn_if_dataclass(itm, serialize) for itm in instance]
    if isinstance(instance, dict):
        return {k: fn_if_dataclass(v, serialize) for k, v in instance.items()}
    return instance


def init_class(instance: DataClass, config: Dict[str, Any]):
    for name in dir(instance):
        if name.startswith("_") or name.endswith("_") or name not in config:
            continue
        attr = getattr(instance, name)
        if isinstance(attr, Callable) and not isinstance(attr, DataClass):
            continue
        if isinstance(attr, DataClass):
            if not isinstance(config[name], dict):
                raise ValueError(f"Section {name} expects a mapping, got {config[name]=}")
            init_class(attr, config[name])
            continue
        setattr(instance, name, config[name])


class Enumeration(DataClass):
    cap: int = 100000  # hom-sets, internal homs, copresheaf hom searches


class Universe(DataClass):
    truncation: int = 8  # largest N in u_K = sum_{N <= K} y^{ord N}


class Suite(DataClass):
    seed: int = 0
    cases: Optional[int] = None  # None runs every suite with its own default case count
    self_test: bool = False


class Output(DataClass):
    format: str = "table"  # see src.constants.OutputFormat for options
    indent: int = 4


class Log(DataClass):
    verbose: bool = False


class WandB(DataClass):
    use_wandb: bool = False
    group: Optional[str] = None
    name: Optional[str] = None
    project: str = 'polyagg'
    entity: Optional[str] = None


class Context(DataClass):
    enumeration: Enumeration = Enumeration()
    universe: Universe = Universe()
    suite: Suite = Suite()
    output: Output = Output()
    log: Log = Log()
    wandb: WandB = WandB()

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.enumeration = Enumeration()
        self.universe = Universe()
        self.suite = Suite()
        self.output = Output()
        self.log = Log()
        self.wandb = WandB()

        if config is None and 'CONFIG' in os.environ:
            with open(os.environ['CONFIG']) as f:
                cfg = f.read()
            config = yaml.safe_load(cfg)
        if config is not None:
            init_class(self, config)

        if SEED_VARIABLE in os.environ:
            try:
                self.suite.seed = int(os.environ[SEED_VARIABLE])
            except ValueError:
                raise ParseError(f"{SEED_VARIABLE} must be an integer", SEED_VARIABLE, os.environ[SEED_VARIABLE])
        self.check()

    def check(self):
        if self.enumeration.cap <= 0:
            raise ValueError(f"Enumeration cap has to be positive. {self.enumeration.cap=}")
        if self.universe.truncation < 0:
            raise ValueError(f"Universe truncation can't be negative. {self.universe.truncation=}")
        if self.suite.cases is not None and self.suite.cases < 0:
            raise ValueError(f"Number of suite cases can't be negative. {self.suite.cases=}")

    def config(self) -> dict:
        return serialize(self.__dict__.copy())

    def __str__(self):
        return yaml.dump(self.config(), indent=4)
