from enum import Enum


class MonoidKind(Enum):
    int_sum = "int-sum"
    int_product = "int-product"
    max_with_bottom = "max-with-bottom"
    min_with_top = "min-with-top"
    multiset = "multiset"
    trivial = "trivial"
    table = "table"


class OutputFormat(Enum):
    table = "table"
    json = "json"


class Migration(Enum):
    delta = "delta"
    pi = "pi"
    sigma = "sigma"


class ExitCode(Enum):
    ok = 0
    law_failure = 1
    usage = 2
