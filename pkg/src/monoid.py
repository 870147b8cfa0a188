"""
Commutative monoids used as attribute types. Every monoid folds finite multisets in one step; binary table monoids
fold over the canonical element order after their tables pass an exhaustive law check.
"""
import collections
import functools
import itertools
import math
from typing import Any, Dict, Iterable, List, Optional, Tuple

from src.backend import Label, render_label
from src.constants import MonoidKind
from src.errors import LawViolation, ParseError, TypeMismatch
from src.poly import FinLabelSet

Multiset = Tuple[Tuple[Label, int], ...]


class CommMonoid:
    kind: MonoidKind

    def unit(self) -> Any:
        raise NotImplementedError

    def fold(self, values: Iterable[Any]) -> Any:
        raise NotImplementedError

    def combine(self, left: Any, right: Any) -> Any:
        return self.fold([left, right])

    def contains(self, value: Any) -> bool:
        raise NotImplementedError

    def normalize(self, value: Any) -> Any:
        """Canonical in-memory form of a value read from a file."""
        return value

    def sample(self) -> List[Any]:
        """A few elements for exhaustive checks over tuples."""
        raise NotImplementedError

    def check(self):
        pass

    def serialize(self) -> Any:
        return self.kind.value

    def __eq__(self, other) -> bool:
        return isinstance(other, CommMonoid) and self.serialize() == other.serialize()

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"{type(self).__name__}()"


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class IntSum(CommMonoid):
    kind = MonoidKind.int_sum

    def unit(self) -> int:
        return 0

    def fold(self, values: Iterable[int]) -> int:
        return sum(values)

    def contains(self, value: Any) -> bool:
        return _is_int(value)

    def sample(self) -> List[int]:
        return [0, 1, 3]


class IntProduct(CommMonoid):
    kind = MonoidKind.int_product

    def unit(self) -> int:
        return 1

    def fold(self, values: Iterable[int]) -> int:
        return math.prod(values)

    def contains(self, value: Any) -> bool:
        return _is_int(value)

    def sample(self) -> List[int]:
        return [1, 0, 2]


class MaxWithBottom(CommMonoid):
    """Integers under max with an adjoined bottom element None."""
    kind = MonoidKind.max_with_bottom

    def unit(self) -> None:
        return None

    def fold(self, values: Iterable[Optional[int]]) -> Optional[int]:
        present = [v for v in values if v is not None]
        return max(present) if present else None

    def contains(self, value: Any) -> bool:
        return value is None or _is_int(value)

    def sample(self) -> List[Optional[int]]:
        return [None, 1, 5]


class MinWithTop(CommMonoid):
    """Integers under min with an adjoined top element None."""
    kind = MonoidKind.min_with_top

    def unit(self) -> None:
        return None

    def fold(self, values: Iterable[Optional[int]]) -> Optional[int]:
        present = [v for v in values if v is not None]
        return min(present) if present else None

    def contains(self, value: Any) -> bool:
        return value is None or _is_int(value)

    def sample(self) -> List[Optional[int]]:
        return [None, -2, 4]


def _multiset_key(item: Tuple[Label, int]) -> Tuple[str, str]:
    return render_label(item[0]), repr(item[0])


class MultisetOver(CommMonoid):
    """Free commutative monoid: multisets as sorted (label, count) pairs. labels=None accepts every label."""
    kind = MonoidKind.multiset

    def __init__(self, labels: Optional[Iterable[Label]] = None):
        self.labels = None if labels is None else FinLabelSet(labels)

    @staticmethod
    def singleton(label: Label) -> Multiset:
        return ((label, 1),)

    @staticmethod
    def of(labels: Iterable[Label]) -> Multiset:
        return tuple(sorted(collections.Counter(labels).items(), key=_multiset_key))

    def unit(self) -> Multiset:
        return ()

    def fold(self, values: Iterable[Multiset]) -> Multiset:
        counts = collections.Counter()
        for value in values:
            for label, count in value:
                counts[label] += count
        return tuple(sorted(counts.items(), key=_multiset_key))

    def contains(self, value: Any) -> bool:
        if not isinstance(value, tuple) or tuple(sorted(value, key=_multiset_key)) != value:
            return False
        labels = [label for label, _ in value]
        if len(set(labels)) != len(labels) or not all(_is_int(count) and count > 0 for _, count in value):
            return False
        return self.labels is None or all(label in self.labels for label in labels)

    def normalize(self, value: Any) -> Any:
        if isinstance(value, list):
            return self.of(value)
        return value

    def sample(self) -> List[Multiset]:
        labels = list(self.labels) if self.labels is not None else ['a', 'b']
        return [(), self.singleton(labels[0]), self.of(labels[:2] * 2)] if labels else [()]

    def serialize(self) -> Any:
        if self.labels is None:
            return self.kind.value
        return {"kind": self.kind.value, "labels": list(self.labels)}


class Trivial(CommMonoid):
    kind = MonoidKind.trivial

    def unit(self) -> str:
        return '*'

    def fold(self, values: Iterable[str]) -> str:
        return '*'

    def contains(self, value: Any) -> bool:
        return value == '*'

    def sample(self) -> List[str]:
        return ['*']


class TableMonoid(CommMonoid):
    kind = MonoidKind.table

    def __init__(self, elements: Iterable[Label], table: Dict[Tuple[Label, Label], Label], unit: Label,
                 check: bool = True):
        self.elements = FinLabelSet(elements)
        self.table = dict(table)
        self._unit = unit
        if check:
            self.check()

    def check(self):
        elements = self.elements
        if self._unit not in elements:
            raise LawViolation("unit is not an element", "table.unit", self._unit)
        for x, y in itertools.product(elements, repeat=2):
            if self.table.get((x, y)) not in elements:
                raise LawViolation("operation table is not total", f"table.op['{render_label(x)}*{render_label(y)}']",
                                   (x, y))
        for x in elements:
            if self.table[(self._unit, x)] != x:
                raise LawViolation("unit law fails", f"table.op['{render_label(self._unit)}*{render_label(x)}']", x)
        for x, y in itertools.product(elements, repeat=2):
            if self.table[(x, y)] != self.table[(y, x)]:
                raise LawViolation("operation is not commutative", f"table.op['{render_label(x)}*{render_label(y)}']",
                                   (x, y))
        for x, y, z in itertools.product(elements, repeat=3):
            if self.table[(self.table[(x, y)], z)] != self.table[(x, self.table[(y, z)])]:
                raise LawViolation("operation is not associative", "table.op", (x, y, z))

    def unit(self) -> Label:
        return self._unit

    def combine(self, left: Label, right: Label) -> Label:
        return self.table[(left, right)]

    def fold(self, values: Iterable[Label]) -> Label:
        ordered = sorted(values, key=self.elements.index)
        return functools.reduce(self.combine, ordered, self._unit)

    def contains(self, value: Any) -> bool:
        return value in self.elements

    def sample(self) -> List[Label]:
        return list(self.elements)

    def serialize(self) -> Any:
        return {"table": {"elements": list(self.elements), "unit": self._unit,
                          "op": [[x, y, self.table[(x, y)]] for x, y in itertools.product(self.elements, repeat=2)]}}

    def __hash__(self):
        return hash((self.kind, self.elements))


BUILTINS = {MonoidKind.int_sum: IntSum, MonoidKind.int_product: IntProduct,
            MonoidKind.max_with_bottom: MaxWithBottom, MonoidKind.min_with_top: MinWithTop,
            MonoidKind.multiset: MultisetOver, MonoidKind.trivial: Trivial}


def monoid_from_config(config: Any, location: str = "monoids") -> CommMonoid:
    """
    Accepts "int-sum", {"kind": "int-sum"}, {"kind": "multiset", "labels": [...]} or
    {"table": {"elements": [...], "unit": u, "op": [[x, y, x*y], ...]}}.
    """
    if isinstance(config, str):
        config = {"kind": config}
    if not isinstance(config, dict):
        raise ParseError("monoid has to be a kind name or an object", location, config)
    if "table" in config:
        table = config["table"]
        try:
            elements = list(table["elements"])
            op = {(x, y): z for x, y, z in table["op"]}
            unit = table["unit"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed monoid table: {exc}", location, table)
        return TableMonoid(elements, op, unit)
    try:
        kind = MonoidKind(config.get("kind"))
    except ValueError:
        raise ParseError(f"unknown monoid kind {config.get('kind')!r}", location, config)
    if kind == MonoidKind.table:
        raise ParseError("table monoids are given under the 'table' key", location, config)
    if kind == MonoidKind.multiset:
        return MultisetOver(config.get("labels"))
    return BUILTINS[kind]()


def check_value(monoid: CommMonoid, value: Any, location: str) -> Any:
    value = monoid.normalize(value)
    if not monoid.contains(value):
        raise TypeMismatch(f"value is not an element of the {monoid.kind.value} monoid", location, value)
    return value
