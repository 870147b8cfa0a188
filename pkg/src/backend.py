from typing import Any, Callable, Dict, Hashable, Iterable, List, Sequence, Tuple

from src.errors import SizeBlowup

Label = Hashable


def render_label(label: Label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(render_label(item) for item in label) + ")"
    return str(label)


def ordinal(size: int) -> Tuple[str, ...]:
    return tuple(str(i) for i in range(1, size + 1))


def unique_or_tagged(pairs: Sequence[Tuple[Label, Label]]) -> List[Label]:
    """
    Labels for a disjoint union given as (owner, label) pairs. Labels stay untouched while they are already
    pairwise distinct, otherwise every one of them is tagged with its owner.
    """
    labels = [label for _, label in pairs]
    if len(set(labels)) == len(labels):
        return labels
    return [(owner, label) for owner, label in pairs]


def untag(pairs: Sequence[Tuple[Label, Label]]) -> List[Label]:
    """
    Inverse of unique_or_tagged on (owner, label) pairs: labels that all read (owner, x) lose their tag when the x
    are not pairwise distinct, every other family is returned as is.
    """
    labels = [label for _, label in pairs]
    if not all(isinstance(label, tuple) and len(label) == 2 and label[0] == owner for owner, label in pairs):
        return labels
    inner = [label[1] for label in labels]
    if len(set(inner)) == len(inner):
        return labels
    return inner


def check_cap(count: int, cap: int, what: str, witness: Any = None):
    if count > cap:
        raise SizeBlowup(f"{what} has {count} elements, more than the enumeration cap {cap}", what, witness)


def fibers(domain: Iterable[Label], fn: Callable[[Label], Label], codomain: Iterable[Label]
           ) -> Dict[Label, List[Label]]:
    out = {y: [] for y in codomain}
    for x in domain:
        out[fn(x)].append(x)
    return out
