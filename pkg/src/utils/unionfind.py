from typing import Dict, Hashable, Iterable, List


class UnionFind:
    def __init__(self, items: Iterable[Hashable]):
        self.items = list(items)
        self.parent = {x: x for x in self.items}
        self.rank = {x: 0 for x in self.items}

    def find(self, x: Hashable) -> Hashable:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: Hashable, y: Hashable) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        del self.rank[y]
        return True

    def classes(self) -> List[List[Hashable]]:
        """Equivalence classes in order of their first member, members in insertion order."""
        out: Dict[Hashable, List[Hashable]] = {}
        for x in self.items:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())

    def __len__(self):
        return len(self.rank)
