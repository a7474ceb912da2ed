from collections.abc import Callable, Hashable, Iterable, Sequence

from attrs import define, field


@define
class UnionFind[T: Hashable]:
    parent: dict[T, T] = field(factory=dict)
    rank: dict[T, int] = field(factory=dict)

    @classmethod
    def over(cls, items: Iterable[T]) -> 'UnionFind[T]':
        forest = cls()
        for item in items:
            forest.parent[item] = item
            forest.rank[item] = 0
        return forest

    def find(self, item: T) -> T:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, first: T, second: T) -> None:
        first, second = self.find(first), self.find(second)
        if first == second:
            return
        if self.rank[first] < self.rank[second]:
            first, second = second, first
        elif self.rank[first] == self.rank[second]:
            self.rank[first] += 1
        self.parent[second] = first


def find_orbits[T: Hashable](
    space: Sequence[T], generators: Iterable[Callable[[T], T]]
) -> list[list[T]]:
    """Orbits of the group generated by ``generators``, each in ``space`` order, ordered by
    their first element."""
    forest = UnionFind.over(space)
    for generator in generators:
        for item in space:
            forest.union(item, generator(item))

    orbits: dict[T, list[T]] = {}
    for item in space:
        orbits.setdefault(forest.find(item), []).append(item)
    return list(orbits.values())
