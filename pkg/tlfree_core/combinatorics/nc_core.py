"""
Non-crossing partitions of {1..n}: enumeration, lattice order, Kreweras
complement, Moebius function and the block embedding used by the product
formula for cumulants.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exceptions import ArgumentError, ResourceLimitError

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]


def catalan(n: int) -> int:
    """Return the n-th Catalan number."""
    return comb(2 * n, n) // (n + 1)


def is_noncrossing(blocks: Iterable[Iterable[int]]) -> bool:
    """
    Check the non-crossing condition on a family of disjoint blocks.

    Args:
        blocks: Blocks of integers (pairs of a matching are blocks of size 2)

    Returns:
        True when no a<b<c<d has a,c in one block and b,d in another
    """
    owner = {}
    for idx, block in enumerate(blocks):
        for x in block:
            owner[x] = idx
    # Stack scan: a block may only be resumed when it is on top
    stack: List[int] = []
    remaining: Dict[int, int] = {}
    for idx in owner.values():
        remaining[idx] = remaining.get(idx, 0) + 1
    for x in sorted(owner):
        idx = owner[x]
        if stack and stack[-1] == idx:
            pass
        elif idx in stack:
            return False
        else:
            stack.append(idx)
        remaining[idx] -= 1
        if remaining[idx] == 0:
            stack.pop()
    return True


@dataclass(frozen=True)
class NCPartition:
    """A non-crossing partition of {1..n} in canonical form."""
    n: int
    blocks: Tuple[Block, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "NCPartition":
        """
        Build a validated partition.

        Raises:
            ArgumentError: if blocks do not partition {1..n} or cross
        """
        if n < 1:
            raise ArgumentError(f"Ground set size must be positive, got {n}")
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0]))
        flat = [x for b in canon for x in b]
        if sorted(flat) != list(range(1, n + 1)):
            raise ArgumentError(f"Blocks {canon} do not partition 1..{n}")
        if not is_noncrossing(canon):
            raise ArgumentError(f"Blocks {canon} are crossing")
        return cls(n, canon)

    @classmethod
    def bottom(cls, n: int) -> "NCPartition":
        """The partition into singletons, 0_n."""
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def top(cls, n: int) -> "NCPartition":
        """The one-block partition, 1_n."""
        return cls(n, (tuple(range(1, n + 1)),))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> Block:
        for b in self.blocks:
            if x in b:
                return b
        raise ArgumentError(f"{x} is not in 1..{self.n}")

    def interval_blocks(self) -> List[Block]:
        """Blocks made of consecutive integers."""
        return [b for b in self.blocks if b[-1] - b[0] == len(b) - 1]

    def to_dict(self) -> Dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_dict(cls, data: Dict) -> "NCPartition":
        try:
            return cls.from_blocks(int(data["n"]), data["blocks"])
        except (KeyError, TypeError, ValueError) as e:
            raise ArgumentError(f"Malformed partition JSON: {e}") from e

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@lru_cache(maxsize=None)
def _shapes(m: int) -> Tuple[Tuple[Block, ...], ...]:
    # All NC partitions of 1..m as block tuples; the block of 1 is chosen first
    if m == 0:
        return ((),)
    out = []
    rest = range(2, m + 1)
    for size in range(0, m):
        for chosen in itertools.combinations(rest, size):
            first = (1,) + chosen
            bounds = list(first) + [m + 1]
            gap_options = []
            for lo, hi in zip(bounds, bounds[1:]):
                length = hi - lo - 1
                gap_options.append([
                    tuple(tuple(x + lo for x in b) for b in shape)
                    for shape in _shapes(length)
                ])
            for combo in itertools.product(*gap_options):
                blocks = [first] + [b for part in combo for b in part]
                out.append(tuple(sorted(blocks, key=lambda b: b[0])))
    return tuple(out)


def _check_cap(n: int, cap: Optional[int]) -> None:
    if cap is None:
        from ..config import get_caps
        cap = get_caps().max_nc
    if n > cap:
        raise ResourceLimitError(f"NC({n}) exceeds the configured cap {cap}")


def enumerate_nc(n: int, cap: Optional[int] = None) -> List[NCPartition]:
    """
    Enumerate NC(n).

    Args:
        n: Ground set size, 1 <= n
        cap: Optional override of the configured cap

    Returns:
        Every non-crossing partition exactly once (Catalan(n) of them)

    Raises:
        ArgumentError: if n < 1
        ResourceLimitError: if n exceeds the cap
    """
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    _check_cap(n, cap)
    return [NCPartition(n, blocks) for blocks in _shapes(n)]


def _same_size(sigma: NCPartition, pi: NCPartition) -> None:
    if sigma.n != pi.n:
        raise ArgumentError(f"Ground sets differ: {sigma.n} vs {pi.n}")


def leq(sigma: NCPartition, pi: NCPartition) -> bool:
    """Refinement order: every block of sigma lies inside a block of pi."""
    _same_size(sigma, pi)
    owner = {x: i for i, b in enumerate(pi.blocks) for x in b}
    return all(len({owner[x] for x in b}) == 1 for b in sigma.blocks)


def meet(sigma: NCPartition, pi: NCPartition) -> NCPartition:
    """Common refinement."""
    _same_size(sigma, pi)
    parts = []
    for a in sigma.blocks:
        for b in pi.blocks:
            common = set(a) & set(b)
            if common:
                parts.append(common)
    return NCPartition.from_blocks(sigma.n, parts)


def join(sigma: NCPartition, pi: NCPartition) -> NCPartition:
    """
    Least upper bound in NC(n).

    The union closure is merged further while two of its blocks cross, so the
    result is the join in the non-crossing lattice.
    """
    _same_size(sigma, pi)
    parent = list(range(sigma.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    for b in sigma.blocks + pi.blocks:
        for x in b[1:]:
            union(b[0], x)
    while True:
        groups: Dict[int, List[int]] = {}
        for x in range(1, sigma.n + 1):
            groups.setdefault(find(x), []).append(x)
        blocks = list(groups.values())
        crossing = _first_crossing(blocks)
        if crossing is None:
            return NCPartition.from_blocks(sigma.n, blocks)
        union(crossing[0], crossing[1])


def _first_crossing(blocks: List[List[int]]) -> Optional[Tuple[int, int]]:
    for a, b in itertools.combinations(blocks, 2):
        if not is_noncrossing([a, b]):
            return a[0], b[0]
    return None


def kreweras(pi: NCPartition) -> NCPartition:
    """
    Kreweras complement, relabeled so that the point between i and i+1 is i.

    Computed as the cycles of pi^{-1} composed with the long cycle, which is
    the maximal partition of the interleaved points compatible with pi.
    """
    n = pi.n
    inverse = {}
    for b in pi.blocks:
        for i, x in enumerate(b):
            inverse[b[(i + 1) % len(b)]] = x
    perm = {i: inverse[i % n + 1] for i in range(1, n + 1)}
    seen = set()
    blocks = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x)
            x = perm[x]
        blocks.append(cycle)
    return NCPartition.from_blocks(n, blocks)


MOBIUS_CACHE_SIZE = 4096


@lru_cache(maxsize=MOBIUS_CACHE_SIZE)
def _mobius_interval(sigma: NCPartition, pi: NCPartition) -> int:
    interval = [r for r in enumerate_nc(sigma.n) if leq(sigma, r) and leq(r, pi)]
    # Finer partitions first, so every strict lower bound is already known
    interval.sort(key=lambda r: -len(r))
    values: Dict[NCPartition, int] = {}
    for r in interval:
        if r == sigma:
            values[r] = 1
            continue
        values[r] = -sum(v for q, v in values.items() if q != r and leq(q, r))
    return values[pi]


def mobius(sigma: NCPartition, pi: NCPartition) -> Fraction:
    """
    Moebius function of the interval [sigma, pi] in NC(n).

    Uses the defining recursion mu(s,s)=1, mu(s,p) = -sum_{s<=r<p} mu(s,r),
    memoized per interval in a bounded LRU cache.

    Raises:
        ArgumentError: if sigma is not below pi
    """
    if not leq(sigma, pi):
        raise ArgumentError(f"{sigma} is not below {pi}")
    return Fraction(_mobius_interval(sigma, pi))


def mobius_to_top(sigma: NCPartition) -> Fraction:
    """
    mu(sigma, 1_n) from the factorization over Kreweras blocks.

    Equal to the recursive value; used on hot paths such as moment-cumulant
    inversion.
    """
    value = Fraction(1)
    for b in kreweras(sigma).blocks:
        s = len(b)
        value *= (-1) ** (s - 1) * catalan(s - 1)
    return value


def hat_embed(pi: NCPartition, sizes: Sequence[int]) -> NCPartition:
    """
    Merge the consecutive groups of sizes m_1..m_n according to pi.

    Raises:
        ArgumentError: if a size is < 1 or the length does not match pi.n
    """
    if len(sizes) != pi.n or any(s < 1 for s in sizes):
        raise ArgumentError(f"Invalid group sizes {list(sizes)} for NC({pi.n})")
    starts = list(itertools.accumulate([0] + list(sizes)))
    blocks = []
    for b in pi.blocks:
        blocks.append([p for i in b for p in range(starts[i - 1] + 1, starts[i] + 1)])
    return NCPartition.from_blocks(starts[-1], blocks)
