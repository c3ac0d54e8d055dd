"""
Potentials V = 1/2 (doubled cup) + sum_i t_i W_i with W_i in TL(n_i).
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple

from ..algebra.scalars import ONE
from ..algebra.tl_algebra import TLDiagram, TLElement, cable2
from ..calculus.free_calc import cyclic_gradient, symmetrizer
from ..exceptions import ArgumentError, SerializationError
from ..planar.elements import PAElement, dagger

logger = logging.getLogger(__name__)


def _as_gr0(w: TLElement) -> PAElement:
    return PAElement(0, {(w.m, d): c for d, c in w.terms.items()})


def _as_tl(x: PAElement) -> TLElement:
    degrees = {n for n, _ in x.terms}
    if len(degrees) > 1:
        raise ArgumentError("a coupling must be homogeneous")
    m = degrees.pop() if degrees else 0
    return TLElement(m, {d: c for (_, d), c in x.terms.items()})


def symmetrize(w: TLElement) -> TLElement:
    """Cyclically symmetrize, then average with the mirror image."""
    if w.m < 1:
        raise ArgumentError("a coupling needs at least one string pair")
    x = symmetrizer(_as_gr0(w))
    return _as_tl((x + dagger(x)).scale(ONE / 2))


@dataclass(frozen=True)
class Coupling:
    name: str
    W: TLElement

    @property
    def degree(self) -> int:
        return self.W.m


class Potential:
    """
    V = 1/2 cable2(cup) + sum_i t_i W_i; every W_i is symmetrized on
    construction.
    """

    def __init__(self, couplings: Sequence[Tuple[str, TLElement]] = (), symmetrized: bool = True):
        names = [name for name, _ in couplings]
        if len(set(names)) != len(names):
            raise ArgumentError(f"duplicate coupling names in {names}")
        self.couplings: List[Coupling] = [
            Coupling(name, symmetrize(w) if symmetrized else w) for name, w in couplings
        ]
        self._gradients = [cyclic_gradient(_as_gr0(c.W)) for c in self.couplings]
        logger.debug("potential with couplings %s", names)

    def __len__(self) -> int:
        return len(self.couplings)

    @property
    def names(self) -> List[str]:
        return [c.name for c in self.couplings]

    @property
    def excess(self) -> int:
        """How much deeper one extra power of t reaches: max(n_i) - 2."""
        return max([c.degree - 2 for c in self.couplings] + [0])

    def gradient(self, i: int) -> PAElement:
        """The cyclic gradient of W_i, an element of Gr_1."""
        return self._gradients[i]

    def element(self, i: int) -> PAElement:
        return _as_gr0(self.couplings[i].W)

    def to_json(self) -> Dict:
        return {"couplings": [{"name": c.name, "W": c.W.to_json()} for c in self.couplings]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Potential":
        try:
            couplings = [(item["name"], TLElement.from_json(item["W"])) for item in data["couplings"]]
        except (KeyError, TypeError) as e:
            raise SerializationError(f"Malformed potential: {e}") from e
        return cls(couplings)

    @classmethod
    def load(cls, path: Path) -> "Potential":
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise SerializationError(f"Cannot read potential {path}: {e}") from e
        return cls.from_json(data)


def free_potential() -> Potential:
    """W = 0: the Gibbs state is the 2-cabled semicircle trace."""
    return Potential([])


def cabled(pairs: Sequence[Tuple[int, int]], size: int) -> TLElement:
    """The 2-cabling of a single TL diagram, as an element of TL(size)."""
    return TLElement.from_diagram(cable2(TLDiagram.from_pairs(pairs, size)))


def quadratic_potential(name: str = "t1") -> Potential:
    """W = cable2 of the cup in TL(1); shifts the variance."""
    return Potential([(name, cabled([(1, 2)], 2))])


def quartic_potential(name: str = "t1") -> Potential:
    """W = cable2 of the cup pair {(1,2),(3,4)} in TL(2)."""
    return Potential([(name, cabled([(1, 2), (3, 4)], 4))])
