"""
Graph planar algebra path model.

Loops on a bipartite graph with Perron-Frobenius weights, evaluated exactly
by the operator-valued Wick recursion and estimated by sampling Gaussian
block matrices.
"""
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..exceptions import ArgumentError, ConfigurationError, SerializationError

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]
Letter = Tuple[int, int]  # (e, f): the generator X_{e, f°}, edges by index

EIGEN_TOLERANCE = 1e-10


def _number(value) -> Number:
    if isinstance(value, float):
        return value
    try:
        return Fraction(value)
    except (TypeError, ValueError) as e:
        raise ArgumentError(f"not a number: {value!r}") from e


@dataclass
class BipartiteGraph:
    """
    Connected bipartite graph with a positive eigenvector mu of eigenvalue
    delta. Edges run from a plus vertex to a minus vertex.
    """
    plus: List[str]
    minus: List[str]
    edges: List[Tuple[str, str]]
    mu: Dict[str, Number]
    delta: Number

    def __post_init__(self):
        self.mu = {v: _number(x) for v, x in self.mu.items()}
        self.delta = _number(self.delta)
        self.edges = [tuple(e) for e in self.edges]
        self.validate()

    @property
    def vertices(self) -> List[str]:
        return list(self.plus) + list(self.minus)

    @property
    def exact(self) -> bool:
        return isinstance(self.delta, Fraction) and all(isinstance(x, Fraction) for x in self.mu.values())

    def source(self, e: int) -> str:
        return self.edges[e][0]

    def target(self, e: int) -> str:
        return self.edges[e][1]

    def validate(self) -> None:
        """
        Raises:
            ArgumentError: if the graph is not bipartite, connected or
                does not satisfy the eigen-relation
        """
        plus, minus = set(self.plus), set(self.minus)
        if plus & minus or not plus or not minus:
            raise ArgumentError("plus and minus vertices must be disjoint and nonempty")
        for v, w in self.edges:
            if v not in plus or w not in minus:
                raise ArgumentError(f"edge ({v}, {w}) must join a plus vertex to a minus vertex")
        for v in self.vertices:
            if v not in self.mu or self.mu[v] <= 0:
                raise ArgumentError(f"mu must be positive at {v}")
        if self.delta <= 0:
            raise ArgumentError("delta must be positive")

        neighbours: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for v, w in self.edges:
            neighbours[v].append(w)
            neighbours[w].append(v)
        reached, stack = {self.plus[0]}, [self.plus[0]]
        while stack:
            for w in neighbours[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != len(self.vertices):
            raise ArgumentError("graph is not connected")

        for v in self.vertices:
            lhs = sum((self.mu[w] for w in neighbours[v]), Fraction(0))
            rhs = self.delta * self.mu[v]
            if self.exact:
                ok = lhs == rhs
            else:
                ok = abs(float(lhs) - float(rhs)) <= EIGEN_TOLERANCE * max(1.0, abs(float(rhs)))
            if not ok:
                raise ArgumentError(f"eigen-relation fails at {v}: {float(lhs)} != {float(rhs)}")

    def to_json(self) -> Dict:
        def enc(x):
            return str(x) if isinstance(x, Fraction) else x
        return {
            "plus": list(self.plus),
            "minus": list(self.minus),
            "edges": [list(e) for e in self.edges],
            "mu": {v: enc(x) for v, x in self.mu.items()},
            "delta": enc(self.delta),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BipartiteGraph":
        try:
            return cls(list(data["plus"]), list(data["minus"]), [tuple(e) for e in data["edges"]], dict(data["mu"]), data["delta"])
        except (KeyError, TypeError) as e:
            raise SerializationError(f"Malformed graph: {e}") from e

    @classmethod
    def load(cls, path: Path) -> "BipartiteGraph":
        try:
            with open(path) as f:
                return cls.from_json(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise SerializationError(f"Cannot read graph {path}: {e}") from e


@dataclass(frozen=True)
class LoopWord:
    """Word X_{e1,f1°} ... X_{em,fm°}; the empty word needs an explicit base vertex."""
    letters: Tuple[Letter, ...]
    base: Optional[str] = None

    def __len__(self) -> int:
        return len(self.letters)

    def start(self, G: BipartiteGraph) -> str:
        """Validate against G and return the base vertex s(e1)."""
        if not self.letters:
            if self.base is None or self.base not in G.plus:
                raise ArgumentError("the empty loop needs a plus base vertex")
            return self.base
        for e, f in self.letters:
            if not (0 <= e < len(G.edges) and 0 <= f < len(G.edges)):
                raise ArgumentError(f"letter ({e}, {f}) names an unknown edge")
            if G.target(e) != G.target(f):
                raise ArgumentError(f"letter ({e}, {f}): edges end at different vertices")
        for (_, f), (e, _) in zip(self.letters, self.letters[1:]):
            if G.source(f) != G.source(e):
                raise ArgumentError("consecutive letters do not compose")
        first = G.source(self.letters[0][0])
        if G.source(self.letters[-1][1]) != first:
            raise ArgumentError("word is not a closed loop")
        if self.base is not None and self.base != first:
            raise ArgumentError(f"word starts at {first}, not {self.base}")
        return first

    def rotate(self, clicks: int = 1) -> "LoopWord":
        if not self.letters:
            return self
        c = clicks % len(self.letters)
        return LoopWord(self.letters[c:] + self.letters[:c])

    def to_json(self) -> Dict:
        data = {"letters": [list(x) for x in self.letters]}
        if self.base is not None:
            data["base"] = self.base
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "LoopWord":
        try:
            return cls(tuple((int(e), int(f)) for e, f in data["letters"]), data.get("base"))
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"Malformed loop word: {e}") from e

    @classmethod
    def load(cls, path: Path) -> "LoopWord":
        try:
            with open(path) as f:
                return cls.from_json(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise SerializationError(f"Cannot read loop word {path}: {e}") from e


@dataclass
class MCConfig:
    target_dim: int = 200
    samples: int = 500
    seed: int = 7
    threads: int = 1
    progress: bool = False

    def __post_init__(self):
        if self.target_dim < 1 or self.samples < 1 or self.threads < 1:
            raise ConfigurationError("dimension, samples and threads must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")

    def block_dims(self, G: BipartiteGraph) -> Dict[str, int]:
        """d_v = max(1, round(N mu_v / max mu)) over the plus vertices."""
        top = max(float(G.mu[v]) for v in G.plus)
        return {v: max(1, round(self.target_dim * float(G.mu[v]) / top)) for v in G.plus}


def wick_expectation(w: LoopWord, G: BipartiteGraph) -> Number:
    """
    Coefficient of p_base in E[X_{a1} ... X_{am}].

    X_{e,f°} pairs only with X_{f,e°}; the pair around an inner loop at s(f)
    of value beta contributes beta * mu_{s(f)} p_{s(e)}.
    """
    w.start(G)
    zero = Fraction(0) if G.exact else 0.0
    one = Fraction(1) if G.exact else 1.0
    mu = G.mu if G.exact else {v: float(x) for v, x in G.mu.items()}

    @lru_cache(maxsize=None)
    def expect(lo: int, hi: int) -> Number:
        if lo == hi:
            return one
        if (hi - lo) % 2:
            return zero
        e, f = w.letters[lo]
        total = zero
        for j in range(lo + 1, hi, 2):
            if w.letters[j] != (f, e):
                continue
            inner = expect(lo + 1, j)
            if inner:
                total += inner * mu[G.source(f)] * expect(j + 1, hi)
        return total

    return expect(0, len(w.letters))


def loop_vs_diagram(w: LoopWord, G: BipartiteGraph) -> Tuple[Number, float]:
    """
    Raw Wick value and the loop-basis value, which rescales by
    (prod_j mu_{s(e_j)} mu_{s(f_j)})^{-1/4}.
    """
    raw = wick_expectation(w, G)
    weight = 1.0
    for e, f in w.letters:
        weight *= float(G.mu[G.source(e)]) * float(G.mu[G.source(f)])
    return raw, float(raw) * weight ** -0.25


def single_edge() -> BipartiteGraph:
    return BipartiteGraph(["v"], ["w"], [("v", "w")], {"v": 1, "w": 1}, 1)


def path_graph(n: int) -> BipartiteGraph:
    """A_n with quantum-integer weights mu_i = [i]_q and delta = 2 cos(pi/(n+1))."""
    if n < 2:
        raise ArgumentError("A_n needs n >= 2")
    angle = np.pi / (n + 1)
    names = [f"a{i}" for i in range(1, n + 1)]
    mu = {name: float(np.sin(i * angle) / np.sin(angle)) for i, name in enumerate(names, start=1)}
    plus, minus = names[0::2], names[1::2]
    edges = []
    for i in range(n - 1):
        a, b = names[i], names[i + 1]
        edges.append((a, b) if a in plus else (b, a))
    return BipartiteGraph(plus, minus, edges, mu, float(2 * np.cos(angle)))


def alternating_word(e: int, f: int, pairs: int) -> LoopWord:
    """(X_{e,f°} X_{f,e°})^pairs."""
    return LoopWord(((e, f), (f, e)) * pairs)


def wick_moments(G: BipartiteGraph, p_max: int, e: int = 0, f: int = 0) -> List[Number]:
    """Moments E[(X_{e,f°} X_{f,e°})^p] for p = 0..p_max at the base s(e)."""
    base = G.source(e)
    return [wick_expectation(LoopWord((), base) if p == 0 else alternating_word(e, f, p), G) for p in range(p_max + 1)]


def lf_parameter(delta: float, global_index: float, k: int) -> float:
    """t_k = 1 + delta^{-2k} I (delta^2 - 1)."""
    if delta <= 1 or global_index <= 0:
        raise ArgumentError("lf_parameter needs delta > 1 and a positive index")
    return 1 + delta ** (-2 * k) * global_index * (delta ** 2 - 1)


@dataclass
class _Blocks:
    dims: Dict[str, int]
    variance: float
    pairs: List[Letter] = field(default_factory=list)


def _sample_letters(G: BipartiteGraph, blocks: _Blocks, rng: np.random.Generator) -> Dict[Letter, np.ndarray]:
    """One independent circular block per unordered pair {(e,f),(f,e)}; X_{f,e°} is the adjoint."""
    scale = math.sqrt(blocks.variance / 2)
    out: Dict[Letter, np.ndarray] = {}
    for e, f in blocks.pairs:
        rows, cols = blocks.dims[G.source(e)], blocks.dims[G.source(f)]
        g = scale * (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols)))
        if e == f:
            g = (g + g.conj().T) / math.sqrt(2)
        out[(e, f)] = g
        out[(f, e)] = g.conj().T
    return out


def _evaluate_sample(index: int, w: LoopWord, G: BipartiteGraph, blocks: _Blocks, seed: int) -> float:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))
    letters = _sample_letters(G, blocks, rng)
    base = G.source(w.letters[0][0])
    product = np.eye(blocks.dims[base], dtype=complex)
    for letter in w.letters:
        product = product @ letters[letter]
    return float(np.trace(product).real) / blocks.dims[base]


def mc_estimate(w: LoopWord, G: BipartiteGraph, cfg: MCConfig) -> Tuple[float, float]:
    """
    Monte Carlo estimate of wick_expectation with Gaussian block matrices.

    Block X_{e,f°} has shape d_{s(e)} x d_{s(f)}; entries have variance
    sum(mu) / sum(d) over the plus vertices, so the covariance matches
    mu_{s(f)} when d is proportional to mu. Sample i draws from its own
    Philox stream keyed by (seed, i).

    Returns:
        (mean, standard error)
    """
    w.start(G)
    if not w.letters:
        return 1.0, 0.0
    dims = cfg.block_dims(G)
    variance = sum(float(G.mu[v]) for v in G.plus) / sum(dims.values())
    pairs = sorted({(min(x), max(x)) for x in w.letters})
    blocks = _Blocks(dims, variance, pairs)
    logger.info("Monte Carlo: %d samples, blocks %s, %d threads", cfg.samples, dims, cfg.threads)

    values = np.empty(cfg.samples)
    indices = range(cfg.samples)
    with ThreadPoolExecutor(max_workers=cfg.threads) as executor:
        results = executor.map(lambda i: _evaluate_sample(i, w, G, blocks, cfg.seed), indices)
        if cfg.progress:
            results = tqdm(results, total=cfg.samples, desc="Sampling")
        for i, value in enumerate(results):
            values[i] = value
    mean = float(np.sum(values) / cfg.samples)
    stderr = float(np.std(values, ddof=1) / math.sqrt(cfg.samples)) if cfg.samples > 1 else 0.0
    return mean, stderr
