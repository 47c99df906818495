"""Benchmark harness: when do frugal strategies match information-greedy ones?

Builds controlled task environments (objects with a criterion value and
named cue values), fits cue orders and linear weights on a training split
only, and scores every strategy on all unordered test pairs -- accuracy,
frugality (mean cues inspected) and wall time. Splits and generators are
fully seeded; identical seeds reproduce reports bit for bit apart from
wall time.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .heuristics import (
    CueOrder,
    Decision,
    DiscriminationRule,
    Provenance,
    WeightVector,
    one_reason_choose,
    recognition_accuracy,
    recognition_choose,
    tallying_choose,
    validity_order,
    weighted_linear_choose,
)
from .indicators import CandidateProfile, Direction


@dataclass(frozen=True)
class EnvironmentObject:
    id: str
    criterion: float
    cues: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cues", dict(self.cues))


class Environment:
    """A set of objects with one criterion value and shared named cues."""

    def __init__(
        self,
        objects: Sequence[EnvironmentObject],
        cue_directions: Mapping[str, Direction] | None = None,
    ):
        objects = tuple(objects)
        if len(objects) < 2:
            raise ValueError(f"environment needs at least 2 objects, got {len(objects)}")
        names = sorted(objects[0].cues)
        if not names:
            raise ValueError("environment objects carry no cues")
        ids = set()
        for obj in objects:
            if sorted(obj.cues) != names:
                raise ValueError(
                    f"object {obj.id!r} has cue names {sorted(obj.cues)}, expected {names}"
                )
            if not math.isfinite(obj.criterion):
                raise ValueError(f"object {obj.id!r} has non-finite criterion {obj.criterion!r}")
            if obj.id in ids:
                raise ValueError(f"duplicate object id {obj.id!r}")
            ids.add(obj.id)
        self.objects = objects
        self.cue_names = tuple(names)
        self.cue_directions = dict(cue_directions or {})
        self._criterion = np.array([obj.criterion for obj in objects], dtype=float)
        self._cues = {
            name: np.array([obj.cues[name] for obj in objects], dtype=float) for name in names
        }

    def __len__(self) -> int:
        return len(self.objects)

    @property
    def criterion_values(self) -> np.ndarray:
        return self._criterion

    def cue_values(self, name: str) -> np.ndarray:
        try:
            return self._cues[name]
        except KeyError:
            raise ValueError(f"environment has no cue named {name!r}") from None

    def subset(self, indices: Sequence[int]) -> Environment:
        return Environment([self.objects[i] for i in indices], self.cue_directions)

    def profiles(self) -> list[CandidateProfile]:
        """View each object as a candidate whose indicators are its cues."""
        return [
            CandidateProfile(id=obj.id, publications=(), indicators=obj.cues)
            for obj in self.objects
        ]


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float
    repetitions: int
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(
                f"train fraction must be strictly inside (0, 1), got {self.train_fraction}"
            )
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")


@dataclass(frozen=True)
class StrategyResult:
    name: str
    accuracy: float
    frugality: float
    decisions: int
    undecided_rate: float
    wall_time: float


@dataclass(frozen=True)
class BenchmarkReport:
    results: tuple[StrategyResult, ...]
    repetitions: int
    train_fraction: float
    seed: int
    n_objects: int
    cue_names: tuple[str, ...]


def generate_binary_environment(
    weights: WeightVector, n_objects: int, seed: int
) -> Environment:
    """Objects with seeded random binary cues; criterion = weighted cue sum."""
    if n_objects < 2:
        raise ValueError(f"need at least 2 objects, got {n_objects}")
    names = sorted(weights.names)
    for name in names:
        if weights[name] < 0:
            raise ValueError(f"weight for {name!r} must be non-negative, got {weights[name]}")
    rng = np.random.default_rng(seed)
    cue_matrix = rng.integers(0, 2, size=(n_objects, len(names)))
    w = np.array([weights[name] for name in names], dtype=float)
    criterion = cue_matrix @ w
    width = len(str(n_objects - 1))
    objects = [
        EnvironmentObject(
            id=f"obj{i:0{width}d}",
            criterion=float(criterion[i]),
            cues={name: float(cue_matrix[i, k]) for k, name in enumerate(names)},
        )
        for i in range(n_objects)
    ]
    return Environment(objects)


def generate_gaussian_environment(
    validity_targets: Mapping[str, float], n_objects: int, seed: int
) -> Environment:
    """Standard-normal criterion; each cue is the criterion scaled by its
    target correlation plus independent noise, so empirical cue-criterion
    correlations match the requested ordering in expectation.
    """
    if n_objects < 2:
        raise ValueError(f"need at least 2 objects, got {n_objects}")
    if not validity_targets:
        raise ValueError("at least one cue target is required")
    for name, rho in validity_targets.items():
        if not -1.0 <= rho <= 1.0:
            raise ValueError(f"correlation target for {name!r} must be in [-1, 1], got {rho}")
    rng = np.random.default_rng(seed)
    criterion = rng.standard_normal(n_objects)
    cues = {}
    for name in sorted(validity_targets):
        rho = validity_targets[name]
        noise = rng.standard_normal(n_objects)
        cues[name] = rho * criterion + math.sqrt(1.0 - rho * rho) * noise
    width = len(str(n_objects - 1))
    objects = [
        EnvironmentObject(
            id=f"obj{i:0{width}d}",
            criterion=float(criterion[i]),
            cues={name: float(values[i]) for name, values in cues.items()},
        )
        for i in range(n_objects)
    ]
    return Environment(objects)


class RankDeficientError(ValueError):
    """The cue matrix does not support a unique least-squares fit."""


def fit_linear_weights(env: Environment) -> WeightVector:
    """Ordinary least-squares weights regressing the criterion on the cues.

    An intercept is included in the fit and discarded: it cancels in any
    pairwise comparison of weighted sums.
    """
    names = env.cue_names
    X = np.column_stack([env.cue_values(name) for name in names])
    n, m = X.shape
    if n < m + 1:
        raise ValueError(f"need at least {m + 1} objects to fit {m} cue weights, got {n}")
    design = np.column_stack([np.ones(n), X])
    if np.linalg.matrix_rank(design) < m + 1:
        dependent = _dependent_cues(design, names)
        raise RankDeficientError(
            "cue matrix is rank-deficient; linearly dependent cues: " + ", ".join(dependent)
        )
    coef, *_ = np.linalg.lstsq(design, env.criterion_values, rcond=None)
    return WeightVector(dict(zip(names, (float(c) for c in coef[1:]))))


def _minimum_norm_weights(env: Environment) -> WeightVector:
    # lstsq returns the minimum-norm solution, so redundant cues (e.g. one
    # that happens to be constant in a small training sample) get weight 0
    design = np.column_stack(
        [np.ones(len(env))] + [env.cue_values(name) for name in env.cue_names]
    )
    coef, *_ = np.linalg.lstsq(design, env.criterion_values, rcond=None)
    return WeightVector(dict(zip(env.cue_names, (float(c) for c in coef[1:]))))


def _dependent_cues(design: np.ndarray, names: Sequence[str]) -> list[str]:
    # a cue column is dependent when the remaining columns reproduce it
    dependent = []
    for k, name in enumerate(names):
        col = design[:, k + 1]
        others = np.delete(design, k + 1, axis=1)
        fit, *_ = np.linalg.lstsq(others, col, rcond=None)
        residual = col - others @ fit
        if np.linalg.norm(residual) <= 1e-9 * max(1.0, np.linalg.norm(col)):
            dependent.append(name)
    return dependent or list(names)


def train_test_indices(
    n_objects: int, train_fraction: float, rng: np.random.Generator
) -> tuple[list[int], list[int]]:
    """Seeded shuffle split; the test side keeps at least 2 objects."""
    n_train = int(train_fraction * n_objects)
    n_train = max(1, n_train)
    permutation = rng.permutation(n_objects)
    train = [int(i) for i in permutation[:n_train]]
    test = [int(i) for i in permutation[n_train:]]
    if len(test) < 2:
        raise ValueError(
            f"test split has {len(test)} objects; need at least 2 "
            f"(n={n_objects}, train_fraction={train_fraction})"
        )
    return train, test


class TakeTheBestStrategy:
    """Lexicographic choice with the cue order learned from training data."""

    name = "take_the_best"

    def __init__(self, rule: DiscriminationRule | None = None):
        self.rule = rule or DiscriminationRule()
        self._order: CueOrder | None = None
        self._directions: Mapping[str, Direction] = {}

    def fit(self, train_env: Environment, seed: int) -> None:
        self._order = validity_order(train_env)
        self._directions = train_env.cue_directions

    def decide(self, a: CandidateProfile, b: CandidateProfile) -> tuple[Decision, int]:
        decision, trace = one_reason_choose(a, b, self._order, self.rule, self._directions)
        return decision, len(trace.steps)


class MinimalistStrategy:
    """Lexicographic choice over a fresh random cue order per decision."""

    name = "minimalist"

    def __init__(self):
        self._rng: random.Random | None = None
        self._cues: tuple[str, ...] = ()
        self._directions: Mapping[str, Direction] = {}

    def fit(self, train_env: Environment, seed: int) -> None:
        self._rng = random.Random(seed)
        self._cues = train_env.cue_names
        self._directions = train_env.cue_directions

    def decide(self, a: CandidateProfile, b: CandidateProfile) -> tuple[Decision, int]:
        cues = list(self._cues)
        self._rng.shuffle(cues)
        order = CueOrder(tuple(cues), Provenance.RANDOM_SEEDED)
        decision, trace = one_reason_choose(a, b, order, DiscriminationRule(), self._directions)
        return decision, len(trace.steps)


class TallyingStrategy:
    """Unit-weight vote count over all cues."""

    name = "tallying"

    def __init__(self):
        self._cues: tuple[str, ...] = ()
        self._directions: Mapping[str, Direction] = {}

    def fit(self, train_env: Environment, seed: int) -> None:
        self._cues = train_env.cue_names
        self._directions = train_env.cue_directions

    def decide(self, a: CandidateProfile, b: CandidateProfile) -> tuple[Decision, int]:
        return tallying_choose(a, b, self._cues, self._directions), len(self._cues)


class LinearRegressionStrategy:
    """Weighted-sum comparison with weights fit on the training split.

    A degenerate training sample (rank-deficient cue matrix) falls back to
    the minimum-norm least-squares fit so a benchmark repetition never dies
    on an unlucky draw.
    """

    name = "linear_regression"

    def __init__(self):
        self._weights: WeightVector | None = None

    def fit(self, train_env: Environment, seed: int) -> None:
        try:
            self._weights = fit_linear_weights(train_env)
        except RankDeficientError:
            self._weights = _minimum_norm_weights(train_env)

    def decide(self, a: CandidateProfile, b: CandidateProfile) -> tuple[Decision, int]:
        return weighted_linear_choose(a, b, self._weights), len(self._weights.names)


class AlwaysUndecidedStrategy:
    """Abstains from every pair; pins the 0.5 scoring convention in tests."""

    name = "always_undecided"

    def fit(self, train_env: Environment, seed: int) -> None:
        pass

    def decide(self, a: CandidateProfile, b: CandidateProfile) -> tuple[Decision, int]:
        return Decision.UNDECIDED, 0


STRATEGY_FACTORIES: dict[str, Callable[[], object]] = {
    "take_the_best": TakeTheBestStrategy,
    "ttb": TakeTheBestStrategy,
    "minimalist": MinimalistStrategy,
    "tallying": TallyingStrategy,
    "linear": LinearRegressionStrategy,
    "linear_regression": LinearRegressionStrategy,
    "always_undecided": AlwaysUndecidedStrategy,
}


def run_benchmark(
    env: Environment, strategies: Sequence[object], split: SplitConfig
) -> BenchmarkReport:
    """Out-of-sample pair-comparison benchmark.

    Per repetition: seeded shuffle split, strategies fitted on the training
    objects only, then every unordered test pair is decided. A decision is
    correct when it picks the higher-criterion object; undecided scores 0.5,
    as does any decision on a pair whose criterion values tie (no answer is
    defined there). Accuracy is averaged over repetitions, frugality over
    all decisions.
    """
    if not strategies:
        raise ValueError("at least one strategy is required")
    names = [s.name for s in strategies]
    if len(set(names)) != len(names):
        raise ValueError(f"strategy names must be unique, got {names}")
    n = len(env)
    rep_seeds = np.random.SeedSequence(split.seed).spawn(split.repetitions)
    accuracies: dict[str, list[float]] = {s.name: [] for s in strategies}
    inspected: dict[str, int] = {s.name: 0 for s in strategies}
    undecided: dict[str, int] = {s.name: 0 for s in strategies}
    decisions: dict[str, int] = {s.name: 0 for s in strategies}
    wall: dict[str, float] = {s.name: 0.0 for s in strategies}

    for rep_seq in rep_seeds:
        children = rep_seq.spawn(1 + len(strategies))
        rng = np.random.default_rng(children[0])
        train_idx, test_idx = train_test_indices(n, split.train_fraction, rng)
        train_env = env.subset(train_idx)
        test_env = env.subset(test_idx)
        test_profiles = test_env.profiles()
        criterion = test_env.criterion_values
        pairs = [
            (i, j) for i in range(len(test_profiles)) for j in range(i + 1, len(test_profiles))
        ]
        for strategy, child in zip(strategies, children[1:]):
            strategy.fit(train_env, int(child.generate_state(2, np.uint64)[0]))
            score = 0.0
            start = time.perf_counter()
            for i, j in pairs:
                decision, n_inspected = strategy.decide(test_profiles[i], test_profiles[j])
                inspected[strategy.name] += n_inspected
                decisions[strategy.name] += 1
                if decision is Decision.UNDECIDED:
                    undecided[strategy.name] += 1
                    score += 0.5
                elif criterion[i] == criterion[j]:
                    score += 0.5
                elif (decision is Decision.CHOOSE_A) == (criterion[i] > criterion[j]):
                    score += 1.0
            wall[strategy.name] += time.perf_counter() - start
            accuracies[strategy.name].append(score / len(pairs))

    results = tuple(
        StrategyResult(
            name=s.name,
            accuracy=float(np.mean(accuracies[s.name])),
            frugality=inspected[s.name] / decisions[s.name],
            decisions=decisions[s.name],
            undecided_rate=undecided[s.name] / decisions[s.name],
            wall_time=wall[s.name],
        )
        for s in strategies
    )
    return BenchmarkReport(
        results=results,
        repetitions=split.repetitions,
        train_fraction=split.train_fraction,
        seed=split.seed,
        n_objects=n,
        cue_names=env.cue_names,
    )


def less_is_more_curve(
    N: int, alpha: float, beta: float, trials: int, seed: int
) -> list[tuple[int, float, float]]:
    """For each recognized count n in 0..N, pair the closed-form expected
    accuracy with a seeded Monte Carlo estimate in which every simulated
    pair is decided by recognition_choose.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    recognition_accuracy(N, 0, alpha, beta)  # validates N, alpha, beta
    seeds = np.random.SeedSequence(seed).spawn(N + 1)
    rows: list[tuple[int, float, float]] = []
    total_pairs = N * (N - 1)
    for n in range(N + 1):
        rng = np.random.default_rng(seeds[n])
        p_one = 2.0 * n * (N - n) / total_pairs
        p_both = n * (n - 1) / total_pairs
        pair_type = rng.choice(3, size=trials, p=[1.0 - p_one - p_both, p_one, p_both])
        recognized_is_better = rng.random(trials) < alpha
        knowledge_is_right = rng.random(trials) < beta
        guess_seeds = rng.integers(0, 2**63, size=trials)
        correct = 0
        for t in range(trials):
            kind = pair_type[t]
            if kind == 1:
                recognized = frozenset({"better"} if recognized_is_better[t] else {"worse"})
                knowledge = None
            elif kind == 2:
                recognized = frozenset({"better", "worse"})
                right = knowledge_is_right[t]
                knowledge = lambda a, b, right=right: (
                    Decision.CHOOSE_A if (a == "better") == right else Decision.CHOOSE_B
                )
            else:
                recognized = frozenset()
                knowledge = None
            choice = recognition_choose(
                "better", "worse", recognized, knowledge, seed=int(guess_seeds[t])
            )
            if choice is Decision.CHOOSE_A:
                correct += 1
        rows.append((n, recognition_accuracy(N, n, alpha, beta), correct / trials))
    return rows
