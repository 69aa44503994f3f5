"""
Experiment Module - Run the full pipeline on a dataset and report on it

parse -> cliques -> matrices -> tfidf -> clustering (-> auto-k) -> metrics,
each phase timed. Failures come back as ExperimentError naming the dataset.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from config import CLIQUE_BUDGET, DEFAULT_SEED, DEFAULT_THREADS
from core.embedding import embed
from core.errors import CliqueTfidfError, ConfigError, DatasetNotFoundError, ExperimentError
from core.graph import giant_component
from core.partition import Partition
from features.auto_k import auto_k, modularity_profile
from features.clustering import agglomerative_hierarchy, cosine_distance_matrix, cut, kmeans
from features.metrics import MetricsReport, metrics_report, modularity, permanence
from utils.datasets import karate_ground_truth, load_dataset
from utils.file_formats import read_community_file
from utils.timing import PhaseTimer

logger = logging.getLogger(__name__)

ALGORITHMS = ("aggl", "kmeans", "auto-k")

BUILTIN_GROUND_TRUTHS = {"karate": karate_ground_truth}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One pipeline run

    Attributes:
        dataset (str): edge-list path or bundled dataset name
        algorithm (str): "aggl", "kmeans" or "auto-k"
        k (int | None): block count for the fixed-k methods; taken from the
            ground truth when left out
        seed (int): k-means seed, echoed into the report
        ground_truth (str | None): community file path or bundled name
        giant (bool): restrict to the largest connected component
        threads (int): worker count for cliques and the auto-k modularity evaluations
        label (str | None): dataset name written to the report
        replicate (str): replicate tag written to the report
        profile_k (bool): also record modularity at every dendrogram cut
    """

    dataset: str
    algorithm: str = "auto-k"
    k: int = None
    seed: int = DEFAULT_SEED
    ground_truth: str = None
    giant: bool = False
    threads: int = DEFAULT_THREADS
    label: str = None
    replicate: str = ""
    profile_k: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {', '.join(ALGORITHMS)}, got {self.algorithm!r}")
        if self.algorithm == "auto-k" and self.k is not None:
            raise ConfigError("auto-k chooses k itself; drop the explicit k")
        if self.algorithm != "auto-k" and self.k is None and self.ground_truth is None:
            raise ConfigError(f"{self.algorithm} needs a k or a ground truth to take k from")
        if self.k is not None and self.k < 1:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.threads < 1:
            raise ConfigError(f"threads must be positive, got {self.threads}")

    @property
    def name(self):
        return self.label or self.dataset


@dataclass
class PipelineResult:
    """What partition_graph produced along the way"""

    partition: Partition
    clique_set: object
    embedding: object
    dendrogram: object = None
    auto: object = None
    timings: dict = field(default_factory=dict)


def load_ground_truth(path):
    """
    Read a community file, or a bundled ground truth by dataset name

    Returns:
        LabeledPartition: blocks keyed by original vertex id
    """
    if os.path.isfile(path):
        return read_community_file(path)
    if path in BUILTIN_GROUND_TRUTHS:
        return BUILTIN_GROUND_TRUTHS[path]()
    raise DatasetNotFoundError(f"ground truth {path!r} is not a file or a bundled dataset")


def partition_graph(graph, algorithm, k=None, seed=0, threads=1, timer=None, budget=None):
    """
    Embed a graph and cluster it

    For "aggl" k is the dendrogram cut level, for "kmeans" the cluster
    count; in both cases over the vertices with a non-zero embedding row.

    Returns:
        PipelineResult
    """
    timer = timer if timer is not None else PhaseTimer()
    budget = CLIQUE_BUDGET if budget is None else budget
    embedding, clique_set = embed(graph, budget=budget, threads=threads, timer=timer)
    logger.info("%d maximal cliques", clique_set.d)

    result = PipelineResult(None, clique_set, embedding)
    if not embedding.active_rows:
        logger.warning("No vertex has a non-zero embedding row; every vertex is its own block")
        result.partition = Partition.singletons(graph.n)
        result.timings = timer.as_dict()
        return result

    with timer.phase("clustering"):
        if algorithm == "kmeans":
            result.partition = kmeans(embedding, k, seed)
        else:
            D = cosine_distance_matrix(embedding)
            result.dendrogram = agglomerative_hierarchy(
                D, leaves=embedding.active_rows, n_vertices=graph.n, overwrite=True
            )
            if algorithm == "aggl":
                result.partition = cut(result.dendrogram, k)

    if algorithm == "auto-k":
        with timer.phase("auto-k"):
            result.auto = auto_k(result.dendrogram, graph, threads=threads)
        result.partition = result.auto.partition

    result.timings = timer.as_dict()
    return result


def run_experiment(cfg):
    """
    Execute one configuration end to end

    Returns:
        MetricsReport

    Raises:
        ExperimentError: wrapping whatever failed, with the dataset name
    """
    timer = PhaseTimer()
    logger.info("Running %s on %s (seed %d)", cfg.algorithm, cfg.name, cfg.seed)
    try:
        with timer.phase("parse"):
            graph = load_dataset(cfg.dataset)
            if cfg.giant:
                graph, _ = giant_component(graph)
            truth = None
            if cfg.ground_truth is not None:
                truth = load_ground_truth(cfg.ground_truth).align(graph, allow_extra=cfg.giant)

        k = cfg.k
        if cfg.algorithm != "auto-k" and k is None:
            k = truth.k
            logger.info("Using the ground-truth block count k=%d", k)

        result = partition_graph(graph, cfg.algorithm, k=k, seed=cfg.seed, threads=cfg.threads, timer=timer)

        with timer.phase("metrics"):
            report = metrics_report(
                graph,
                result.partition,
                ground_truth=truth,
                dataset=cfg.name,
                algorithm=cfg.algorithm,
                seed=cfg.seed,
                cliques=result.clique_set.d,
                replicate=cfg.replicate,
            )
            if cfg.profile_k:
                if result.dendrogram is None:
                    logger.warning("No dendrogram for %s; skipping the modularity profile", cfg.algorithm)
                elif graph.m:
                    report.profile = modularity_profile(result.dendrogram, graph, threads=cfg.threads)
    except ExperimentError:
        raise
    except (CliqueTfidfError, OSError) as e:
        raise ExperimentError(cfg.name, e) from e

    report.per_phase_seconds = timer.as_dict()
    return report


def run_experiments(configs, threads=1):
    """Run independent configurations, results in input order"""
    configs = list(configs)
    if threads > 1 and len(configs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_experiment, configs))
    return [run_experiment(cfg) for cfg in configs]


def replicate_configs(cfg, seeds):
    """One copy of cfg per seed, tagged with its replicate number"""
    return [replace(cfg, seed=seed, replicate=str(i)) for i, seed in enumerate(seeds, start=1)]


def ground_truth_quality(graph, truth):
    """Modularity and permanence of a reference partition itself"""
    return {
        "k": truth.k,
        "modularity": modularity(graph, truth) if graph.m else 0.0,
        "permanence": permanence(graph, truth),
    }


AVERAGED_FIELDS = ("modularity", "permanence", "nmi", "k", "n", "m", "cliques")


def aggregate_reports(reports):
    """
    Mean over replicates of each (dataset, algorithm) pair

    nmi is averaged only when every replicate has one. The result rows carry
    replicate "mean" and the seed of the first replicate.

    Returns:
        list: MetricsReport per pair, in first-seen order
    """
    groups = {}
    for report in reports:
        groups.setdefault((report.dataset, report.algorithm), []).append(report)

    means = []
    for (dataset, algorithm), members in groups.items():
        count = len(members)
        values = {}
        for name in AVERAGED_FIELDS:
            column = [getattr(r, name) for r in members]
            values[name] = None if any(v is None for v in column) else sum(column) / count
        phases = {}
        for r in members:
            for phase, seconds in r.per_phase_seconds.items():
                phases[phase] = phases.get(phase, 0.0) + seconds / count
        means.append(MetricsReport(
            per_phase_seconds=phases,
            dataset=dataset,
            algorithm=algorithm,
            seed=members[0].seed,
            replicate="mean",
            **values,
        ))
    return means
