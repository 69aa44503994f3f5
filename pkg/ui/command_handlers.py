"""
Command Handlers Module - Runs each CLI command against the pipeline
stdout carries results only; progress and timings go to stderr
"""

import json
import logging
import sys

from config import CLIQUE_BUDGET
from core.cliques import clique_size_distribution, enumerate_maximal_cliques
from core.errors import UsageError
from core.graph import giant_component
from core.embedding import embed
from features.experiment import (
    ExperimentConfig,
    load_ground_truth,
    partition_graph,
    replicate_configs,
    run_experiments,
)
from features.lfr_grid import lfr_parameter_grid, write_grid_csv
from features.metrics import metrics_report, modularity
from features.report_writer import ReportWriter
from utils.datasets import load_dataset
from utils.file_formats import export_embedding, read_partition, write_clique_dump, write_partition
from utils.timing import PhaseTimer

logger = logging.getLogger(__name__)


class PipelineCommandHandlers:
    """One handle_* method per subcommand, each returning an exit code"""

    def __init__(self, threads=1, stdout=None, stderr=None):
        self.threads = threads
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def handlers(self):
        """Subcommand name -> handler"""
        return {
            "cliques": self.handle_cliques,
            "embed": self.handle_embed,
            "partition": self.handle_partition,
            "eval": self.handle_eval,
            "lfr-grid": self.handle_lfr_grid,
            "bench": self.handle_bench,
        }

    def dispatch(self, args):
        return self.handlers()[args.command](args)

    def _load(self, name, giant=False, timer=None):
        timer = timer if timer is not None else PhaseTimer()
        with timer.phase("parse"):
            graph = load_dataset(name)
            if giant:
                graph, _ = giant_component(graph)
        return graph

    def _print(self, text):
        self.stdout.write(text + "\n")

    def handle_cliques(self, args):
        """n, m, d and one "size:count" line per clique size, largest first"""
        graph = self._load(args.graph, args.giant)
        clique_set = enumerate_maximal_cliques(graph, budget=CLIQUE_BUDGET, threads=self.threads)
        self._print(f"n={graph.n}")
        self._print(f"m={graph.m}")
        self._print(f"d={clique_set.d}")
        for size, count in clique_size_distribution(clique_set).items():
            self._print(f"{size}:{count}")
        if args.dump:
            write_clique_dump(clique_set, graph, args.dump)
            logger.info("Wrote %d cliques to %s", clique_set.d, args.dump)
        return 0

    def handle_embed(self, args):
        graph = self._load(args.graph, args.giant)
        embedding, _ = embed(graph, budget=CLIQUE_BUDGET, threads=self.threads)
        map_path = export_embedding(embedding, graph, args.out)
        self._print(f"n={embedding.n} d={embedding.d} nnz={embedding.Z.nnz}")
        logger.info("Vertex id mapping in %s", map_path)
        return 0

    def handle_partition(self, args):
        """Write the partition; "k=.. modularity=.." goes to stderr"""
        if args.auto_k and args.method == "kmeans":
            raise UsageError("--auto-k works with the agglomerative method only")
        algorithm = "auto-k" if args.auto_k else args.method

        timer = PhaseTimer()
        graph = self._load(args.graph, args.giant, timer)
        result = partition_graph(graph, algorithm, k=args.k, seed=args.seed, threads=self.threads, timer=timer)
        q = modularity(graph, result.partition) if graph.m else 0.0

        header = f"method={algorithm} k={result.partition.k} seed={args.seed}"
        if args.out:
            write_partition(result.partition, graph, path=args.out, header=header)
        else:
            write_partition(result.partition, graph, stream=self.stdout, header=header)
        self.stderr.write(f"k={result.partition.k} modularity={q!r}\n")
        return 0

    def handle_eval(self, args):
        """MetricsReport as JSON on stdout"""
        timer = PhaseTimer()
        graph = self._load(args.graph, timer=timer)
        with timer.phase("parse"):
            partition = read_partition(args.partition, graph)
            truth = None
            if args.ground_truth:
                truth = load_ground_truth(args.ground_truth).align(graph)
        with timer.phase("metrics"):
            report = metrics_report(
                graph, partition, ground_truth=truth,
                dataset=args.graph, algorithm="eval",
            )
        report.per_phase_seconds = timer.as_dict()
        self._print(json.dumps(report.to_dict(), indent=2))
        return 0

    def handle_lfr_grid(self, args):
        rows = lfr_parameter_grid(
            n_set=args.n,
            alpha_set=args.alpha,
            beta_set=args.beta,
            mu_set=args.mu,
            replicates=args.replicates,
            base_seed=args.seed,
        )
        write_grid_csv(rows, args.out)
        self._print(f"rows={len(rows)}")
        return 0

    def _ground_truths(self, args):
        truths = args.ground_truth or []
        if not truths:
            return [None] * len(args.datasets)
        if len(truths) == len(args.datasets):
            return truths
        raise UsageError(
            f"{len(truths)} --ground-truth files for {len(args.datasets)} datasets; give one per dataset"
        )

    def handle_bench(self, args):
        """Run every dataset x replicate, then write the report once"""
        if args.method == "auto-k" and args.k is not None:
            raise UsageError("--k cannot be combined with --method auto-k")
        configs = []
        for dataset, truth in zip(args.datasets, self._ground_truths(args)):
            base = ExperimentConfig(
                dataset=dataset,
                algorithm=args.method,
                k=args.k,
                seed=args.seed,
                ground_truth=truth,
                giant=args.giant,
                threads=self.threads,
                profile_k=args.profile_k,
            )
            configs.extend(replicate_configs(base, range(args.seed, args.seed + args.replicates)))

        reports = run_experiments(configs, threads=self.threads)
        writer = ReportWriter(args.out, args.format)
        written = writer.add_reports(
            reports, append=args.append, aggregate=args.aggregate, timings=not args.no_timings,
        )
        if args.profile_k:
            writer.write_profile(reports)
        self._print(f"reports={written}")
        return 0
