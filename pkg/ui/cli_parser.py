"""
CLI Parser Module - Builds the command-line surface
Separates argument layout from the command handlers that act on it
"""

import argparse

from config import DEFAULT_SEED, DEFAULT_THREADS
from core.errors import UsageError
from features.experiment import ALGORITHMS
from features.lfr_grid import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_MU, DEFAULT_N, DEFAULT_REPLICATES
from features.report_writer import FORMATS

PROG = "cliquetfidf"


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


class CliParserBuilder:
    """Creates the top-level parser and one subparser per command"""

    def __init__(self):
        self.parser = None

    def build(self):
        """Create the full parser; returns it"""
        self.parser = CliArgumentParser(
            prog=PROG,
            description="Graph partitioning by clique-based TF-IDF vertex embeddings",
        )
        self.parser.add_argument(
            "-v", "--verbose", action="count", default=0,
            help="log progress to stderr (-vv for debug detail)",
        )
        self.parser.add_argument(
            "--threads", type=_positive_int, default=DEFAULT_THREADS,
            help=f"worker threads (default {DEFAULT_THREADS})",
        )
        subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

        self._create_cliques_command(subparsers)
        self._create_embed_command(subparsers)
        self._create_partition_command(subparsers)
        self._create_eval_command(subparsers)
        self._create_lfr_grid_command(subparsers)
        self._create_bench_command(subparsers)
        return self.parser

    def _create_cliques_command(self, subparsers):
        """Clique count and size histogram"""
        cmd = subparsers.add_parser("cliques", help="enumerate maximal cliques")
        cmd.add_argument("graph", help="edge-list file or bundled dataset name")
        cmd.add_argument("--dump", metavar="OUT", help="write every clique to this file")
        cmd.add_argument("--giant", action="store_true", help="use only the largest connected component")

    def _create_embed_command(self, subparsers):
        cmd = subparsers.add_parser("embed", help="write the TF-IDF vertex embedding")
        cmd.add_argument("graph", help="edge-list file or bundled dataset name")
        cmd.add_argument("--out", required=True, help="coordinate-triplet output file")
        cmd.add_argument("--giant", action="store_true", help="use only the largest connected component")

    def _create_partition_command(self, subparsers):
        """Fixed-k or automatic-k partitioning"""
        cmd = subparsers.add_parser("partition", help="partition a graph")
        cmd.add_argument("graph", help="edge-list file or bundled dataset name")
        choose_k = cmd.add_mutually_exclusive_group(required=True)
        choose_k.add_argument("--k", type=_positive_int, help="number of blocks")
        choose_k.add_argument("--auto-k", action="store_true", help="pick k by maximizing modularity")
        cmd.add_argument("--method", choices=("aggl", "kmeans"), default="aggl")
        cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
        cmd.add_argument("--out", help="partition file (default stdout)")
        cmd.add_argument("--giant", action="store_true", help="use only the largest connected component")

    def _create_eval_command(self, subparsers):
        cmd = subparsers.add_parser("eval", help="score a partition file")
        cmd.add_argument("graph", help="edge-list file or bundled dataset name")
        cmd.add_argument("partition", help="partition file")
        cmd.add_argument("--ground-truth", help="community file (or bundled name) for NMI")

    def _create_lfr_grid_command(self, subparsers):
        """Parameter rows for the external LFR generator"""
        cmd = subparsers.add_parser("lfr-grid", help="write the LFR parameter grid")
        cmd.add_argument("--n", nargs="+", type=_positive_int, default=list(DEFAULT_N))
        cmd.add_argument("--alpha", nargs="+", default=[str(a) for a in DEFAULT_ALPHA],
                         help="fractions such as 1/20")
        cmd.add_argument("--beta", nargs="+", default=[str(b) for b in DEFAULT_BETA])
        cmd.add_argument("--mu", nargs="+", type=float, default=list(DEFAULT_MU))
        cmd.add_argument("--replicates", type=_positive_int, default=DEFAULT_REPLICATES)
        cmd.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the first row")
        cmd.add_argument("--out", required=True)

    def _create_bench_command(self, subparsers):
        """Experiment runs over one or more datasets"""
        cmd = subparsers.add_parser("bench", help="run experiments and write a report")
        cmd.add_argument("datasets", nargs="+", metavar="DATASET",
                         help="edge-list files or bundled dataset names")
        cmd.add_argument("--method", choices=ALGORITHMS, required=True)
        cmd.add_argument("--k", type=_positive_int, help="block count for aggl/kmeans")
        cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
        cmd.add_argument("--replicates", type=_positive_int, default=1,
                         help="runs per dataset with seeds seed, seed+1, ...")
        cmd.add_argument("--ground-truth", action="append", metavar="GT",
                         help="community file per dataset, or one for a single dataset")
        cmd.add_argument("--giant", action="store_true", help="use only the largest connected component")
        cmd.add_argument("--out", required=True)
        cmd.add_argument("--format", choices=FORMATS, default="csv")
        cmd.add_argument("--append", action="store_true", help="add to an existing report")
        cmd.add_argument("--aggregate", action="store_true", help="add mean rows over replicates")
        cmd.add_argument("--profile-k", action="store_true",
                         help="also write modularity at every dendrogram cut")
        cmd.add_argument("--no-timings", action="store_true",
                         help="zero the seconds_* columns for reproducible reports")


def build_parser():
    return CliParserBuilder().build()
