"""
Error Types Module - Exception hierarchy shared by the whole pipeline
Library code raises these; only the command-line layer turns them into exit codes
"""


class CliqueTfidfError(Exception):
    """Base exception for every pipeline failure"""
    pass


class ConfigError(CliqueTfidfError):
    """Invalid value in the environment or .env file"""
    pass


class UsageError(CliqueTfidfError):
    """Bad or conflicting command-line flags"""
    pass


class GraphParseError(CliqueTfidfError):
    """Malformed or empty edge-list input"""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DatasetNotFoundError(CliqueTfidfError):
    """Neither an existing edge-list path nor a bundled dataset name"""
    pass


class CliqueBudgetExceeded(CliqueTfidfError):
    """Maximal clique count went past the configured cap"""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"clique budget exceeded: more than {budget} maximal cliques")


class DimensionMismatchError(CliqueTfidfError):
    """Matrix or vector shapes do not line up"""
    pass


class EmbeddingError(CliqueTfidfError):
    """The vertex embedding cannot be built from the given matrices"""
    pass


class ClusteringError(CliqueTfidfError):
    """Invalid clustering request (k out of range and the like)"""
    pass


class InvalidKError(ClusteringError):
    """Requested block count outside what the embedding can give"""
    pass


class DenseBudgetExceeded(ClusteringError):
    """Dense distance matrix would not fit the configured budget"""

    def __init__(self, rows, budget):
        self.rows = rows
        self.budget = budget
        super().__init__(
            f"{rows} rows exceed the dense distance-matrix budget of {budget}; "
            "use the k-means method (--method kmeans) for graphs this large "
            "or raise CLIQUETFIDF_DENSE_MAX_VERTICES"
        )


class MetricError(CliqueTfidfError):
    """A quality metric is undefined for the given input"""
    pass


class PartitionFileError(CliqueTfidfError):
    """Partition or ground-truth file does not match the graph"""
    pass


class InvalidParameterError(CliqueTfidfError, ValueError):
    """Generator or grid parameter outside its allowed range"""
    pass


class ExperimentError(CliqueTfidfError):
    """Pipeline failure, carrying the dataset it happened on"""

    def __init__(self, dataset, cause):
        self.dataset = dataset
        self.cause = cause
        super().__init__(f"{dataset}: {cause}")
