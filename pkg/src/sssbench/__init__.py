"""Game-tree search suite: SSS*, alpha-beta variants and MT-SSS* with benchmarking."""

__version__ = "0.1.0"
