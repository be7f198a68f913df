"""
Prometheus metrics for CLI commands and verification suites.

The counters live in the default registry; ``dump_metrics`` writes them in the
text exposition format so batch runs can be scraped by a node exporter.
"""
from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

CHECKS_TOTAL = Counter(
    "knsuper_checks_total", "Verification checks executed", ["suite", "status"]
)
ERROR_COUNT = Counter(
    "knsuper_errors_total", "Command errors", ["command", "error_type"]
)
COMMAND_LATENCY = Histogram(
    "knsuper_command_latency_seconds", "Command latency in seconds", ["command"]
)


def dump_metrics(path: str) -> None:
    write_to_textfile(path, REGISTRY)
