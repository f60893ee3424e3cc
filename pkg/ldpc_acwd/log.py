import logging
import sys


# stdout carries CLI tables, so records go to stderr
acwd_logger = logging.getLogger("ldpc_acwd")
acwd_logger.addHandler(logging.StreamHandler(sys.stderr))
acwd_logger.setLevel(logging.INFO)


class _AcwdLogger(logging.LoggerAdapter):
    """Prefixes every record with the component header, e.g. `| ORACLE | ...`."""

    def __init__(self, header: str, logger: logging.Logger):
        super().__init__(logger, {})
        self.header = header

    def process(self, msg: str, kwargs):
        return f"| {self.header} | {msg}", kwargs


def set_verbose(verbose: bool) -> None:
    acwd_logger.setLevel(logging.DEBUG if verbose else logging.INFO)
