import logging
import sys

class _StderrHandler(logging.StreamHandler):
    # sys.stderr is resolved per record
    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass

def setup_logging(level: str = "INFO") -> None:
    # stdout carries the report; diagnostics go to stderr
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s | %(levelname)s | %(message)s",
        handlers=[_StderrHandler()],
        force=True,
    )
