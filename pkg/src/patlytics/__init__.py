"""Patent analytics platform.

Ingests USPTO bulk full-text XML, predicts days-to-grant with calibrated
confidence, and serves summary analytics over a REST API and CLI.
"""

__version__ = "0.1.0"


class PatlyticsError(Exception):
    """Base class for all errors raised by this package."""
