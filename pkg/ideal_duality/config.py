import os
import time

__version__ = "0.1.0"


class Config:
    """Configuration settings for the duality engine."""

    ENGINE_VERSION = __version__

    # Logging Configuration
    LOG_LEVEL = os.getenv('IDEAL_DUALITY_LOG_LEVEL', 'WARNING')  # DEBUG, INFO, WARNING, ERROR, CRITICAL

    # Directory for log files; empty means console only
    LOG_FOLDER = os.getenv('IDEAL_DUALITY_LOG_FOLDER', '')

    # Monomial order used when a problem file does not name one
    DEFAULT_ORDER = os.getenv('IDEAL_DUALITY_ORDER', 'grevlex')

    # Oracle cross-check defaults
    DEFAULT_SEED = int(os.getenv('IDEAL_DUALITY_SEED', 0))
    DEFAULT_TRIALS = int(os.getenv('IDEAL_DUALITY_TRIALS', 100))

    # Dual-space degree growth stops here even if the dimension is still increasing
    MAX_DERIVATIVE_ORDER = int(os.getenv('IDEAL_DUALITY_MAX_DERIVATIVE_ORDER', 16))

    # A resolution over n variables may take n + slack syzygy steps
    MAX_RESOLUTION_LENGTH_SLACK = int(os.getenv('IDEAL_DUALITY_RESOLUTION_SLACK', 1))

    # Reporting
    REPORT_INDENT = int(os.getenv('IDEAL_DUALITY_REPORT_INDENT', 2))
    FIXTURE_FOLDER = os.getenv('IDEAL_DUALITY_FIXTURES', 'fixtures')

    @classmethod
    def get_log_file_path(cls, run_name):
        """Get a timestamped log file path for a run, creating the folder if needed."""
        if not cls.LOG_FOLDER:
            return None
        if not os.path.exists(cls.LOG_FOLDER):
            os.makedirs(cls.LOG_FOLDER)
        return os.path.join(cls.LOG_FOLDER, f"ideal_duality_{run_name}_{time.strftime('%Y%m%d_%H%M%S')}.log")
