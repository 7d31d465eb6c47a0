import os


class AppConfig:
    """
    Configuration File
    """
    APP_NAME: str = "rm-pmepr"

    # Envelope estimation
    DEFAULT_OVERSAMPLING: int = 64
    REFINE_TOL: float = 1e-10

    # Size caps
    WHT_CAP: int = 1 << 24
    EXHAUSTIVE_SWEEP_CAP: int = 1 << 18
    ENUMERATE_CAP: int = 1 << 22
    SEARCH_WORK_CAP: int = 1 << 22

    # Sampled sweeps
    SAMPLE_SEED: int = 0x5EED
    SAMPLE_SIZE: int = 1 << 16
    TIGHTNESS_TOL: float = 0.02

    # Default to these, will be updated in initialize() based on the environment
    WORKERS: int = 1
    LOG_LEVEL: str = "WARNING"

    @classmethod
    def initialize(cls) -> None:
        """
        Read the environment overrides:
        - RM_PMEPR_WORKERS: worker count for the search
        - RM_PMEPR_LOG_LEVEL: root logger level name
        """
        workers = os.environ.get('RM_PMEPR_WORKERS')
        if workers:
            try:
                cls.WORKERS = max(1, int(workers))
            except ValueError:
                raise ValueError(f"RM_PMEPR_WORKERS must be an integer, got {workers!r}")
        level = os.environ.get('RM_PMEPR_LOG_LEVEL')
        if level:
            cls.LOG_LEVEL = level.upper()
