# src/utils/config_loader.py

import os
from pathlib import Path
from dotenv import load_dotenv


class Config:
    def __init__(self):
        load_dotenv()
        # The cache directory is the only setting read from the environment;
        # everything else comes from a run config file or CLI flags.
        self.CACHE_DIR = os.getenv("WORKBENCH_CACHE_DIR", "data/cache")
        self.LOG_LEVEL = "INFO"
        self.DB_FILENAME = "workbench.db"
        self.MPMATH_PRECISION = 50

    @property
    def cache_path(self) -> Path:
        path = Path(self.CACHE_DIR)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @property
    def db_path(self) -> Path:
        return self.cache_path / self.DB_FILENAME

    def __repr__(self):
        return f"<Config CACHE_DIR={self.CACHE_DIR}, LOG_LEVEL={self.LOG_LEVEL}>"


config = Config()
