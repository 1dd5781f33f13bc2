# src/storage/sqlite_manager.py

import json
import sqlite3
import threading
from typing import Any, Dict, List, Optional

import numpy as np

from src.utils.config_loader import config
from src.utils.logger import get_logger

logger = get_logger(__name__)


class SQLiteManager:
    """
    Thread-safe singleton SQLite manager for the workbench cache.

    Features:
    - Verdict reports from CLI runs (one row per report entry, payload as JSON).
    - Prime cache (int64 blob) so sigma-tests rerun without sieving.
    - Run metadata KV store (last_run_id, runs_total, last_seed).
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        with cls._lock:
            if cls._instance is None:
                instance = super().__new__(cls)
                instance.db_path = config.db_path
                instance.conn = sqlite3.connect(instance.db_path, check_same_thread=False)
                instance.conn.row_factory = sqlite3.Row
                instance.cursor = instance.conn.cursor()
                instance._write_lock = threading.Lock()
                instance._create_tables()
                cls._instance = instance
                logger.debug(f"Opened workbench database at {instance.db_path}")
            return cls._instance

    @classmethod
    def reset(cls) -> None:
        """Close and forget the singleton (tests point the cache elsewhere)."""
        with cls._lock:
            if cls._instance is not None:
                cls._instance.close()
            cls._instance = None

    # ---------------------------------------------------------------------
    # Schema
    # ---------------------------------------------------------------------
    def _create_tables(self):
        """Create database tables if they don't exist."""
        self.cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS reports (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_id TEXT NOT NULL,
                check_id TEXT NOT NULL,
                anchor TEXT,
                verdict TEXT NOT NULL,
                seed INTEGER,
                payload TEXT,          -- JSON object of the full report entry
                created_at DATETIME DEFAULT CURRENT_TIMESTAMP
            );
            """
        )

        self.cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS prime_cache (
                id INTEGER PRIMARY KEY CHECK (id = 1),
                count INTEGER NOT NULL,
                largest INTEGER NOT NULL,
                primes BLOB NOT NULL,
                updated_at DATETIME DEFAULT CURRENT_TIMESTAMP
            );
            """
        )

        self.cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS run_metadata (
                key TEXT PRIMARY KEY,
                value TEXT
            );
            """
        )

        self.cursor.execute("CREATE INDEX IF NOT EXISTS idx_reports_run_id ON reports(run_id);")
        self.cursor.execute("CREATE INDEX IF NOT EXISTS idx_reports_check_id ON reports(check_id);")
        self.cursor.execute("CREATE INDEX IF NOT EXISTS idx_reports_verdict ON reports(verdict);")
        self.conn.commit()

    # ---------------------------------------------------------------------
    # Run Metadata
    # ---------------------------------------------------------------------
    def update_run_metadata(self, key: str, value: str) -> None:
        with self._write_lock:
            self.cursor.execute(
                """
                INSERT INTO run_metadata(key, value) VALUES(?, ?)
                ON CONFLICT(key) DO UPDATE SET value=excluded.value;
                """,
                (key, value),
            )
            self.conn.commit()

    def get_run_metadata(self, key: str) -> Optional[str]:
        self.cursor.execute("SELECT value FROM run_metadata WHERE key = ?;", (key,))
        row = self.cursor.fetchone()
        return row["value"] if row else None

    def record_run(self, run_id: str, seed: int) -> None:
        """Convenience helper for last run & counters."""
        self.update_run_metadata("last_run_id", run_id)
        self.update_run_metadata("last_seed", str(seed))
        current = int(self.get_run_metadata("runs_total") or "0")
        self.update_run_metadata("runs_total", str(current + 1))

    # ---------------------------------------------------------------------
    # Reports
    # ---------------------------------------------------------------------
    def insert_report(self, run_id: str, entry: Dict[str, Any]) -> int:
        with self._write_lock:
            self.cursor.execute(
                """
                INSERT INTO reports (run_id, check_id, anchor, verdict, seed, payload)
                VALUES (?, ?, ?, ?, ?, ?);
                """,
                (
                    run_id,
                    entry.get("check_id", "unknown"),
                    entry.get("anchor", ""),
                    entry.get("verdict", "inconclusive"),
                    entry.get("seed"),
                    json.dumps(entry, sort_keys=True, default=str),
                ),
            )
            self.conn.commit()
            return int(self.cursor.lastrowid)

    def get_reports(
        self,
        *,
        verdict: Optional[str] = None,
        check_id: Optional[str] = None,
        run_id: Optional[str] = None,
        limit: int = 500,
    ) -> List[Dict[str, Any]]:
        where = []
        params: List[Any] = []

        if verdict:
            where.append("verdict = ?")
            params.append(verdict)

        if check_id:
            where.append("check_id LIKE ?")
            params.append(f"%{check_id}%")

        if run_id:
            where.append("run_id = ?")
            params.append(run_id)

        where_clause = f"WHERE {' AND '.join(where)}" if where else ""
        self.cursor.execute(
            f"""
            SELECT * FROM reports
            {where_clause}
            ORDER BY id DESC
            LIMIT ?;
            """,
            (*params, limit),
        )
        rows = []
        for r in self.cursor.fetchall():
            row = dict(r)
            row["payload"] = json.loads(row["payload"]) if row["payload"] else {}
            rows.append(row)
        return rows

    def get_verdict_counts(self, run_id: Optional[str] = None) -> Dict[str, int]:
        if run_id:
            self.cursor.execute(
                "SELECT verdict, COUNT(*) AS total FROM reports WHERE run_id = ? GROUP BY verdict;",
                (run_id,),
            )
        else:
            self.cursor.execute("SELECT verdict, COUNT(*) AS total FROM reports GROUP BY verdict;")
        return {r["verdict"]: int(r["total"]) for r in self.cursor.fetchall()}

    def get_run_ids(self) -> List[str]:
        self.cursor.execute("SELECT run_id FROM reports GROUP BY run_id ORDER BY MAX(id) DESC;")
        return [r["run_id"] for r in self.cursor.fetchall()]

    # ---------------------------------------------------------------------
    # Prime cache
    # ---------------------------------------------------------------------
    def store_primes(self, primes: np.ndarray) -> None:
        primes = np.ascontiguousarray(primes, dtype=np.int64)
        with self._write_lock:
            self.cursor.execute(
                """
                INSERT INTO prime_cache (id, count, largest, primes) VALUES (1, ?, ?, ?)
                ON CONFLICT(id) DO UPDATE SET
                    count = excluded.count,
                    largest = excluded.largest,
                    primes = excluded.primes,
                    updated_at = CURRENT_TIMESTAMP;
                """,
                (int(primes.size), int(primes[-1]) if primes.size else 0, primes.tobytes()),
            )
            self.conn.commit()
        logger.info(f"💾 Cached {primes.size} primes")

    def load_primes(self) -> Optional[np.ndarray]:
        self.cursor.execute("SELECT count, primes FROM prime_cache WHERE id = 1;")
        row = self.cursor.fetchone()
        if not row:
            return None
        primes = np.frombuffer(row["primes"], dtype=np.int64)
        if primes.size != row["count"]:
            logger.warning("Prime cache is corrupt, ignoring it")
            return None
        return primes.copy()

    def close(self):
        if hasattr(self, "conn"):
            self.conn.close()
