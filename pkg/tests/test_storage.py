# tests/test_storage.py

import uuid

import numpy as np

from src.reports.cli import store_entries
from src.sequences.primes import first_primes
from src.storage.sqlite_manager import SQLiteManager


class TestReports:
    def test_insert_and_filter(self):
        db = SQLiteManager()
        run_id = uuid.uuid4().hex
        db.insert_report(run_id, {"check_id": "demo.a", "verdict": "verified", "seed": 4, "inputs": {"x": 1}})
        db.insert_report(run_id, {"check_id": "demo.b", "verdict": "counterexample"})
        rows = db.get_reports(run_id=run_id)
        assert [r["check_id"] for r in rows] == ["demo.b", "demo.a"]
        assert rows[1]["payload"]["inputs"] == {"x": 1}
        assert db.get_verdict_counts(run_id) == {"verified": 1, "counterexample": 1}
        assert [r["check_id"] for r in db.get_reports(run_id=run_id, verdict="verified")] == ["demo.a"]

    def test_singleton(self):
        assert SQLiteManager() is SQLiteManager()

    def test_reset_reopens_same_database(self):
        run_id = uuid.uuid4().hex
        old = SQLiteManager()
        old.insert_report(run_id, {"check_id": "demo.d", "verdict": "verified"})
        SQLiteManager.reset()
        fresh = SQLiteManager()
        assert fresh is not old
        assert [r["check_id"] for r in fresh.get_reports(run_id=run_id)] == ["demo.d"]

    def test_store_entries_records_run(self):
        run_id = store_entries([{"check_id": "demo.c", "verdict": "inconclusive"}], seed=11)
        db = SQLiteManager()
        assert db.get_run_metadata("last_run_id") == run_id
        assert db.get_run_metadata("last_seed") == "11"
        assert run_id in db.get_run_ids()
        assert store_entries([], seed=0) is None


class TestPrimeCache:
    def test_roundtrip(self):
        db = SQLiteManager()
        db.store_primes(np.array([2, 3, 5, 7], dtype=np.int64))
        assert db.load_primes().tolist() == [2, 3, 5, 7]

    def test_first_primes_uses_cache(self):
        db = SQLiteManager()
        db.store_primes(np.array([2, 3, 5, 7, 11], dtype=np.int64))
        assert first_primes(3, store=db).tolist() == [2, 3, 5]
        assert first_primes(8, store=db).tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
        assert db.load_primes().size == 8
