# src/sequences/primes.py

import math
from typing import Optional

import numpy as np
from numba import njit

from src.storage.sqlite_manager import SQLiteManager
from src.utils.logger import get_logger

logger = get_logger(__name__)


@njit(cache=True)
def _sieve_flags(limit):
    flags = np.ones(limit + 1, dtype=np.bool_)
    flags[0] = False
    if limit >= 1:
        flags[1] = False
    i = 2
    while i * i <= limit:
        if flags[i]:
            for j in range(i * i, limit + 1, i):
                flags[j] = False
        i += 1
    return flags


def nth_prime_upper_bound(J: int) -> int:
    """p_J <= J (ln J + ln ln J) for J >= 6."""
    if J < 6:
        return 15
    return int(math.ceil(J * (math.log(J) + math.log(math.log(J)))))


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return np.nonzero(_sieve_flags(int(limit)))[0].astype(np.int64)


def first_primes(J: int, use_cache: bool = True, store: Optional[SQLiteManager] = None) -> np.ndarray:
    """The first J primes, served from the SQLite prime cache when it is long enough."""
    if J <= 0:
        return np.zeros(0, dtype=np.int64)
    if use_cache:
        store = store or SQLiteManager()
        cached = store.load_primes()
        if cached is not None and cached.size >= J:
            logger.debug(f"Prime cache hit for J={J}")
            return cached[:J]
    limit = nth_prime_upper_bound(J)
    logger.info(f"Sieving primes up to {limit} for J={J}")
    primes = primes_up_to(limit)[:J]
    if use_cache:
        store.store_primes(primes)
    return primes
