import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, TypeVar

from tqdm.auto import tqdm

from .. import log
from ..config import Budgets, Settings
from ..exceptions import BudgetError, ParameterError
from ..ensembles.expr import EnsembleExpr

T = TypeVar("T")


class BaseEvaluator:
    """
    Base class: budgets, settings, logging, the shared memo and the threaded
    table fill used by both evaluation mixins.
    """

    def __init__(self, budgets: Optional[Budgets] = None, settings: Optional[Settings] = None):
        self.budgets = budgets or Budgets.from_env()
        self.settings = settings or Settings.from_env()
        self.logger = log._AcwdLogger("EVALUATOR", log.acwd_logger)

        self._memo: Dict[Hashable, object] = {}
        self._lock = threading.Lock()

    # ---------- memo ----------
    def _memoized(self, key: Hashable, compute: Callable[[], T]) -> T:
        """
        Look up key, computing it outside the lock on a miss. Two threads may
        compute the same value; the first insert wins and both return it.
        """
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def clear_cache(self) -> None:
        with self._lock:
            self._memo.clear()

    @property
    def cache_size(self) -> int:
        return len(self._memo)

    # ---------- guards ----------
    def _check_weight(self, expr: EnsembleExpr, w: int) -> None:
        if not 0 <= w <= expr.n:
            raise ParameterError(f"weight w={w} outside [0, {expr.n}] for {expr}")

    def _check_sigma(self, expr: EnsembleExpr, sigma: int) -> None:
        if not 0 <= sigma <= expr.m:
            raise ParameterError(f"syndrome weight sigma={sigma} outside [0, {expr.m}] for {expr}")

    def _require_full_syndrome(self, expr: EnsembleExpr, reason: str) -> None:
        if expr.m > self.budgets.max_syndrome_bits:
            raise BudgetError(
                f"{reason} needs all 2^{expr.m} syndromes of {expr}, "
                f"above max_syndrome_bits={self.budgets.max_syndrome_bits}"
            )
        self.logger.debug(f"Full syndrome path for {expr} ({reason}, m={expr.m})")

    # ---------- concurrent fill ----------
    def _fill(self, keys: Iterable[T], compute: Callable[[T], object], desc: str) -> Dict[T, object]:
        """
        Evaluate compute(key) for every key on the worker pool and gather the
        results as they complete.
        """
        keys = list(keys)
        results: Dict[T, object] = {}
        with ThreadPoolExecutor(max_workers=self.settings.workers) as ex:
            futures = {ex.submit(compute, key): key for key in keys}
            with tqdm(total=len(keys), desc=desc, unit="row", disable=not self.settings.show_progress) as pbar:
                for fut in as_completed(futures):
                    results[futures[fut]] = fut.result()
                    pbar.update(1)
        return results

    @staticmethod
    def _ordered(results: Dict[int, List[Fraction]], count: int) -> List[List[Fraction]]:
        return [results[i] for i in range(count)]
