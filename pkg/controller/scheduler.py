from concurrent.futures import ThreadPoolExecutor
from tqdm import tqdm
from typing import Callable, Iterable
import logging

logger = logging.getLogger(__name__)

class Scheduler:
    """Runs independent cells (one detuning, one initial state) on a thread pool, keeping their order."""

    def __init__(self, threads: int = 1, progress: bool = True) -> None:
        """
        :param threads: Number of worker threads.
        :type threads: int
        :param progress: Show a progress bar on stderr.
        :type progress: bool
        """
        if threads < 1:
            raise ValueError(f"threads must be at least 1, got {threads}")
        self.__threads: int = threads
        self.__progress: bool = progress

    def get_threads(self) -> int:
        return self.__threads

    def map(self, function: Callable, items: Iterable) -> list:
        """
        Apply the function to every item. Results come back in the order of the items.

        :rtype: list
        """
        items = list(items)
        disable = not self.__progress or len(items) < 2
        if self.__threads == 1 or len(items) < 2:
            return [function(item) for item in tqdm(items, disable=disable, leave=False)]
        logger.debug("running %d cells on %d threads", len(items), self.__threads)
        with ThreadPoolExecutor(max_workers=self.__threads) as executor:
            return list(tqdm(executor.map(function, items), total=len(items), disable=disable, leave=False))
