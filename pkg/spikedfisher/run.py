# -*- coding: utf-8 -*-
"""
Helper functions to run independent replications serially or in parallel.
"""
import logging as log
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import ConfigError

PLUGINS = ('MultiProc', 'Linear')


def run_replications(func, tasks, plugin='MultiProc', n_cpus=2):
    """ Apply `func` to every item of `tasks` with `plugin`.

    Parameters
    ----------
    func: callable
        A module level function, it has to be picklable for 'MultiProc'.

    tasks: sequence
        Arguments of each call.

    plugin: str or None
        'MultiProc' runs the tasks in a process pool,
        'Linear' or None runs them one after the other.

    n_cpus: int
        Number of processes to use with the 'MultiProc' plugin.
        With `n_cpus` <= 1 the tasks run serially.

    Returns
    -------
    results: list
        The results in the same order as `tasks`, whatever the
        scheduling of the workers was.
    """
    tasks = list(tasks)
    start = time.time()

    if plugin == 'MultiProc' and n_cpus is not None and n_cpus > 1:
        chunksize = max(1, len(tasks) // (4 * n_cpus))
        with ProcessPoolExecutor(max_workers=n_cpus) as executor:
            results = list(executor.map(func, tasks, chunksize=chunksize))
    elif not plugin or plugin in PLUGINS:
        results = [func(task) for task in tasks]
    else:
        raise ConfigError('Expected a plugin in {}, got {}.'.format(PLUGINS, plugin))

    log.info('Ran {} tasks of {} in {:.2f}s.'.format(len(tasks), getattr(func, '__name__', func),
                                                    time.time() - start))
    return results
