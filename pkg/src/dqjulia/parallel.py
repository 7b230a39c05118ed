import os
from multiprocessing import Pool, cpu_count
from pickle import PicklingError

WORKERS_ENV_VAR = 'DQJULIA_WORKERS'


def default_worker_count():
    """Worker count from the DQJULIA_WORKERS environment variable, else the number of CPUs.

    :return: Positive number of worker processes.
    :rtype: int
    """
    value = os.environ.get(WORKERS_ENV_VAR, '').strip()
    if not value:
        return cpu_count()
    try:
        workers = int(value)
    except ValueError:
        raise ValueError("{} must be a positive integer, got '{}'".format(WORKERS_ENV_VAR, value))
    if workers < 1:
        raise ValueError("{} must be a positive integer, got '{}'".format(WORKERS_ENV_VAR, value))
    return workers


def run_tasks(fn, tasks, workers=1, verbose=False):
    """Apply fn to every task and return the results in task order.

    Tasks are independent, so the results don't depend on how they are scheduled.

    :param fn: Module-level function taking one task argument.
    :type fn: callable
    :param tasks: Arguments for fn.
    :type tasks: list
    :param workers: Number of processes. 1 runs everything in this process.
    :type workers: int
    :param verbose: Print pool information.
    :type verbose: bool
    :return: Results of fn, one per task.
    :rtype: list
    """
    tasks = list(tasks)
    n_processes = min(len(tasks), workers)
    if n_processes <= 1:
        return [fn(task) for task in tasks]

    try:
        if verbose:
            print("Creating pool with {} processes.".format(n_processes))
        with Pool(processes=n_processes) as p:
            results = p.map(fn, tasks)
    except PicklingError:
        print("WARNING: Tasks could not be sent to worker processes.\n"
              "Switching to sequential processing.")
        results = [fn(task) for task in tasks]
    return results
