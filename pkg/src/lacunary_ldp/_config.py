import os

DEFAULT_WORK_BOUND = 50_000_000


def work_bound(override=None):
    """Return the active work bound.

    An explicit ``override`` wins, then the ``LDP_WORKBOUND`` environment
    variable, then :data:`DEFAULT_WORK_BOUND`.
    """
    if override is not None:
        return int(override)
    env = os.environ.get("LDP_WORKBOUND")
    if env:
        return int(env)
    return DEFAULT_WORK_BOUND
