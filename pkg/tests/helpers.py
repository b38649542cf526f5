import functools

from drgricci import catalog


@functools.lru_cache(maxsize=None)
def cached_graph(label):
    """Catalog graphs are immutable, so tests share one instance per label."""
    return catalog.parse_name(label).build()
