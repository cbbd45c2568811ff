"""
Persistence of the principal Möbius cache.

File format: the header line "mobius-cache v1", then one record per line made
of the canonical permutation text, a TAB and the decimal value. Records are
sorted by length, then lexicographically. UTF-8 with LF line endings.
"""
import logging
import os
import tempfile

from mobius_zero.errors import CacheCorruptError, MalformedPermutationError
from mobius_zero.perm import canonical, format_perm, parse_perm
from mobius_zero.poset import MobiusCache

logger = logging.getLogger(__name__)

CACHE_HEADER = "mobius-cache v1"


def load_cache(path, cache=None):
    """
    Load a cache file into a MobiusCache.

    A missing file yields an empty cache; a file that exists but does not
    start with the expected header, or holds a malformed record, is rejected.

    Args:
        path (str or Path): Cache file location
        cache (MobiusCache, optional): Cache to fill; a new one is created if None

    Returns:
        MobiusCache: The filled cache

    Raises:
        CacheCorruptError: If the file is not a valid cache file
    """
    if cache is None:
        cache = MobiusCache()
    path = os.fspath(path)
    if not os.path.exists(path):
        logger.info("No cache file at %s, starting empty", path)
        return cache

    logger.info("Loading Möbius cache from %s", path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        header = f.readline()
        if header.rstrip("\n") != CACHE_HEADER:
            raise CacheCorruptError(
                f"{path} is not a Möbius cache file (expected header {CACHE_HEADER!r})", path, 1)
        count = 0
        for line_number, line in enumerate(f, start=2):
            if not line.endswith("\n"):
                raise CacheCorruptError(f"{path}:{line_number}: truncated record", path, line_number)
            fields = line[:-1].split("\t")
            if len(fields) != 2:
                raise CacheCorruptError(f"{path}:{line_number}: expected two TAB-separated fields",
                                        path, line_number)
            try:
                perm = parse_perm(fields[0])
                value = int(fields[1])
            except (MalformedPermutationError, ValueError) as e:
                raise CacheCorruptError(f"{path}:{line_number}: {e}", path, line_number) from e
            if not perm or perm != canonical(perm):
                raise CacheCorruptError(f"{path}:{line_number}: {fields[0]} is not a canonical permutation",
                                        path, line_number)
            cache.put_principal(perm, value)
            count += 1
    logger.info("Loaded %d cached values", count)
    return cache


def format_cache(cache: MobiusCache) -> str:
    lines = [CACHE_HEADER]
    for perm in sorted(cache.principal, key=lambda p: (len(p), p)):
        lines.append(f"{format_perm(perm)}\t{cache.principal[perm]}")
    return "\n".join(lines) + "\n"


def save_cache(cache: MobiusCache, path):
    """
    Write the principal values of a cache to disk atomically.

    The content goes to a temporary file in the target directory which then
    replaces the destination, so readers never see a partial file.

    Args:
        cache (MobiusCache): Cache to persist
        path (str or Path): Destination file
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    logger.info("Saving %d cached values to %s", len(cache), path)
    fd, temp_path = tempfile.mkstemp(prefix=".mobius-cache-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(format_cache(cache))
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise
