import pytest

from mobius_zero.cache_file import CACHE_HEADER, format_cache, load_cache, save_cache
from mobius_zero.errors import CacheCorruptError
from mobius_zero.poset import MobiusCache, principal_mobius
from tests.conftest import perms_up_to


def test_missing_file_gives_empty_cache(tmp_path):
    cache = load_cache(tmp_path / "absent.txt")
    assert len(cache) == 0


def test_save_and_load(tmp_path):
    cache = MobiusCache()
    for perm in perms_up_to(5, start=2):
        principal_mobius(perm, cache)
    path = tmp_path / "cache.txt"
    save_cache(cache, path)

    text = path.read_text(encoding="utf-8")
    assert text.startswith(CACHE_HEADER + "\n12\t-1\n")
    assert text == format_cache(cache)

    loaded = load_cache(path)
    assert loaded.principal == cache.principal
    assert loaded.get_principal((2, 4, 1, 3)) == -3
    assert list(tmp_path.iterdir()) == [path]


@pytest.mark.parametrize("content, line_number", [
    ("not a cache\n", 1),
    (CACHE_HEADER + "\n12\t-1", 2),
    (CACHE_HEADER + "\n12\t-1\t0\n", 2),
    (CACHE_HEADER + "\n12\tx\n", 2),
    (CACHE_HEADER + "\n12\t-1\n122\t0\n", 3),
    (CACHE_HEADER + "\n21\t-1\n", 2),
])
def test_corrupt_files_are_rejected(tmp_path, content, line_number):
    path = tmp_path / "cache.txt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(CacheCorruptError) as excinfo:
        load_cache(path)
    assert excinfo.value.line_number == line_number
    assert excinfo.value.path == str(path)
