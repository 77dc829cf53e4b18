"""Unit tests for Cache"""

import time

from tools.cache import cache_result, clear_cache, get_cache_stats


class TestCache:
    """Tests for caching system"""

    def test_cache_result(self):
        """Test function result caching"""
        clear_cache()

        call_count = 0

        @cache_result(ttl=60)
        def double(x):
            nonlocal call_count
            call_count += 1
            return x * 2

        # First call - function executes
        assert double(5) == 10
        assert call_count == 1

        # Second call - result from cache
        assert double(5) == 10
        assert call_count == 1

    def test_distinct_arguments(self):
        """Each argument tuple has its own entry"""
        clear_cache()

        @cache_result(ttl=60)
        def solve_stub(model, order):
            return (model, order)

        assert solve_stub("maps", 3) == ("maps", 3)
        assert solve_stub("maps", 4) == ("maps", 4)
        assert solve_stub(model="maps", order=4) == ("maps", 4)
        assert get_cache_stats()["total_entries"] == 3

    def test_cache_ttl_expiry(self):
        """Test cache TTL expiry"""
        clear_cache()

        call_count = 0

        @cache_result(ttl=1)
        def double(x):
            nonlocal call_count
            call_count += 1
            return x * 2

        double(5)
        double(5)
        assert call_count == 1

        # Wait for TTL expiry
        time.sleep(1.5)

        double(5)
        assert call_count == 2

    def test_clear_cache(self):
        """Test cache clearing"""
        clear_cache()

        @cache_result(ttl=60)
        def double(x):
            return x * 2

        @cache_result(ttl=60)
        def triple(x):
            return x * 3

        double(5)
        triple(5)

        assert clear_cache("triple") == 1
        assert get_cache_stats()["total_entries"] == 1
        clear_cache()
        assert get_cache_stats()["total_entries"] == 0

    def test_get_cache_stats(self):
        """Test cache statistics retrieval"""
        clear_cache()

        @cache_result(ttl=60)
        def double(x):
            return x * 2

        before = get_cache_stats()
        double(5)
        double(10)
        double(10)

        stats = get_cache_stats()
        assert stats["total_entries"] >= 2
        assert stats["valid_entries"] >= 2
        assert stats["hits"] - before["hits"] == 1
        assert stats["misses"] - before["misses"] == 2
