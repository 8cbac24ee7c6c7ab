"""
Unit tests for reproducible random streams.
"""

import numpy as np
import pytest
import scipy.stats
from src.randomness import SeedSpec, gaussian, resolve_seed, substream
from src.exceptions import ParameterError


class TestSeedSpec:
    """Tests for stream addressing"""

    def test_same_address_same_numbers(self):
        """Test identical seed specs reproduce the same draws"""
        a = SeedSpec(7).child(3).generator().normal(size=5)
        b = SeedSpec(7).child(3).generator().normal(size=5)
        assert np.array_equal(a, b)

    def test_siblings_differ(self):
        """Test neighbouring substreams are distinct"""
        a = SeedSpec(7).child(0).generator().normal(size=5)
        b = SeedSpec(7).child(1).generator().normal(size=5)
        assert not np.array_equal(a, b)

    def test_child_independent_of_draw_order(self):
        """Test a substream does not depend on which streams were used before"""
        root = SeedSpec(11)
        root.child(0).generator().normal(size=1000)
        late = root.child(5).generator().normal(size=3)
        fresh = SeedSpec(11).child(5).generator().normal(size=3)
        assert np.array_equal(late, fresh)

    def test_lineage_accumulates(self):
        """Test nested children extend the spawn key"""
        spec = SeedSpec(1).child(2).child(3)
        assert spec.spawn_key == (0, 2, 3)

    def test_substream_matches_child(self):
        """Test substream(master, i) is child(i).generator()"""
        master = SeedSpec(99)
        assert np.array_equal(
            substream(master, 4).uniform(size=3),
            master.child(4).generator().uniform(size=3),
        )

    @pytest.mark.parametrize("seed", [-1, 1 << 64])
    def test_rejects_out_of_range_seed(self, seed):
        """Test seeds outside the unsigned 64-bit range are rejected"""
        with pytest.raises(ParameterError) as exc_info:
            SeedSpec(seed)

        assert exc_info.value.field == "master_seed"


class TestResolveSeed:
    """Tests for seed resolution"""

    def test_explicit_seed(self):
        """Test an explicit seed is returned unchanged"""
        assert resolve_seed(12345) == 12345

    def test_entropy_seed_in_range(self):
        """Test a drawn seed fits in 64 bits"""
        seed = resolve_seed(None)
        assert 0 <= seed < (1 << 64)


class TestGaussian:
    """Tests for normal draws"""

    def test_moments(self, rng):
        """Test sample mean and standard deviation"""
        x = gaussian(rng, 2.0, 0.5, 20000)
        assert x.mean() == pytest.approx(2.0, abs=0.02)
        assert x.std() == pytest.approx(0.5, rel=0.03)

    def test_normal_by_ks(self, seed):
        """Test 10⁵ standard draws pass a KS test against N(0, 1)"""
        x = gaussian(seed.child(0).generator(), 0.0, 1.0, 100000)
        assert scipy.stats.kstest(x, "norm").pvalue > 1e-3

    def test_shifted_normal_by_ks(self, seed):
        """Test shifted and scaled draws standardise to N(0, 1)"""
        x = gaussian(seed.child(1).generator(), -1.5, 0.25, 100000)
        assert scipy.stats.kstest((x + 1.5) / 0.25, "norm").pvalue > 1e-3

    def test_sibling_substreams_uncorrelated(self, seed):
        """Test draws from neighbouring substreams are uncorrelated"""
        a = gaussian(substream(seed, 5), 0.0, 1.0, 10000)
        b = gaussian(substream(seed, 6), 0.0, 1.0, 10000)
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.05

    def test_rejects_zero_std(self, rng):
        """Test a zero standard deviation is rejected"""
        with pytest.raises(ParameterError):
            gaussian(rng, 0.0, 0.0, 10)

    def test_rejects_zero_count(self, rng):
        """Test a zero count is rejected"""
        with pytest.raises(ParameterError):
            gaussian(rng, 0.0, 1.0, 0)
