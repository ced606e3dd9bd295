import pytest
from hypothesis import given, strategies as st

from oracles import splitmix64
from sumprod.core_sets import FiniteSet
from sumprod.errors import ConfigError
from sumprod.families import (CORPUS_SIZES, FamilySpec, SplitMix64, bw_shape, default_corpus,
                              generate, sample_without_replacement)

S = FiniteSet


def test_splitmix_reference_vectors():
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    assert SplitMix64(1234567).next_u64() == 0x599ED017FB08FC85


@given(st.integers(0, 2**64 - 1))
def test_splitmix_matches_oracle(seed):
    rng = SplitMix64(seed)
    assert [rng.next_u64() for _ in range(5)] == splitmix64(seed, 5)


@given(st.integers(0, 2**64 - 1), st.integers(1, 10**6))
def test_uniform_in_range(seed, k):
    assert 0 <= SplitMix64(seed).uniform(k) < k


def _dense_fisher_yates(N, n, seed):
    rng = SplitMix64(seed)
    arr = list(range(1, N + 1))
    for i in range(n):
        j = i + rng.uniform(N - i)
        arr[i], arr[j] = arr[j], arr[i]
    return arr[:n]


@given(st.integers(1, 60), st.data(), st.integers(0, 2**64 - 1))
def test_sparse_sampler_matches_dense_shuffle(N, data, seed):
    n = data.draw(st.integers(0, N))
    out = sample_without_replacement(N, n, SplitMix64(seed))
    assert out == _dense_fisher_yates(N, n, seed)
    assert len(set(out)) == n and all(1 <= v <= N for v in out)


def test_family_examples():
    assert generate(FamilySpec("ap", n=4)) == S([1, 2, 3, 4])
    assert generate(FamilySpec("ap", n=3, start="1/2", step=-2)) == S(["1/2", "-3/2", "-7/2"])
    assert generate(FamilySpec("gp", n=4)) == S([1, 2, 4, 8])
    assert generate(FamilySpec("gp", n=3, start=3, ratio="1/3")) == S([3, 1, "1/3"])
    assert generate(FamilySpec("balog_wooley", S=2, P=2)) == S([2, 4, 6, 12])
    assert generate(FamilySpec("random_subset", N=1000, n=8, seed=7)) == \
        S([159, 213, 286, 488, 581, 721, 728, 843])


@pytest.mark.parametrize("spec", [
    FamilySpec("ap", n=0), FamilySpec("ap", n=3, step=0), FamilySpec("gp", n=3, ratio=1),
    FamilySpec("gp", n=3, start=0), FamilySpec("balog_wooley", S=2),
    FamilySpec("random_subset", N=3, n=4), FamilySpec("random_subset", N=3, n=2, seed=-1),
    FamilySpec("hexagonal", n=3), FamilySpec("ap", n=2, start=0.5)])
def test_bad_specs(spec):
    with pytest.raises(ConfigError):
        generate(spec)


def test_bw_shape():
    assert [bw_shape(n) for n in (4, 8, 16, 64, 128)] == [(4, 1), (4, 2), (8, 2), (16, 4), (32, 4)]
    for n in CORPUS_SIZES:
        s, p = bw_shape(n)
        assert len(generate(FamilySpec("balog_wooley", S=s, P=p))) == n


def test_spec_round_trip():
    spec = FamilySpec("gp", n=5, start="2/3", ratio=3)
    assert FamilySpec.from_dict(spec.to_dict()) == FamilySpec("gp", n=5, start="2/3", ratio=3)
    with pytest.raises(ConfigError):
        FamilySpec.from_dict({"kind": "ap", "colour": "red"})


def test_default_corpus():
    corpus = default_corpus((4, 8))
    assert [label for label, _, _ in corpus] == [
        "ap-4", "gp-4", "balog_wooley-4", "random_subset-4",
        "ap-8", "gp-8", "balog_wooley-8", "random_subset-8"]
    assert all(len(A) == int(label.split("-")[1]) for label, _, A in corpus)
    assert default_corpus((8,)) == default_corpus((8,))
