import numpy as np
import pytest
from sklearn.base import clone

from imbench import (
    CelfSeedSelection,
    CommunitySeedSelection,
    GreedySeedSelection,
    HierarchicalCommunities,
    Partition,
)


class TestHierarchicalCommunities:
    def test_fit_attributes(self, two_triangles):
        est = HierarchicalCommunities(similarity="2s").fit(two_triangles)
        assert est.n_communities_ == 2
        assert est.modularity_ == pytest.approx(5 / 14)
        assert isinstance(est.partition_, Partition)
        np.testing.assert_array_equal(est.labels_, [0, 0, 0, 1, 1, 1])

    def test_fit_predict(self, two_triangles):
        labels = HierarchicalCommunities(similarity="alpha2s", alpha=1.0).fit_predict(
            two_triangles
        )
        assert len(set(labels.tolist())) == 2

    def test_clone_roundtrip(self):
        est = HierarchicalCommunities(similarity="alpha2s", alpha=2.0, stop=5)
        cloned = clone(est)
        assert cloned.get_params() == est.get_params()

    def test_invalid_similarity(self, two_triangles):
        with pytest.raises(ValueError):
            HierarchicalCommunities(similarity="jaccard").fit(two_triangles)

    def test_rejects_non_graph(self):
        with pytest.raises(TypeError):
            HierarchicalCommunities().fit([[0, 1], [1, 0]])


class TestSeedSelectors:
    def test_greedy_fit(self, two_triangles):
        est = GreedySeedSelection(k=2, p=0.5, r=200, random_state=4).fit(two_triangles)
        assert len(est.seeds_) == 2
        assert est.n_evaluations_ == 6 + 5
        assert est.spread_ >= 2.0
        assert est.spread_std_error_ >= 0.0

    def test_celf_equals_greedy(self, two_triangles):
        shared = dict(k=3, p=0.4, r=150, random_state=11)
        a = GreedySeedSelection(**shared).fit(two_triangles)
        b = CelfSeedSelection(**shared).fit(two_triangles)
        assert a.seed_ids_ == b.seed_ids_
        assert a.spread_ == b.spread_

    def test_community_selector_fit(self, two_triangles):
        est = CommunitySeedSelection(
            k=2, p=0.5, r=100, similarity="2s", random_state=3
        ).fit(two_triangles)
        assert est.seeds_ == ("a", "x")
        assert est.n_communities_ == 2
        assert est.seed_set_.method == "hcim"
        assert est.trace_.replay() == est.seed_ids_

    def test_community_selector_alpha_method_tag(self, two_triangles):
        est = CommunitySeedSelection(
            k=2, p=0.5, r=100, similarity="alpha2s", alpha=1.0, random_state=3
        ).fit(two_triangles)
        assert est.seed_set_.method == "alpha-hcim"
        assert est.seed_set_.alpha == 1.0

    def test_fit_with_precomputed_partition(self, two_triangles):
        P = Partition.from_communities(6, [{0, 1, 2}, {3, 4, 5}])
        est = CommunitySeedSelection(k=2, p=0.5, random_state=0).fit(
            two_triangles, partition=P
        )
        assert est.partition_ is P

    def test_clone_and_refit_is_deterministic(self, two_triangles):
        est = GreedySeedSelection(k=2, p=0.3, r=120, random_state=9)
        first = est.fit(two_triangles).seed_ids_
        second = clone(est).fit(two_triangles).seed_ids_
        assert first == second

    def test_invalid_k(self, two_triangles):
        with pytest.raises(ValueError):
            GreedySeedSelection(k=99).fit(two_triangles)
