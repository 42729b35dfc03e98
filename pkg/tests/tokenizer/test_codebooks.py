# -*- coding: utf-8 -*-
import numpy as np
import pytest

from sidrank.checkpoint import CheckpointContainer
from sidrank.errors import InvalidCorpus, InvalidFeature, DimensionError
from sidrank.tokenizer import ItemFeature, Codebooks, train_codebooks
from sidrank.tokenizer.codebooks import reconstruction_errors, kmeans


def _features(points):
    return [ItemFeature(item_id, vector) for item_id, vector in enumerate(points)]


def _grid(rng, n=40):
    centers = np.array([[-10.0, -10.0], [-10.0, 10.0], [10.0, -10.0], [10.0, 10.0]])
    return centers[rng.integers(4, size=n)] + rng.normal(size=(n, 2)) * 0.5


class TestTrainCodebooks:
    def test_square_corners(self):
        corners = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])

        codebooks = train_codebooks(_features(corners), 1, [4], seed=3)

        rows = sorted(map(tuple, codebooks.levels[0]))
        assert rows == sorted(map(tuple, corners))

    def test_single_codeword_is_mean(self):
        points = np.random.default_rng(1).normal(size=(25, 3))

        codebooks = train_codebooks(_features(points), 1, [1], seed=0)

        np.testing.assert_allclose(codebooks.levels[0][0], points.mean(axis=0), atol=1e-12)

    def test_second_level_reduces_error(self):
        points = _grid(np.random.default_rng(2))

        codebooks = train_codebooks(_features(points), 2, [2, 2], seed=0)
        errors = reconstruction_errors(points, codebooks)

        assert len(errors) == 3
        assert errors[2] < errors[1] < errors[0]

    def test_zero_codeword_makes_errors_monotone(self):
        points = np.random.default_rng(4).normal(size=(200, 4))
        codebooks = train_codebooks(_features(points), 3, [4, 4, 4], seed=1)
        with_zero = Codebooks([np.vstack([level, np.zeros((1, 4))]) for level in codebooks.levels])

        errors = reconstruction_errors(points, with_zero)

        assert all(later <= earlier for earlier, later in zip(errors, errors[1:]))

    def test_deterministic(self):
        points = np.random.default_rng(5).normal(size=(60, 3))

        first = train_codebooks(_features(points), 2, [4, 8], seed=9)
        second = train_codebooks(_features(points), 2, [4, 8], seed=9)

        for level_first, level_second in zip(first.levels, second.levels):
            assert level_first.tobytes() == level_second.tobytes()

    def test_more_codewords_than_points(self):
        points = np.array([[0.0, 0.0], [1.0, 1.0]])

        codebooks = train_codebooks(_features(points), 1, [4], seed=0)

        assert codebooks.sizes == (4,)
        assert np.all(np.isfinite(codebooks.levels[0]))

    def test_empty_corpus(self):
        with pytest.raises(InvalidCorpus):
            train_codebooks([], 1, [4], seed=0)

    def test_invalid_sizes(self):
        with pytest.raises(InvalidCorpus):
            train_codebooks(_features(np.zeros((3, 2))), 2, [4], seed=0)

    def test_non_finite_feature(self):
        with pytest.raises(InvalidFeature):
            ItemFeature(0, np.array([1.0, np.inf]))

    def test_mixed_dimensions(self):
        with pytest.raises(InvalidFeature):
            train_codebooks([ItemFeature(0, np.zeros(2)), ItemFeature(1, np.zeros(3))], 1, [1], seed=0)


class TestKmeans:
    def test_separated_clusters(self):
        rng = np.random.default_rng(0)
        points = np.vstack([rng.normal(size=(20, 2)) * 0.1, rng.normal(size=(20, 2)) * 0.1 + 50])

        centroids = kmeans(points, 2, np.random.default_rng(1))

        assert sorted(np.round(centroids[:, 0]).tolist()) == [0.0, 50.0]


class TestCodebooks:
    def test_properties(self):
        codebooks = Codebooks([np.zeros((4, 3)), np.zeros((6, 3))])

        assert codebooks.m == 2
        assert codebooks.sizes == (4, 6)
        assert codebooks.dim == 3
        assert codebooks.capacity == 24

    def test_reconstruct(self):
        codebooks = Codebooks([np.array([[0.0, 0.0], [10.0, 0.0]]), np.array([[0.0, 1.0], [1.0, 0.0]])])

        np.testing.assert_array_equal(codebooks.reconstruct((1, 0)), [10.0, 1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            Codebooks([np.zeros((4, 3)), np.zeros((6, 2))])

    def test_container(self):
        codebooks = Codebooks([np.arange(8.0).reshape(4, 2), np.arange(12.0).reshape(6, 2)])

        container = CheckpointContainer.from_bytes(codebooks.to_container({"config_digest": "x"}).to_bytes(),
                                                   ("codebook.",))
        loaded = Codebooks.from_container(container)

        assert container.metadata == {"config_digest": "x", "m": 2, "sizes": [4, 6]}
        for level, loaded_level in zip(codebooks.levels, loaded.levels):
            np.testing.assert_array_equal(level, loaded_level)
