"""
Laplacian spectrum and algebraic connectivity.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings

from app.config import settings
from app.services import spectral
from app.services.graph_builder import build_graph, cartesian_product, generate
from app.utils.exceptions import InputError, NumericError
from tests.oracles import small_graphs


def test_c3_c3_connectivity(c3c3):
    result = spectral.algebraic_connectivity(c3c3)
    assert result.mu == pytest.approx(3.0, abs=1e-6)
    assert result.connected
    assert result.eigenvalues == pytest.approx([0, 3, 3, 3, 3, 6, 6, 6, 6], abs=1e-6)
    assert result.residual <= 1e-9 * 9 * 4


@pytest.mark.parametrize("graph, expected", [
    (generate("hypercube", 3), 2.0),
    (generate("petersen"), 2.0),
    (generate("complete", 5), 5.0),
    (generate("path", 5), 2 - 2 * math.cos(math.pi / 5)),
    (generate("cycle", 6), 2 - 2 * math.cos(2 * math.pi / 6)),
])
def test_known_algebraic_connectivities(graph, expected):
    assert spectral.algebraic_connectivity(graph).mu == pytest.approx(expected, abs=1e-6)


def test_disconnected_graph_has_zero_connectivity():
    result = spectral.algebraic_connectivity(build_graph(4, [(0, 1), (2, 3)]))
    assert result.mu == 0.0
    assert not result.connected


def test_laplacian_rows_sum_to_zero(petersen):
    matrix = spectral.laplacian(petersen)
    assert matrix.shape == (10, 10)
    assert not matrix.sum(axis=1).any()
    assert np.array_equal(np.diag(matrix), np.full(10, 3))


def test_spectrum_trace_is_twice_the_size(q3):
    values = spectral.laplacian_spectrum(q3)
    assert float(values.sum()) == pytest.approx(2 * q3.m)
    assert list(values) == sorted(values)


@hypothesis_settings(max_examples=60, deadline=None)
@given(small_graphs(min_n=2, max_n=4), small_graphs(min_n=2, max_n=4))
def test_product_connectivity_is_the_smaller_factor_value(g1, g2):
    first, second = spectral.algebraic_connectivity(g1), spectral.algebraic_connectivity(g2)
    product = spectral.algebraic_connectivity(cartesian_product(g1, g2))
    assert abs(product.mu - min(first.mu, second.mu)) <= settings.GUARD_BAND
    assert product.connected == (first.connected and second.connected)


def test_connectivity_preconditions():
    with pytest.raises(InputError):
        spectral.algebraic_connectivity(generate("complete", 1))
    with pytest.raises(InputError):
        spectral.algebraic_connectivity(generate("complete", 3), tol=0)


def test_eigensolver_failure_is_a_numeric_error(monkeypatch, q3):
    def fail(_matrix):
        raise np.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(spectral.np.linalg, "eigh", fail)
    with pytest.raises(NumericError, match="did not converge"):
        spectral.algebraic_connectivity(q3)
