import math

import numpy as np
import pytest

from bohmspec.core import ComplexField1D, DomainError, Grid1D, PhysicalConstants, build_grid, max_abs_diff


def test_grid_endpoints_only():
    assert build_grid(0, 1, 2).samples.tolist() == [0.0, 1.0]


def test_grid_spacing():
    assert build_grid(0, math.pi, 5).spacing == pytest.approx(math.pi / 4, abs=1e-15)


def test_grid_symmetric_midpoint():
    g = build_grid(-1, 1, 101)
    assert abs(g.samples[50]) < 1e-15
    assert g.samples[-1] == 1.0


@pytest.mark.parametrize("args", [(0, 1, 1), (1, 0, 10), (0, 0, 10), (0, 1, 2.5), (0, 1, True)])
def test_grid_rejects_bad_specs(args):
    with pytest.raises(DomainError):
        build_grid(*args)


def test_constants_validation():
    c = PhysicalConstants()
    assert (c.hbar, c.mass, c.V) == (1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        PhysicalConstants(hbar=0.0)
    with pytest.raises(DomainError):
        PhysicalConstants(mass=-1.0)


def test_max_abs_diff_basic_cases():
    g = build_grid(0, 2 * math.pi, 64)
    f = ComplexField1D.from_function(g, lambda x: np.exp(1j * x))
    assert max_abs_diff(f, f) == 0.0
    shifted = ComplexField1D(g, f.values + 1)
    assert max_abs_diff(f, shifted) == pytest.approx(1.0, abs=1e-15)
    real = ComplexField1D.from_function(g, np.cos)
    conj = ComplexField1D(g, np.conj(real.values))
    assert max_abs_diff(real, conj) == 0.0


def test_max_abs_diff_grid_mismatch():
    f = ComplexField1D(build_grid(0, 1, 3), [1, 2, 3])
    g = ComplexField1D(build_grid(0, 2, 3), [1, 2, 3])
    with pytest.raises(DomainError):
        max_abs_diff(f, g)


def test_field_is_read_only_and_length_checked():
    g = build_grid(0, 1, 3)
    f = ComplexField1D(g, [1, 2, 3])
    with pytest.raises(ValueError):
        f.values[0] = 5
    with pytest.raises(DomainError):
        ComplexField1D(g, [1, 2])
