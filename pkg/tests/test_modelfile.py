import numpy as np
import pytest

from metriclie import emit_model, parse_model
from metriclie.catalog import catalog_entries, get_entry
from metriclie.modelfile import ModelFileError, entry_subspaces, format_number

SPHERE = """\
format: metriclie-model/1
name: sphere
dimension: 3
brackets:
  - [1, 2, 3, 1]
  - [1, 3, 2, -1]
  - [2, 3, 1, 1]
isotropy: [[1, 0, 0]]
metric: [[1, 0], [0, 1]]
subspaces:
  k_h: [[1, 0, 0]]
"""


def errors(text, **kw):
    with pytest.raises(ModelFileError) as exc:
        parse_model(text, **kw)
    return exc.value.diagnostics


def test_parse_sphere_defaults():
    m = parse_model(SPHERE)
    assert m.name == "sphere" and m.r == 2
    assert m.algebra.names == ("e1", "e2", "e3")
    assert list(m.subspaces) == ["k_h"]


def test_rationals_and_upper_triangular_metric():
    text = SPHERE.replace("metric: [[1, 0], [0, 1]]", 'metric: [["3/2", "1/2"], ["3/2"]]')
    text = text.replace("isotropy: [[1, 0, 0]]", "isotropy: []\ncomplement: [[1,0,0],[0,1,0],[0,0,1]]")
    text = text.replace('metric: [["3/2", "1/2"], ["3/2"]]',
                        'metric: [["3/2", 0, "1/3"], [1, 0], [2]]')
    m = parse_model(text)
    assert m.metric[0, 2] == pytest.approx(1 / 3) and m.metric[2, 0] == pytest.approx(1 / 3)


def test_jacobi_failure_located():
    text = """\
dimension: 3
brackets:
  - [1, 2, 1, 1]
  - [1, 3, 2, 1]
metric: [[1,0,0],[0,1,0],[0,0,1]]
complement: [[1,0,0],[0,1,0],[0,0,1]]
"""
    diags = errors(text)
    jac = [d for d in diags if "jacobi" in d.message]
    assert jac and jac[0].residual == pytest.approx(1.0)
    assert jac[0].location == "brackets (line 3, column 3)"


def test_duplicate_record_and_bad_indices():
    text = SPHERE.replace("  - [2, 3, 1, 1]\n", "  - [2, 3, 1, 1]\n  - [1, 2, 3, 5]\n  - [3, 2, 1, 1]\n")
    msgs = [d.message for d in errors(text)]
    assert any("duplicate" in m for m in msgs)
    assert any("i < j" in m for m in msgs)


def test_syntax_error_and_unknown_key():
    assert "syntax" in errors("dimension: [1,\n")[0].message
    diags = errors(SPHERE + "colour: blue\n")
    assert diags[0].location == "colour (line 12, column 9)"


def test_invalid_metric_reported_and_forced():
    text = SPHERE.replace("metric: [[1, 0], [0, 1]]", "metric: [[1, 0], [0, 2]]")
    assert any("metric-invariance" in d.message for d in errors(text))
    m = parse_model(text, force=True)
    assert m.warnings


def test_tolerance_override():
    m = parse_model(SPHERE, eps_rank=1e-6)
    assert m.eps_rank == 1e-6


def test_format_number():
    assert format_number(2.0) == "2"
    assert format_number(-0.5) == "-0.5"
    assert format_number(1 / 3) == '"1/3"'
    assert format_number(np.sqrt(2)) == repr(float(np.sqrt(2)))


def test_emit_parse_fixed_point():
    for e in catalog_entries():
        text = emit_model(e.model, entry_subspaces(e))
        again = parse_model(text)
        assert emit_model(again, again.subspaces) == text, e.name
        assert np.array_equal(again.algebra.coeffs, e.model.algebra.coeffs)
        assert np.array_equal(again.metric, e.model.metric)


def test_file_path_input(tmp_path):
    p = tmp_path / "s.model"
    p.write_text(emit_model(get_entry("sphere").model))
    assert parse_model(p).name == "sphere"
