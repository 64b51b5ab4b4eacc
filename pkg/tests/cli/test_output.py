"""Unit tests for blaschkectl.output module.

Tests cover:
- OutputFormat enum and OutputMeta/OutputContext dataclasses
- Float formatting and JSON sanitizing
- Atomic CSV, JSON and JSON-lines writers
- OutputRenderer envelope rendering
"""

import json
import math
from io import StringIO

import numpy as np
import pytest
import yaml
from rich.console import Console

from blaschkectl.const import Classification
from blaschkectl.output import (
    OutputContext,
    OutputFormat,
    OutputMeta,
    OutputRenderer,
    atomic_write,
    dumps_json,
    format_float,
    json_safe,
    write_csv,
    write_json,
    write_jsonl,
)

# ========================== Enum and Dataclass Tests ==========================


class TestOutputFormat:
    """Tests for OutputFormat enum."""

    def test_values(self):
        """Test the four console formats."""
        assert [f.value for f in OutputFormat] == ["table", "json", "yaml", "text"]


class TestOutputMeta:
    """Tests for OutputMeta dataclass."""

    def test_default_warnings(self):
        """Test warnings default to an empty list."""
        assert OutputMeta().warnings == []


class TestOutputContext:
    """Tests for OutputContext dataclass."""

    def test_lazy_consoles(self):
        """Test consoles are created on first use."""
        ctx = OutputContext()
        assert isinstance(ctx.console, Console)
        assert isinstance(ctx.err_console, Console)


# ========================== Serialization Tests ==========================


class TestFormatFloat:
    """Tests for format_float."""

    def test_round_trip(self):
        """Test the shortest repr is used."""
        assert format_float(0.1) == "0.1"
        assert float(format_float(1 / 3)) == 1 / 3

    def test_non_finite(self):
        """Test infinities and NaN are literal strings."""
        assert format_float(-math.inf) == "-inf"
        assert format_float(math.inf) == "inf"
        assert format_float(math.nan) == "nan"

    def test_numpy_scalar(self):
        """Test numpy floats format like Python floats."""
        assert format_float(np.float64(0.5)) == "0.5"


class TestJsonSafe:
    """Tests for json_safe."""

    def test_nested_non_finite(self):
        """Test non-finite floats are replaced at any depth."""
        data = {"mass": math.inf, "rows": [(1, -math.inf)]}

        assert json_safe(data) == {"mass": "inf", "rows": [[1, "-inf"]]}

    def test_numpy_and_enum(self):
        """Test numpy scalars and enums become plain values."""
        data = {"count": np.int64(3), "class": Classification.BOUNDED}

        assert json_safe(data) == {"count": 3, "class": "bounded"}

    def test_complex(self):
        """Test complex numbers become re/im objects."""
        assert json_safe(0.5 - 0.25j) == {"re": 0.5, "im": -0.25}

    def test_dumps_sorted_and_strict(self):
        """Test dumps_json sorts keys and never emits bare Infinity."""
        text = dumps_json({"b": math.inf, "a": 1})

        assert text.index('"a"') < text.index('"b"')
        assert "Infinity" not in text
        assert text.endswith("\n")


# ========================== Writer Tests ==========================


class TestWriters:
    """Tests for the artifact writers."""

    def test_atomic_write_creates_parents(self, tmp_path):
        """Test parent directories are created and no temp file is left."""
        target = tmp_path / "nested" / "out.txt"

        atomic_write(target, "bounded\n")

        assert target.read_text() == "bounded\n"
        assert [p.name for p in target.parent.iterdir()] == ["out.txt"]

    def test_write_csv(self, tmp_path):
        """Test CSV cells use round-trip floats and literal -inf."""
        path = write_csv(
            tmp_path / "eval.csv",
            ["re", "im", "value"],
            [[0.0, 0.0, -0.6931471805599453], [0.5, 0.0, -math.inf]],
        )

        assert path.read_text().splitlines() == [
            "re,im,value",
            "0.0,0.0,-0.6931471805599453",
            "0.5,0.0,-inf",
        ]

    def test_write_csv_numpy_and_bool(self, tmp_path):
        """Test numpy scalars and booleans in CSV cells."""
        path = write_csv(tmp_path / "x.csv", ["n", "ok"], [[np.int64(4), True]])

        assert path.read_text().splitlines()[1] == "4,true"

    def test_write_json(self, tmp_path):
        """Test JSON files are parseable and deterministic."""
        first = write_json(tmp_path / "a.json", {"z": [1.5], "a": None}).read_bytes()
        second = write_json(tmp_path / "a.json", {"a": None, "z": [1.5]}).read_bytes()

        assert first == second
        assert json.loads(first) == {"a": None, "z": [1.5]}

    def test_write_jsonl(self, tmp_path):
        """Test one compact sorted record per line."""
        path = write_jsonl(tmp_path / "log.jsonl", [{"k": 2, "H": 1.0}, {"k": 3, "H": 2.0}])

        assert path.read_text() == '{"H":1.0,"k":2}\n{"H":2.0,"k":3}\n'


# ========================== OutputRenderer Tests ==========================


class TestOutputRenderer:
    """Tests for OutputRenderer."""

    @pytest.fixture
    def buffer(self) -> StringIO:
        return StringIO()

    @pytest.fixture
    def renderer(self, buffer) -> OutputRenderer:
        console = Console(file=buffer, width=200, no_color=True)
        return OutputRenderer(OutputContext(_console=console, _err_console=console))

    def test_render_json_envelope(self, renderer, buffer):
        """Test the schema/data/meta envelope."""
        renderer.render_json({"mass": 1.0}, "blaschke.test/v1", OutputMeta(warnings=["w"]))

        envelope = json.loads(buffer.getvalue())
        assert envelope == {
            "schema": "blaschke.test/v1",
            "data": {"mass": 1.0},
            "meta": {"warnings": ["w"]},
        }

    def test_render_json_non_finite(self, renderer, buffer):
        """Test non-finite values survive as strings."""
        renderer.render_json({"min": -math.inf}, "blaschke.test/v1")

        assert json.loads(buffer.getvalue())["data"]["min"] == "-inf"

    def test_render_json_keeps_brackets(self, renderer, buffer):
        """Test Rich markup is not interpreted in structured output."""
        renderer.render_json({"detail": "[bold]x[/bold]"}, "blaschke.test/v1")

        assert json.loads(buffer.getvalue())["data"]["detail"] == "[bold]x[/bold]"

    def test_render_yaml(self, renderer, buffer):
        """Test YAML rendering carries the same envelope."""
        renderer.render_yaml({"classification": "growth"}, "blaschke.test/v1")

        parsed = yaml.safe_load(buffer.getvalue())
        assert parsed["schema"] == "blaschke.test/v1"
        assert parsed["data"] == {"classification": "growth"}

    def test_render_text(self, renderer, buffer):
        """Test text rendering prints title-cased keys."""
        renderer.render_text({"growth_exponent": 0.5, "outputs": ["a", "b"]}, "s")

        out = buffer.getvalue()
        assert "Growth Exponent: 0.5" in out
        assert "Outputs: a, b" in out

    def test_success_respects_quiet(self, buffer):
        """Test success messages are suppressed under --quiet."""
        console = Console(file=buffer, no_color=True)
        renderer = OutputRenderer(OutputContext(quiet=True, _console=console))

        renderer.render_success("done")

        assert buffer.getvalue() == ""
