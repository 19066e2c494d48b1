"""Writing a model to YAML, reading it back, and running the full report."""
import json
import tempfile
from pathlib import Path

from metriclie import emit_model, parse_model
from metriclie.catalog import get_entry
from metriclie.modelfile import ModelFileError, entry_subspaces
from metriclie.report import AnalysisOptions, dumps, run_analysis

entry = get_entry("heisenberg_rotation")
text = emit_model(entry.model, entry_subspaces(entry))
print(text)

model = parse_model(text)
report = run_analysis(model, AnalysisOptions(probes=50, include_samples=False))
print("sections:", ", ".join(report))
print("GO:", report["go_survey"]["verdict"], "| center:",
      report["abelian_ideal_theorem"]["center"]["status"])

out = Path(tempfile.mkdtemp()) / "report.json"
out.write_text(dumps(report))
print("wrote", out, f"({len(json.loads(out.read_text())['length_profiles'])} length profiles)")

# A tensor that breaks the Jacobi identity is rejected with a located diagnostic.
try:
    parse_model("dimension: 3\nbrackets: [[1, 2, 1, 1], [1, 3, 2, 1]]\n"
                "complement: [[1,0,0],[0,1,0],[0,0,1]]\nmetric: [[1,0,0],[0,1,0],[0,0,1]]\n")
except ModelFileError as exc:
    for d in exc.diagnostics:
        print("rejected:", d)
