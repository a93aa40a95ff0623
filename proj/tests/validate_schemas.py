"""Validates example documents and tool output against docs/schemas."""
import json
import subprocess
import sys
from pathlib import Path

from jsonschema import Draft202012Validator


def main(tool: str, docs: Path) -> int:
    schemas = {p.name.split(".")[0]: Draft202012Validator(json.loads(p.read_text()))
               for p in (docs / "schemas").glob("*.schema.json")}
    ex = docs / "examples"
    runs = [
        ["check-balance", ex / "tropical_line.json"],
        ["intersect", ex / "tropical_line.json", ex / "line_shifted.json", "--seed", "7"],
        ["corner-locus", ex / "min_0_x_y.json", ex / "plane.json"],
        ["ma", ex / "min_0_x_y.json", ex / "min_0_x_y.json", ex / "plane.json"],
        ["pl-check", ex / "relu.json", ex / "bump_preform.json", ex / "real_line.json", "--seed", "1"],
        ["height", ex / "relu.json", ex / "relu_shifted.json", ex / "real_line.json"],
        ["pushforward", ex / "diagonal_map.json", ex / "real_line.json"],
    ]
    docs_to_check = [(p.name, json.loads(p.read_text())) for p in sorted(ex.glob("*.json"))]
    for args in runs:
        out = subprocess.run([tool, *map(str, args), "--json"], capture_output=True, text=True)
        if out.returncode != 0:
            print(f"FAIL {args[0]}: exit {out.returncode}: {out.stderr}")
            return 1
        docs_to_check.append((args[0], json.loads(out.stdout)))
    seen = set()
    bad = 0
    for name, doc in docs_to_check:
        kind = doc.get("kind")
        errors = list(schemas[kind].iter_errors(doc)) if kind in schemas else ["unknown kind"]
        seen.add(kind)
        for e in errors:
            print(f"FAIL {name}: {getattr(e, 'message', e)}")
        bad += bool(errors)
    missing = set(schemas) - seen
    if missing:
        print(f"FAIL no documents of kind {sorted(missing)}")
        return 1
    print(f"validated {len(docs_to_check)} documents of {len(seen)} kinds")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], Path(sys.argv[2])))
