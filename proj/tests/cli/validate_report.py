"""Validate a verify report against the published JSON schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.json"
        for extra in ([], ["fock:6", "--kind", "renyi:12", "--check", "concavity", "--expect", "fail"]):
            code = subprocess.call([exe, "verify", "--suite", "quick", *extra, "--out", str(out)])
            if code != 0:
                print(f"verify exited with {code}", file=sys.stderr)
                return 1
            data = json.loads(out.read_text())
            jsonschema.validate(data, schema)
            print(f"{len(data)} records validate")
    return 0


if __name__ == "__main__":
    sys.exit(main())
