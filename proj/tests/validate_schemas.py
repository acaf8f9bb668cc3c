#!/usr/bin/env python3
# Copyright 2026 The Restrictplan Authors.
# Licensed under the Apache License, Version 2.0.
"""Validates dumped API responses against schemas/api.json.

Each response file is named <definition>.<case>.json.
"""

import json
import pathlib
import sys

from jsonschema import Draft202012Validator


def main():
    responses, schema_path = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    api = json.loads(schema_path.read_text())
    Draft202012Validator.check_schema(api)
    files = sorted(responses.glob("*.json"))
    if not files:
        print("no responses found", file=sys.stderr)
        return 1
    failures = 0
    for f in files:
        name = f.name.split(".")[0]
        if name not in api["$defs"]:
            print(f"FAIL {f.name}: no schema '{name}'")
            failures += 1
            continue
        schema = dict(api, **{"$ref": f"#/$defs/{name}"})
        validator = Draft202012Validator(schema)
        doc = json.loads(f.read_text())
        errors = [f"{'/'.join(map(str, e.absolute_path))}: {e.message}"
                  for e in validator.iter_errors(doc)]
        # A schema that accepts a response missing a field is too loose.
        if isinstance(doc, dict) and doc:
            stripped = dict(doc)
            stripped.pop(sorted(doc)[0])
            if validator.is_valid(stripped):
                errors.append(f"still valid without '{sorted(doc)[0]}'")
        for e in errors:
            print(f"FAIL {f.name}: {e}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {f.name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
