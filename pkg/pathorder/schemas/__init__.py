""" JSON schema files of every subcommand's report and of the error line. """

import json
from pathlib import Path
from typing import Any, Dict

from ..common.helpers import dumps_json
from ..common.wrappers import needs_optional_package

__all__ = ("SCHEMA_DIR",
           "load_schema",
           "validate_report")

SCHEMA_DIR = Path(__file__).parent


def load_schema(name: str) -> Dict[str, Any]:
    """ Returns the schema of subcommand `name` (or :code:`'error'`) with the shared scenario schema inlined. """
    path = SCHEMA_DIR / f'{name}.json'
    if not path.exists():
        raise KeyError(f"No schema shipped for '{name}'.")
    schema = json.loads(path.read_text())
    scenario = schema.get('properties', {}).get('scenario')
    if scenario is not None and '$ref' in scenario:
        schema['properties']['scenario'] = json.loads((SCHEMA_DIR / scenario['$ref']).read_text())
    return schema


@needs_optional_package('jsonschema')
def validate_report(name: str, report: Dict[str, Any]) -> bool:
    """ Validates the JSON form of `report` against the schema of subcommand `name`.

    Returns :obj:`None` with a warning if :mod:`jsonschema` is not installed.

    Raises
    ------
    ValueError
        If the report does not conform.
    """
    import jsonschema
    try:
        jsonschema.validate(json.loads(dumps_json(report)), load_schema(name))
    except jsonschema.ValidationError as e:
        raise ValueError(f"{name} report does not match its schema: {e.message}") from e
    return True
