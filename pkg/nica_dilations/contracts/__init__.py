"""Versioned contracts (JSON Schema) for scenario files and reports.

The schemas are generated from the pydantic models; `scripts/generate_contract_schemas.py`
exports them as files for consumers outside Python.
"""

from nica_dilations.contracts.registry import get_contract_schema, list_contracts

__all__ = ["get_contract_schema", "list_contracts"]
