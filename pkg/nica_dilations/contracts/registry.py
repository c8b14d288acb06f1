from __future__ import annotations

from typing import Any

from pydantic import BaseModel

from nica_dilations.scenario.schemas import Report, Scenario

SCHEMA_DIALECT = "https://json-schema.org/draft/2020-12/schema"
SCHEMA_BASE = "https://github.com/nica-dilations/nica-dilations/contracts"

_CONTRACT_MODELS: dict[str, type[BaseModel]] = {
    "report.v1": Report,
    "scenario.v1": Scenario,
}


def list_contracts() -> list[str]:
    return sorted(_CONTRACT_MODELS.keys())


def get_contract_schema(contract: str) -> dict[str, Any]:
    if contract not in _CONTRACT_MODELS:
        raise KeyError(f"Unknown contract: {contract}. Known: {', '.join(list_contracts())}")

    schema = _CONTRACT_MODELS[contract].model_json_schema()
    schema["$schema"] = SCHEMA_DIALECT
    schema["$id"] = f"{SCHEMA_BASE}/{contract}.json"
    return schema
