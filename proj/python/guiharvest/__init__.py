"""Python surface of the GUI tutorial harvesting core.

Structured inputs and outputs are JSON strings; the C++ codecs own the
schemas. ``run_stage`` drives the same pipeline stages as the CLI.
"""

from ._guiharvest import (
    ConfigError,
    SchemaViolation,
    __version__,
    agent_system_prompt,
    canonical_json,
    canonical_source_id,
    dataset_ids,
    parse_agent_output,
    quantize_coord,
    run_stage,
    salient_frame_indices,
    serialize_thought_action,
    sft_line,
    sft_prompt,
    validate_action,
)

__all__ = [
    "ConfigError",
    "SchemaViolation",
    "__version__",
    "agent_system_prompt",
    "canonical_json",
    "canonical_source_id",
    "dataset_ids",
    "parse_agent_output",
    "quantize_coord",
    "run_stage",
    "salient_frame_indices",
    "serialize_thought_action",
    "sft_line",
    "sft_prompt",
    "validate_action",
]
