"""Exemplar-based word sense disambiguation."""

from ._core import (
    ExwsdError,
    ParseError,
    ConfigError,
    CorruptModel,
    Dataset,
    Instance,
    SchemaParams,
    FeatureSchema,
    TrainedModel,
    TrialReport,
    parse_dataset,
    read_dataset,
    serialize_dataset,
    lemmatize_fallback,
    collocation_string,
    extract_verb_object,
    induce_schema,
    train,
    load_model,
    accuracy,
    baseline_sense1,
    baseline_most_frequent,
    run_trials,
    ablate,
    COLLOCATION_OFFSETS,
)

__all__ = [name for name in dir() if not name.startswith("_")]
