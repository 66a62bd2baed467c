from .loader import load_dataset
from .oracles import generate_reference
from .validation import ValidationCase, validate, run_validation_suite, default_cases
from .ablation import run_ablation
from .ingest import bench_ingest

__all__ = [
    "ValidationCase",
    "bench_ingest",
    "default_cases",
    "generate_reference",
    "load_dataset",
    "run_ablation",
    "run_validation_suite",
    "validate",
]
