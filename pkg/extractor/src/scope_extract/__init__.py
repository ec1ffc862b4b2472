"""Frozen-model hidden-state extraction for scope probing."""

from .detok import detokenize
from .extract import ExtractJob, ExtractResult, extract, load_masks

__version__ = "0.1.0"
