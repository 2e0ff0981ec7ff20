"""Numerical checks for slant-type submanifolds of flat para-Kaehler spaces."""

import json

from ._parageo import (
    AmbientSpace,
    EvalError,
    Expr,
    NumericalError,
    ParseError,
    SceneError,
    example_scene,
    frame_at,
    parse,
    verify_structure,
)
from . import _parageo

__all__ = [
    "AmbientSpace",
    "EvalError",
    "Expr",
    "NumericalError",
    "ParseError",
    "SceneError",
    "analyze",
    "analyze_file",
    "example_scene",
    "frame_at",
    "parse",
    "reproduce_example",
    "verify_structure",
]


def analyze(text, command="analyze", target="", tol=None, seed=None, grid=None):
    """Run the pipeline on scene text and return the report as a dict."""
    return json.loads(_parageo.analyze_text(text, command, target, tol, seed, grid))


def analyze_file(path, command="analyze", target="", tol=None, seed=None, grid=None):
    return json.loads(_parageo.analyze_file(str(path), command, target, tol, seed, grid))


def reproduce_example():
    return analyze(example_scene())
