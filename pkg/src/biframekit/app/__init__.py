"""Manifest I/O, bundled reference systems, and the command-line entry point."""

from .cli import main
from .fixtures import Fixture, fixture, fixture_names, fixture_record
from .manifest import FORMAT_VERSION, ManifestRecord, dumps, load, loads, save

__all__ = [
    "FORMAT_VERSION",
    "Fixture",
    "ManifestRecord",
    "dumps",
    "fixture",
    "fixture_names",
    "fixture_record",
    "load",
    "loads",
    "main",
    "save",
]
