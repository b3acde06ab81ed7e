"""Run manifests: structured text recording how an output was produced."""

from __future__ import annotations

import datetime

from . import __version__


def format_value(v):
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def write_manifest(path, command, params, seed, outputs, started, finished):
    """Write a flat key: value manifest next to a run's outputs.

    Re-running the recorded command with the recorded seed reproduces the
    CSV bodies byte for byte; only the timestamps differ.
    """
    with open(path, "w") as fh:
        fh.write("command: %s\n" % command)
        fh.write("version: %s\n" % __version__)
        fh.write("seed: %s\n" % seed)
        for key in sorted(params):
            fh.write("param.%s: %s\n" % (key, format_value(params[key])))
        fh.write("started: %s\n" % started.isoformat())
        fh.write("finished: %s\n" % finished.isoformat())
        fh.write("wall_seconds: %.3f\n" % (finished - started).total_seconds())
        for out in outputs:
            fh.write("output: %s\n" % out)
    return path


def now():
    return datetime.datetime.now(datetime.timezone.utc)
