#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exceptions shared by the pebble-motion solvers, oracles, gadgets and CLI.

Infeasible instances are not errors: solvers return an ``Infeasible`` value
(see instance_model.py). Everything here means the input or the request was
wrong.
"""


class PebbleMotionError(Exception):
    """Base class for every error raised by this project."""


class InstanceError(PebbleMotionError):
    """Malformed graph, pebble map, goal or solution."""


class NotATreeError(PebbleMotionError):
    """A tree-only algorithm was given a graph with a cycle."""


class GoalMismatchError(PebbleMotionError):
    """A solver was called on an instance with the wrong goal predicate."""


class GuardExceededError(PebbleMotionError):
    """A brute-force search space or size guard would be exceeded."""

    def __init__(self, what, size, limit, env_var=None):
        self.what = what
        self.size = size
        self.limit = limit
        self.env_var = env_var
        message = f"{what}: search space {size} exceeds guard {limit}"
        if env_var:
            message += f" (override with {env_var})"
        super().__init__(message)


class NoCutError(PebbleMotionError):
    """s and t are adjacent, so no vertex set separates them."""


class ParseError(PebbleMotionError):
    """Bad instance, solution, graph or DIMACS text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CnfError(PebbleMotionError):
    """Malformed 3-CNF formula or a formula a gadget cannot encode."""
