# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Configuration access for the command-line tools."""

import os
import warnings

import yaml
from flask import Config

from . import config as default_config
from .errors import InputError


def load_config(path=None):
    """Build the configuration from the defaults and an optional YAML file."""
    cfg = Config(os.getcwd())
    cfg.from_object(default_config)
    if path is not None:
        try:
            cfg.from_file(os.path.abspath(path), load=yaml.safe_load)
        except yaml.YAMLError as e:
            raise InputError(f"Cannot parse configuration file {path}: {e}")
    return cfg


class OimSettings:
    """Prefix-keyed view on the toolkit configuration."""

    def __init__(self, config=None, config_prefix=None):
        """Constructor."""
        self._config_prefix = config_prefix or "OIM"
        self.config = config if config is not None else load_config()
        self.check_keys()

    @classmethod
    def from_file(cls, path=None, **kwargs):
        """Create settings from a YAML file layered over the defaults."""
        return cls(load_config(path), **kwargs)

    def cfgkey(self, key):
        """Generate a configuration key."""
        return f"{self._config_prefix}_{key.upper()}"

    def cfg(self, key, default=None):
        """Get a configuration value."""
        return self.config.get(self.cfgkey(key), default)

    def check_keys(self):
        """Warn about keys that no part of the toolkit reads."""
        known = {k[4:] for k in dir(default_config) if k.startswith("OIM_")}
        prefix = f"{self._config_prefix}_"
        unknown = sorted(
            k
            for k in self.config
            if k.startswith(prefix) and k[len(prefix) :] not in known
        )
        if unknown:
            warnings.warn(
                f"Unknown configuration keys ignored: {', '.join(unknown)}.",
                UserWarning,
            )

    @property
    def threads(self):
        """Worker count, resolving ``None`` to the number of cores."""
        threads = self.cfg("threads")
        return threads if threads else (os.cpu_count() or 1)
