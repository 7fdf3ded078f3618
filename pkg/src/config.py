#!/usr/bin/env python3
"""
Configuration Management for the q-Heisenberg toolkit

Handles numerical defaults, output locations and logging. Values come from
dataclass defaults, optionally overridden by a .env file and environment
variables, and are validated once at construction.
"""

import os
import logging
from typing import Optional, Dict, Any
from dataclasses import dataclass

import structlog
from dotenv import load_dotenv

from .errors import ConfigError


@dataclass
class NumericsConfig:
    """Integrator, exponential and rewriting settings"""
    ode_steps: int = 2000
    ode_tolerance: float = 1e-8
    expm_tolerance: float = 1e-14
    rewrite_budget: int = 200_000
    limit_tolerance: float = 1e-12
    sweep_workers: int = 4


@dataclass
class OutputConfig:
    """CSV output settings"""
    output_directory: str = "results"
    filename_template: str = "{scenario}.csv"
    significant_digits: int = 17


@dataclass
class LoggingConfig:
    """Logging configuration"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    enable_emoji_logging: bool = True
    log_file: Optional[str] = None


class Config:
    """Main configuration class that manages all settings"""

    def __init__(self, env_file: Optional[str] = None):
        self.numerics = NumericsConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig()

        # .env never overrides variables already present in the environment
        load_dotenv(env_file, override=False)
        self._load_from_env()
        self._validate_config()

    def _load_from_env(self):
        """Load configuration from environment variables"""
        try:
            self.numerics.ode_steps = int(os.getenv('QH_ODE_STEPS', self.numerics.ode_steps))
            self.numerics.ode_tolerance = float(os.getenv('QH_ODE_TOLERANCE', self.numerics.ode_tolerance))
            self.numerics.expm_tolerance = float(os.getenv('QH_EXPM_TOLERANCE', self.numerics.expm_tolerance))
            self.numerics.rewrite_budget = int(os.getenv('QH_REWRITE_BUDGET', self.numerics.rewrite_budget))
            self.numerics.limit_tolerance = float(os.getenv('QH_LIMIT_TOLERANCE', self.numerics.limit_tolerance))
            self.numerics.sweep_workers = int(os.getenv('QH_SWEEP_WORKERS', self.numerics.sweep_workers))
        except ValueError as e:
            raise ConfigError(f"Malformed numeric environment variable: {e}") from e

        self.output.output_directory = os.getenv('OUTPUT_DIRECTORY', self.output.output_directory)
        self.output.filename_template = os.getenv('FILENAME_TEMPLATE', self.output.filename_template)

        self.logging.level = os.getenv('LOG_LEVEL', self.logging.level)
        self.logging.enable_emoji_logging = os.getenv('ENABLE_EMOJI_LOGGING', 'true').lower() == 'true'
        self.logging.log_file = os.getenv('LOG_FILE')

    def _validate_config(self):
        """Validate configuration settings"""
        if not (1 <= self.numerics.ode_steps <= 10_000_000):
            raise ConfigError("ode_steps must be between 1 and 10000000")

        if not (0.0 < self.numerics.ode_tolerance < 1.0):
            raise ConfigError("ode_tolerance must be in (0, 1)")

        if not (0.0 < self.numerics.expm_tolerance < 1e-3):
            raise ConfigError("expm_tolerance must be in (0, 1e-3)")

        if self.numerics.rewrite_budget < 1:
            raise ConfigError("rewrite_budget must be positive")

        if not (0.0 < self.numerics.limit_tolerance < 1e-3):
            raise ConfigError("limit_tolerance must be in (0, 1e-3)")

        if not (1 <= self.numerics.sweep_workers <= 64):
            raise ConfigError("sweep_workers must be between 1 and 64")

        if '{scenario}' not in self.output.filename_template:
            raise ConfigError("filename_template must contain {scenario} placeholder")

        if self.logging.level.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ConfigError(f"Unknown LOG_LEVEL: {self.logging.level}")

    def get_output_filename(self, scenario: str) -> str:
        """Generate output filename for a scenario"""
        return self.output.filename_template.format(scenario=scenario)

    def get_output_path(self, scenario: str) -> str:
        """Get full output file path"""
        return os.path.join(self.output.output_directory, self.get_output_filename(scenario))

    def setup_logging(self):
        """Setup stdlib handlers and route structlog through them"""
        log_level = getattr(logging, self.logging.level.upper(), logging.INFO)

        if self.logging.enable_emoji_logging:
            format_string = "🔧 %(asctime)s - %(levelname)s - %(message)s"
        else:
            format_string = self.logging.format

        handlers = [logging.StreamHandler()]
        if self.logging.log_file:
            handlers.append(logging.FileHandler(self.logging.log_file))

        logging.basicConfig(
            level=log_level,
            format=format_string,
            handlers=handlers,
            force=True
        )

        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.processors.format_exc_info,
                structlog.processors.KeyValueRenderer(key_order=['event', 'logger'], sort_keys=True),
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=False,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary"""
        return {
            'numerics': {
                'ode_steps': self.numerics.ode_steps,
                'ode_tolerance': self.numerics.ode_tolerance,
                'expm_tolerance': self.numerics.expm_tolerance,
                'rewrite_budget': self.numerics.rewrite_budget,
                'limit_tolerance': self.numerics.limit_tolerance,
                'sweep_workers': self.numerics.sweep_workers
            },
            'output': {
                'output_directory': self.output.output_directory,
                'filename_template': self.output.filename_template,
                'significant_digits': self.output.significant_digits
            },
            'logging': {
                'level': self.logging.level,
                'enable_emoji_logging': self.logging.enable_emoji_logging,
                'log_file': self.logging.log_file
            }
        }


_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance"""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reload_config() -> Config:
    """Reload configuration from environment variables"""
    global _config
    _config = Config()
    return _config
