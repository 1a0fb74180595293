"""
Configuration settings for ffframes
"""

import os

from src.errors import InvalidInputError
from src.gf import EXHAUSTIVE_LIMIT


def _int_from_env(name, default):
    value = os.getenv(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")


class Config:
    """Base configuration"""
    DEBUG = False
    TESTING = False
    ENV = os.getenv('FFF_ENV', 'production')
    JSON_SORT_KEYS = False
    SEARCH_BUDGET = 10 ** 7
    WORKERS = 1
    LOG_DIR = 'logs'
    # square roots switch from table lookup to the generator above this order
    EXHAUSTIVE_FIELD_LIMIT = EXHAUSTIVE_LIMIT
    API_KEY_HEADER = 'X-Api-Key'

    @classmethod
    def search_budget(cls):
        return _int_from_env('FFF_BUDGET', cls.SEARCH_BUDGET)

    @classmethod
    def workers(cls):
        return _int_from_env('FFF_WORKERS', cls.WORKERS)

    @staticmethod
    def cli_log_dir():
        """FFF_LOG_DIR; the command line writes no log files unless it is set."""
        return os.getenv('FFF_LOG_DIR') or None

    @staticmethod
    def api_key():
        """FFF_API_KEY, read per request; unset means open access."""
        return os.getenv('FFF_API_KEY') or None


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    ENV = 'development'


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    ENV = 'production'


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    DEBUG = True
    ENV = 'testing'
    LOG_DIR = None


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config():
    """Get configuration based on environment"""
    env = os.getenv('FFF_ENV', 'development')
    return config.get(env, config['default'])
