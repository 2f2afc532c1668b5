import os
import json
import logging

from dotenv import load_dotenv

EAQCC_L_MAX = 'EAQCC_L_MAX'
EAQCC_TRUNCATE_DEPTH = 'EAQCC_TRUNCATE_DEPTH'
EAQCC_SEED = 'EAQCC_SEED'
EAQCC_TRIALS = 'EAQCC_TRIALS'
EAQCC_FRAMES = 'EAQCC_FRAMES'
EAQCC_LOG_FILE = 'EAQCC_LOG_FILE'
EAQCC_LOG_LEVEL = 'EAQCC_LOG_LEVEL'

DEFAULT_L_MAX = 12
DEFAULT_TRUNCATE_DEPTH = 32

DEFAULTS = {
    'l_max': DEFAULT_L_MAX,
    'truncate_depth': DEFAULT_TRUNCATE_DEPTH,
    'seed': 0,
    'trials': 100,
    'frames': 16,
    'window': 0,
    'stride': 0,
    'format': 'text',
}

ENV_OVERRIDES = {
    'l_max': EAQCC_L_MAX,
    'truncate_depth': EAQCC_TRUNCATE_DEPTH,
    'seed': EAQCC_SEED,
    'trials': EAQCC_TRIALS,
    'frames': EAQCC_FRAMES,
}

LOGGING_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class Config:
    """Built-in defaults, overridden by eaqcc.json at the repo root, then by environment variables."""

    def __init__(self, filename='eaqcc.json'):
        load_dotenv(override=True)
        self.base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        self.config_file = os.path.join(self.base_dir, filename)
        self.configuration_exists = os.path.exists(self.config_file)
        self.config = dict(DEFAULTS)
        if self.configuration_exists:
            with open(self.config_file, "r") as f:
                self.config.update(json.load(f))
        for key, env_name in ENV_OVERRIDES.items():
            value = os.getenv(env_name)
            if value is not None:
                self.config[key] = int(value)

    def __getitem__(self, key):
        return self.config[key]

    def get(self, key, default=None):
        return self.config.get(key, default)

    def clear_config(self):
        if os.path.exists(self.config_file):
            os.remove(self.config_file)
        self.config = dict(DEFAULTS)

    def save_new_config(self, new_config):
        merged = dict(DEFAULTS)
        merged.update(new_config)
        with open(self.config_file, "w") as f:
            json.dump(merged, f, indent=2)
        self.config = merged


def setup_logging(level=None, log_file=None):
    """Configure the root logger once; EAQCC_LOG_FILE routes output to a file instead of stderr."""
    load_dotenv(override=True)
    level_name = (level or os.getenv(EAQCC_LOG_LEVEL, 'WARNING')).upper()
    log_file = log_file or os.getenv(EAQCC_LOG_FILE)
    options = {'level': getattr(logging, level_name, logging.WARNING), 'format': LOGGING_FORMAT}
    if log_file:
        options['filename'] = log_file
    logging.basicConfig(**options)
    return logging.getLogger('eaqcc-cli')
