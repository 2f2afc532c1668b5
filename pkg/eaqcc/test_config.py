import logging
import os

from config import DEFAULTS, Config, setup_logging


def test_defaults_without_a_config_file():
    config = Config(filename='eaqcc-test-absent.json')
    assert not config.configuration_exists
    assert config['l_max'] == DEFAULTS['l_max']
    assert config.get('missing', 'fallback') == 'fallback'


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('EAQCC_TRIALS', '7')
    monkeypatch.setenv('EAQCC_SEED', '42')
    config = Config(filename='eaqcc-test-absent.json')
    assert config['trials'] == 7
    assert config['seed'] == 42


def test_save_and_clear_config():
    config = Config(filename='eaqcc-test-saved.json')
    try:
        config.save_new_config({'frames': 64, 'format': 'json'})
        reloaded = Config(filename='eaqcc-test-saved.json')
        assert reloaded.configuration_exists
        assert reloaded['frames'] == 64
        assert reloaded['format'] == 'json'
        assert reloaded['trials'] == DEFAULTS['trials']
    finally:
        config.clear_config()
    assert not os.path.exists(config.config_file)
    assert config['frames'] == DEFAULTS['frames']


def test_setup_logging_returns_the_cli_logger():
    logger = setup_logging('debug')
    assert logger.name == 'eaqcc-cli'
    assert isinstance(logger, logging.Logger)
