import copy
import logging
import os
import sys

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_NAME = "config_grossca.yaml"
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'


def default_config_path():
    """ Location of the packaged defaults file """
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "config", DEFAULT_CONFIG_NAME)


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(yaml_file=None):
    """
    Load settings from YAML.

    The packaged defaults are always read first; when yaml_file is given its
    values are deep-merged over them.

    Args:
        yaml_file (str, optional): Path to a user settings file

    Returns:
        dict: The merged settings
    """
    with open(default_config_path(), 'r', encoding='utf-8') as file:
        config = yaml.safe_load(file) or {}
    if yaml_file:
        if not os.path.exists(yaml_file):
            raise FileNotFoundError(f"Configuration file '{yaml_file}' not found")
        with open(yaml_file, 'r', encoding='utf-8') as file:
            config = _merge(config, yaml.safe_load(file) or {})
        logger.info(f"Loaded settings from {yaml_file}")
    return config


def configure_logging(config, level=None):
    """ Configure the root logger once, from the `logging` section """
    section = config.get('logging', {})
    level_name = (level or section.get('level') or 'WARNING').upper()
    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = section.get('log_file')
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
        handlers=handlers,
        force=True,
    )


def ensure_output_dir(tool_type):
    """
    Create and ensure the output directory structure exists for the specified tool type.
    Uses ~/.grossca/output by default (or GROSSCA_OUTPUT_BASE if set).
    """
    base_output_dir = os.environ.get("GROSSCA_OUTPUT_BASE")
    if not base_output_dir:
        base_output_dir = os.path.join(os.path.expanduser("~"), ".grossca", "output")
    tool_output_dir = os.path.join(base_output_dir, tool_type)
    os.makedirs(tool_output_dir, exist_ok=True)
    return tool_output_dir


def generate_versioned_filename(base_filename):
    """ Generate a versioned filename if a file already exists """
    if not os.path.exists(base_filename):
        return base_filename

    version = 1
    file_root, file_ext = os.path.splitext(base_filename)
    while os.path.exists(f"{file_root}_v{version}{file_ext}"):
        version += 1
    return f"{file_root}_v{version}{file_ext}"


def report_path(config, tool_type, suffix):
    """ Resolve the report file for a tool, honouring output.directory and output.versioning """
    output = config.get('output', {})
    output_dir = output.get('directory') or ensure_output_dir(tool_type)
    os.makedirs(output_dir, exist_ok=True)
    filename = os.path.join(output_dir, f"{output.get('name', 'grossca_report')}_{suffix}.xlsx")
    if output.get('versioning', True):
        filename = generate_versioned_filename(filename)
    return filename
