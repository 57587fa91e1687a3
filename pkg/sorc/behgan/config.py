"""
Module
------

    config.py

Description
-----------

    This module contains the configuration interface: YAML-formatted
    file reading (with support for the `!ENV` tag), schema building
    and validation of configuration records, and the location of the
    package parameter (`parm/`) directory.

Functions
---------

    build_schema(schema_def_dict)

        This function builds a schema.Schema object from a Python
        dictionary of schema attribute definitions.

    parm_path(*parts)

        This function returns the path beneath the parameter directory.

    read_yaml(yaml_file)

        This function reads a YAML-formatted file and returns its
        contents.

    repo_root()

        This function returns the path to the repository root.

    validate_config(func)

        This function is a wrapper function for the validation of
        configuration records against a schema file.

    validate_schema(cls_schema, cls_opts)

        This function validates a Python dictionary against a
        schema.Schema object.

Requirements
------------

- PyYAML; https://github.com/yaml/pyyaml

- schema; https://github.com/keleshev/schema

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import functools
import os
import re
from pathlib import Path
from typing import Callable, Dict, Tuple

import yaml
from schema import And, Optional, Or, Schema, SchemaError, Use

from behgan.exceptions import ConfigError
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = [
    "build_schema",
    "parm_path",
    "read_yaml",
    "repo_root",
    "validate_config",
    "validate_schema",
]

# ----

logger = Logger(caller_name=__name__)

ENV_PATTERN = re.compile(r"\$\{([^}^{]+)\}")

# Supported schema attribute types.
SCHEMA_TYPES = {
    "bool": bool,
    "float": And(Or(int, float), Use(float)),
    "int": int,
    "list": list,
    "str": str,
}

# ----


class _EnvLoader(yaml.SafeLoader):
    """Safe YAML loader that resolves `!ENV ${VAR}` scalars."""


def _env_constructor(loader: yaml.SafeLoader, node: yaml.Node) -> str:
    value = loader.construct_scalar(node)
    for envvar in ENV_PATTERN.findall(value):
        envval = os.environ.get(envvar)
        if envval is None:
            msg = (
                f"The environment variable `{envvar}` referenced by {value} "
                "has not been specified. Aborting!!!"
            )
            raise ConfigError(msg=msg)
        value = value.replace(f"${{{envvar}}}", envval)

    return value


_EnvLoader.add_implicit_resolver("!ENV", ENV_PATTERN, None)
_EnvLoader.add_constructor("!ENV", _env_constructor)

# ----


def repo_root() -> Path:
    """
    Description
    -----------

    This function returns the path to the repository root; the
    environment variable `BEHGAN_ROOT` is used if it has been
    specified, otherwise the root is derived from the package
    location and `BEHGAN_ROOT` is defined accordingly.

    Returns
    -------

    root: ``Path``

        A Python Path object specifying the repository root.

    """

    # Collect the repository root; proceed accordingly.
    root = os.environ.get("BEHGAN_ROOT")
    if root is None:
        root = str(Path(__file__).resolve().parents[2])
        msg = (
            "The environment variable `BEHGAN_ROOT` has not been specified; "
            f"using {root}."
        )
        logger.warn(msg=msg)
        os.environ["BEHGAN_ROOT"] = root

    return Path(root)


# ----


def parm_path(*parts: str) -> Path:
    """
    Description
    -----------

    This function returns the path beneath the parameter directory.

    Other Parameters
    ----------------

    parts: ``Tuple``

        The path components relative to `parm/`.

    Returns
    -------

    path: ``Path``

        A Python Path object specifying the parameter file.

    """

    return repo_root().joinpath("parm", *parts)


# ----


def read_yaml(yaml_file: str) -> Dict:
    """
    Description
    -----------

    This function reads a YAML-formatted file and returns its
    contents; `!ENV ${VAR}` scalars are resolved against the run-time
    environment.

    Parameters
    ----------

    yaml_file: ``str``

        A Python string specifying the path to the YAML-formatted
        file.

    Returns
    -------

    yaml_dict: ``Dict``

        A Python dictionary containing the YAML-formatted file
        contents.

    Raises
    ------

    ConfigError:

        - raised if the file does not exist or cannot be parsed.

    """

    # Make sure `${BEHGAN_ROOT}` references can be resolved.
    repo_root()
    if not os.path.isfile(yaml_file):
        msg = f"The YAML-formatted file {yaml_file} does not exist. Aborting!!!"
        raise ConfigError(msg=msg)
    try:
        with open(yaml_file, "r", encoding="utf-8") as file:
            yaml_dict = yaml.load(file, Loader=_EnvLoader)
    except yaml.YAMLError as errmsg:
        msg = f"Parsing YAML-formatted file {yaml_file} failed with error {errmsg}. Aborting!!!"
        raise ConfigError(msg=msg) from errmsg

    return yaml_dict if yaml_dict is not None else {}


# ----


def build_schema(schema_def_dict: Dict) -> Schema:
    """
    Description
    -----------

    This function builds a schema.Schema object from a Python
    dictionary of schema attribute definitions; each attribute
    supports the `type`, `required`, `default`, `min`, `length` and
    `choices` keys.

    Parameters
    ----------

    schema_def_dict: ``Dict``

        A Python dictionary containing the schema attribute
        definitions.

    Returns
    -------

    cls_schema: ``Schema``

        A Python schema.Schema object.

    """

    # Build the schema attributes.
    schema_dict = {}
    for key, attrs in schema_def_dict.items():
        try:
            validator = SCHEMA_TYPES[attrs["type"]]
        except KeyError as errmsg:
            msg = f"Schema attribute {key} has an unsupported type. Aborting!!!"
            raise ConfigError(msg=msg) from errmsg
        if "min" in attrs:
            validator = And(validator, lambda value, lo=attrs["min"]: value >= lo)
        if "length" in attrs:
            validator = And(validator, lambda value, n=attrs["length"]: len(value) == n)
        if "choices" in attrs:
            validator = And(validator, lambda value, opts=tuple(attrs["choices"]): value in opts)
        if attrs.get("required", False):
            schema_dict[key] = validator
        else:
            schema_dict[Optional(key, default=attrs.get("default"))] = validator

    return Schema(schema_dict)


# ----


def validate_schema(cls_schema: Schema, cls_opts: Dict) -> Dict:
    """
    Description
    -----------

    This function validates a Python dictionary against a
    schema.Schema object and returns the validated dictionary, with
    defaults applied.

    Parameters
    ----------

    cls_schema: ``Schema``

        A Python schema.Schema object.

    cls_opts: ``Dict``

        A Python dictionary to be validated.

    Returns
    -------

    cls_dict: ``Dict``

        A Python dictionary containing the validated attributes.

    Raises
    ------

    ConfigError:

        - raised if the schema validation fails.

    """

    try:
        cls_dict = cls_schema.validate(dict(cls_opts))
    except SchemaError as errmsg:
        msg = f"Schema validation failed with error {errmsg}. Aborting!!!"
        raise ConfigError(msg=msg) from errmsg

    return cls_dict


# ----


def validate_config(func: Callable) -> Callable:
    """
    Description
    -----------

    This function is a wrapper function for the validation of
    configuration records; the wrapped function returns the schema
    file path and the record to be validated.

    Parameters
    ----------

    func: ``Callable``

        A Python Callable object containing the function to be
        wrapped.

    Returns
    -------

    wrapped_function: ``Callable``

        A Python Callable object containing the wrapped function.

    """

    @functools.wraps(func)
    def wrapped_function(*args: Tuple, **kwargs: Dict) -> Dict:
        """
        Description
        -----------

        This function validates the configuration record returned by
        the wrapped function against the specified schema file.

        Returns
        -------

        cfg_dict: ``Dict``

            A Python dictionary containing the validated
            configuration record.

        """

        # Validate the configuration record via the specified schema.
        (schema_path, cfg_dict) = func(*args, **kwargs)
        cls_schema = build_schema(schema_def_dict=read_yaml(yaml_file=str(schema_path)))
        cfg_dict = validate_schema(cls_schema=cls_schema, cls_opts=cfg_dict or {})

        return cfg_dict

    return wrapped_function
