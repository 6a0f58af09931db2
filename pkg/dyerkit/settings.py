""" Control global settings for dyerkit """

from __future__ import annotations

from pathlib import Path
from typing import Any, Callable

import yaml

from dyerkit.logger import logger


class SettingsError(Exception):
    """ """


def _positive_int(value: Any) -> bool:
    """ """
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _probability(value: Any) -> bool:
    """ """
    return isinstance(value, (int, float)) and not isinstance(value, bool) and 0 <= value <= 1


def _pool(value: Any) -> bool:
    """pools are non-empty lists of integers >= 2 or the string 'inf'"""
    if not isinstance(value, list) or not value:
        return False
    return all(v == "inf" or (_positive_int(v) and v >= 2) for v in value)


def _label_pool(value: Any) -> bool:
    """edge labels are finite"""
    return _pool(value) and "inf" not in value


def _path_or_none(value: Any) -> bool:
    """ """
    return value is None or isinstance(value, str)


# key: setting name, value: (default, bound predicate)
SETTINGS: dict[str, tuple[Any, Callable[[Any], bool]]] = {
    "max_cosets": (1_000_000, _positive_int),
    "max_index": (5000, _positive_int),
    "f_pool": ([2, 3, "inf"], _pool),
    "m_pool": ([2, 3, 4, 5, 6], _label_pool),
    "edge_prob": (0.5, _probability),
    "logspath": (None, _path_or_none),
}

SETTINGSPATH = Path(__file__).resolve().parent / "settings.yml"
DEFAULT_SETTINGS = {name: default for name, (default, _) in SETTINGS.items()}


class Settings:
    """
    Context manager for settings
    How to use:

    with Settings() as settings:
        print(settings)  # to get all dyerkit settings that a user can specify
        settings.max_cosets = 100000  # set 'max_cosets' to 100000
        ...

    Settings are saved to settings.yml when the context exits. Used outside a context,
    Settings() is a read-only snapshot.
    """

    def __init__(self, path: Path = SETTINGSPATH) -> None:
        """ """
        self._path = Path(path)
        loaded = self._load()
        for name, default in DEFAULT_SETTINGS.items():
            setattr(self, name, loaded.get(name, default))

    def _load(self) -> dict[str, Any]:
        """ """
        try:
            with open(self._path, "r") as config:
                loaded = yaml.safe_load(config)
        except OSError:
            logger.debug(f"No settings found at '{self._path}', using defaults.")
            return {}
        except yaml.YAMLError as error:
            logger.warning(f"Ignoring malformed settings at '{self._path}': {error}")
            return {}
        if not isinstance(loaded, dict):
            return {}
        unknown = loaded.keys() - SETTINGS.keys()
        if unknown:
            logger.warning(f"Ignoring unknown settings {sorted(unknown)}.")
        return {k: v for k, v in loaded.items() if k in SETTINGS}

    def __setattr__(self, name: str, value: Any) -> None:
        """ """
        if name in SETTINGS:
            _, bound = SETTINGS[name]
            if not bound(value):
                message = f"Setting '{name}' {value = } is out of bounds."
                logger.error(message)
                raise SettingsError(message)
        super().__setattr__(name, value)

    def __repr__(self) -> str:
        """ """
        return f"{self.__class__.__name__} = {self.settings}"

    def __enter__(self) -> Settings:
        """ """
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback) -> None:
        """ """
        self.save()

    @property
    def settings(self) -> dict[str, Any]:
        """ """
        return {name: getattr(self, name) for name in SETTINGS}

    def save(self) -> None:
        """ """
        settings = self.settings
        logger.debug(f"Saving dyerkit settings = {settings}...")

        try:
            with open(self._path, "w+") as config:
                yaml.safe_dump(settings, config)
        except OSError as error:
            message = f"Failed to save dyerkit settings to '{self._path}': {error}"
            logger.error(message)
            raise SettingsError(message) from None
