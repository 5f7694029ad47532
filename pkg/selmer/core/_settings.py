#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#
import json
import logging
import os
from pathlib import Path
from typing import Union, Optional, Dict, Any

from ._errors import ConfigurationError

ENCODING_UTF_8 = "utf-8"

SETTINGS_FILE_NAME = "selmer-settings.json"
ENV_CENSUS_CACHE = "SELMER_CENSUS_CACHE"

DEFAULT_CACHE_PATH = "census.jsonl"
DEFAULT_CENSUS_CEILING = 500
DEFAULT_PADIC_PRECISION = 8
DEFAULT_SEED = 1

KNOWN_KEYS = ("cache", "parallelism", "seed", "census-ceiling", "padic-precision")


class Settings:
    """
    Run settings resolved from a JSON settings file with named profiles. A profile named ``*`` supplies
    defaults that are applied before the requested profile. The census cache path can additionally be
    overridden through the ``SELMER_CENSUS_CACHE`` environment variable.
    """

    def __init__(
        self,
        profile: Optional[str] = None,
        settings: Union[str, Path, dict] = None,
        environ: Optional[Dict[str, str]] = None,
    ):
        self.__logger = logging.getLogger(self.__class__.__module__ + "." + self.__class__.__name__)
        self.cache_path = DEFAULT_CACHE_PATH
        self.parallelism = 0
        self.seed = DEFAULT_SEED
        self.census_ceiling = DEFAULT_CENSUS_CEILING
        self.padic_precision = DEFAULT_PADIC_PRECISION

        if isinstance(settings, dict):
            self._settings = settings
        else:
            self._settings = self._load_settings(settings)

        if self._exists_profile("*"):
            self._apply_profile("*")
        if profile:
            self._apply_profile(profile)

        environ = os.environ if environ is None else environ
        if environ.get(ENV_CENSUS_CACHE):
            self.cache_path = environ[ENV_CENSUS_CACHE]

    def _exists_profile(self, profile: str) -> bool:
        return bool(
            self._settings
            and "profiles" in self._settings
            and profile in self._settings["profiles"]
        )

    def _apply_profile(self, profile: str) -> None:
        if not self._exists_profile(profile):
            raise ConfigurationError(f"No profile named {profile} found in settings")

        run_profile: Dict[str, Any] = self._settings["profiles"][profile]
        unknown = sorted(set(run_profile) - set(KNOWN_KEYS))
        if unknown:
            raise ConfigurationError(f"Unknown settings in profile {profile}: {', '.join(unknown)}")

        if "cache" in run_profile:
            self.cache_path = str(run_profile["cache"])
        if "parallelism" in run_profile:
            self.parallelism = self._as_int(run_profile, "parallelism")
        if "seed" in run_profile:
            self.seed = self._as_int(run_profile, "seed")
        if "census-ceiling" in run_profile:
            self.census_ceiling = self._as_int(run_profile, "census-ceiling")
        if "padic-precision" in run_profile:
            self.padic_precision = self._as_int(run_profile, "padic-precision")
            if self.padic_precision < 2:
                raise ConfigurationError("padic-precision must be at least 2")

    @staticmethod
    def _as_int(run_profile: Dict[str, Any], key: str) -> int:
        value = run_profile[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigurationError(f"Setting {key} must be an integer, got {value!r}")
        return value

    def _load_settings(self, path: Union[str, Path] = None) -> dict:
        if path:
            path = path if isinstance(path, Path) else Path(path)
            self.__logger.info(f"Loading settings from {path}")
            with path.open(encoding=ENCODING_UTF_8) as source:
                return json.load(source)

        cwd_settings_path = Path.cwd().joinpath(SETTINGS_FILE_NAME)
        if cwd_settings_path.exists():
            self.__logger.info(f"Loading settings from {cwd_settings_path}")
            with cwd_settings_path.open(encoding=ENCODING_UTF_8) as source:
                return json.load(source)

        per_user_settings_path = Path.home().joinpath(".selmer", SETTINGS_FILE_NAME)
        if per_user_settings_path.exists():
            self.__logger.info(f"Loading settings from {per_user_settings_path}")
            with per_user_settings_path.open(encoding=ENCODING_UTF_8) as source:
                return json.load(source)

        return {}

    def as_dict(self) -> Dict[str, Any]:
        return {
            "cache": self.cache_path,
            "parallelism": self.parallelism,
            "seed": self.seed,
            "census-ceiling": self.census_ceiling,
            "padic-precision": self.padic_precision,
        }


def resolve_worker_count(parallelism: int = 0) -> int:
    """
    Translates a parallelism setting into a worker count: 0 means one worker per available core, a negative
    value leaves that many cores unused and a positive value is taken literally.
    """
    cores = os.cpu_count() or 1
    if parallelism < 0:
        return max(cores + parallelism, 1)
    elif parallelism > 0:
        return parallelism
    else:
        return cores
